#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace odo {

/// One unit of work for the command line or the Python module.
struct JobConfig {
    std::string operation;  // gd, centralizer, level, level-ideal, classify, relations
    std::string field = "rational";
    std::string g2 = "g2";
    std::string g3 = "g3";
    std::string expression;  // operator or ansatz
    int n = 0;
    int m = 0;
    std::optional<int> level;
    std::optional<int> bound;
    std::vector<std::string> point;
    std::string route = "auto";
    bool groebner = false;
    std::string cache_dir;
    std::string output;
};

/// Reads a JSON object; unknown keys are rejected.  Keys not present keep
/// the values already in `base`.
JobConfig merge_config(const JobConfig& base, std::string_view json_text);

enum ExitCode : int { kExitOk = 0, kExitOther = 1, kExitParse = 2, kExitContract = 3, kExitResource = 4 };

struct JobOutcome {
    int exit_code = kExitOk;
    std::string report;  // JSON with "canonical" and "info" sections
};

/// Never throws for failures inside the job; they become an error report.
JobOutcome run_job(const JobConfig& config);

/// The "canonical" section of a report.
std::string canonical_section(const std::string& report);

}  // namespace odo
