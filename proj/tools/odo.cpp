#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "odo/errors.hpp"
#include "odo/hierarchy.hpp"
#include "odo/job.hpp"

namespace {

std::vector<std::string> split_point(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(item);
    return out;
}

struct Flags {
    std::optional<std::string> field, g2, g3, expression, route, cache_dir, output, point;
    std::optional<int> n, m, level, bound;
    bool groebner = false;
};

void add_common(CLI::App* cmd, Flags& f, std::string& config_path) {
    cmd->add_option("--config", config_path, "JSON job file; flags override its values");
    cmd->add_option("--route", f.route, "GD data route: auto, hierarchy or direct");
    cmd->add_option("--cache-dir", f.cache_dir, "hierarchy cache directory (default $ODO_CACHE_DIR)");
    cmd->add_option("-o,--output", f.output, "write the report here instead of stdout");
}

void add_field(CLI::App* cmd, Flags& f) {
    cmd->add_option("--field", f.field, "rational, exponential, hyperbolic, weierstrass or elliptic");
    cmd->add_option("--g2", f.g2, "g2 for the elliptic fields (number or parameter name)");
    cmd->add_option("--g3", f.g3, "g3 for the elliptic fields (number or parameter name)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Centralizers of ordinary differential operators"};
    app.require_subcommand(1);
    Flags f;
    std::string config_path;

    auto* gd = app.add_subcommand("gd", "almost-commuting operator P_m and GD vector for the formal L_n");
    gd->add_option("--n", f.n, "operator order");
    gd->add_option("--m", f.m, "weight");
    add_common(gd, f, config_path);

    auto* cen = app.add_subcommand("centralizer", "filtered basis of the centralizer");
    add_field(cen, f);
    cen->add_option("--op", f.expression, "operator, e.g. \"D^3 + 6/eta^2*D\"");
    cen->add_option("--level", f.level, "known level M (scanned up to --bound when omitted)");
    cen->add_option("--bound", f.bound, "loop bound");
    add_common(cen, f, config_path);

    auto* rel = app.add_subcommand("relations", "filtered basis plus product relations between generators");
    add_field(rel, f);
    rel->add_option("--op", f.expression, "operator");
    rel->add_option("--level", f.level, "known level M");
    rel->add_option("--bound", f.bound, "loop bound");
    add_common(rel, f, config_path);

    auto* lvl = app.add_subcommand("level", "smallest m with a constant solution of the GD system");
    add_field(lvl, f);
    lvl->add_option("--op", f.expression, "operator");
    lvl->add_option("--bound", f.bound, "largest m tried");
    add_common(lvl, f, config_path);

    auto* ideal = app.add_subcommand("level-ideal", "maximal minors of the parametric system");
    add_field(ideal, f);
    ideal->add_option("--ansatz", f.expression, "template whose free identifiers are the parameters");
    ideal->add_option("--m", f.m, "level M");
    ideal->add_option("--point", f.point, "comma separated point to test for membership");
    ideal->add_flag("--groebner", f.groebner, "also compute the reduced degrevlex basis");
    add_common(ideal, f, config_path);

    auto* cls = app.add_subcommand("classify", "level of a parameter point relative to M");
    add_field(cls, f);
    cls->add_option("--ansatz", f.expression, "template");
    cls->add_option("--m", f.m, "level M");
    cls->add_option("--point", f.point, "comma separated point");
    add_common(cls, f, config_path);

    auto* cache = app.add_subcommand("cache", "inspect or clear the hierarchy cache");
    std::string cache_dir;
    bool clear = false;
    cache->add_option("--dir", cache_dir, "cache directory (default $ODO_CACHE_DIR)");
    cache->add_flag("--clear", clear, "remove cached entries");

    CLI11_PARSE(app, argc, argv);

    if (cache->parsed()) {
        odo::HierarchyStore store(cache_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(cache_dir));
        if (!store.directory()) {
            std::cerr << "no cache directory given and ODO_CACHE_DIR is unset\n";
            return odo::kExitContract;
        }
        std::size_t entries = 0;
        if (std::filesystem::exists(*store.directory()))
            for (const auto& e : std::filesystem::directory_iterator(*store.directory()))
                entries += e.path().extension() == ".txt";
        if (clear) {
            std::size_t removed = store.clear_disk();
            std::cout << "removed " << removed << " entries from " << store.directory()->string() << "\n";
        } else {
            std::cout << entries << " entries in " << store.directory()->string() << "\n";
        }
        return odo::kExitOk;
    }

    odo::JobConfig config;
    CLI::App* sub = app.get_subcommands().front();
    config.operation = sub->get_name();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot read " << config_path << "\n";
            return odo::kExitOther;
        }
        std::stringstream text;
        text << in.rdbuf();
        try {
            config = odo::merge_config(config, text.str());
        } catch (const odo::ParseError& e) {
            std::cerr << e.what() << "\n";
            return odo::kExitParse;
        }
        config.operation = sub->get_name();
    }
    if (f.field) config.field = *f.field;
    if (f.g2) config.g2 = *f.g2;
    if (f.g3) config.g3 = *f.g3;
    if (f.expression) config.expression = *f.expression;
    if (f.route) config.route = *f.route;
    if (f.cache_dir) config.cache_dir = *f.cache_dir;
    if (f.output) config.output = *f.output;
    if (f.point) config.point = split_point(*f.point);
    if (f.n) config.n = *f.n;
    if (f.m) config.m = *f.m;
    if (f.level) config.level = f.level;
    if (f.bound) config.bound = f.bound;
    if (f.groebner) config.groebner = true;

    odo::JobOutcome outcome = odo::run_job(config);
    if (config.output.empty()) {
        std::cout << outcome.report;
    } else {
        std::ofstream out(config.output);
        out << outcome.report;
        if (!out) {
            std::cerr << "cannot write " << config.output << "\n";
            return odo::kExitOther;
        }
    }
    return outcome.exit_code;
}
