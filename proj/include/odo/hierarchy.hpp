#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "odo/diffpoly.hpp"
#include "odo/operator.hpp"

namespace odo {

using DiffOperator = OperatorSeries<DiffPoly>;

/// L_n = D^n + u_2 D^(n-2) + ... + u_n.
DiffOperator formal_operator(int n);

/// Homogeneous almost-commuting operator P_m = (L_n^(m/n))_+ and the GD
/// vector: h[k] is the coefficient of D^k in [L_n, P_m], k = 0..n-2.
struct HierarchyEntry {
    int n = 0;
    int m = 0;
    DiffOperator p;
    std::vector<DiffPoly> h;

    friend bool operator==(const HierarchyEntry& a, const HierarchyEntry& b) {
        return a.n == b.n && a.m == b.m && a.p == b.p && a.h == b.h;
    }
};

/// Root construction for a single m.
HierarchyEntry almost_commuting(int n, int m);
/// Root construction for m = 1..max_m sharing one root and the power chain.
std::vector<HierarchyEntry> almost_commuting_range(int n, int max_m);
/// Independent construction by undetermined coefficients over the weight-i
/// differential monomials.  Throws ContractError if a block is singular or
/// inconsistent.
HierarchyEntry ansatz_oracle(int n, int m);

/// All differential monomials in u_2..u_n of total weight w.
std::vector<DiffMonomial> weight_monomials(int n, int w);

/// J_{n,m} = {1..m} without multiples of n.
std::vector<int> full_index_set(int n, int m);

/// Cache file text; parse_entry(serialize(e)) == e.
std::string serialize(const HierarchyEntry& e);
HierarchyEntry parse_entry(std::string_view text);

/// Memoized hierarchy with an optional on-disk cache shared between
/// processes.  Entries are immutable once published; references stay valid
/// for the lifetime of the store.
class HierarchyStore {
   public:
    /// Uses the directory from $ODO_CACHE_DIR when `dir` is empty and the
    /// variable is set; memory only otherwise.
    explicit HierarchyStore(std::optional<std::filesystem::path> dir = std::nullopt);

    const HierarchyEntry& get(int n, int m);
    /// {m' -> H_vec} for m' in J_{n,m} (m itself included).  Throws for m = 0 mod n.
    std::map<int, const HierarchyEntry*> gd_symbolic_system(int n, int m);

    const std::optional<std::filesystem::path>& directory() const { return dir_; }
    std::filesystem::path file_for(int n, int m) const;
    std::size_t disk_hits() const { return disk_hits_; }
    std::size_t computed() const { return computed_; }
    /// Removes cache files of this store's directory; returns the count.
    std::size_t clear_disk();

   private:
    void publish(HierarchyEntry e, bool write);

    std::optional<std::filesystem::path> dir_;
    std::mutex mutex_;
    std::map<std::pair<int, int>, std::unique_ptr<const HierarchyEntry>> entries_;
    std::size_t disk_hits_ = 0;
    std::size_t computed_ = 0;
};

/// Process-wide store configured from the environment.
HierarchyStore& default_store();

}  // namespace odo
