#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "odo/field.hpp"
#include "odo/hierarchy.hpp"
#include "odo/linalg.hpp"
#include "odo/operator.hpp"

namespace odo {

using FieldOperator = OperatorSeries<FieldElem>;
/// Constants of the field: rational functions in the parameters only.
using Constant = RatFunc;

/// L = D^n + upsilon_2 D^(n-2) + ... + upsilon_n over a differential field.
struct ConcreteOperator {
    FieldPtr field;
    std::vector<FieldElem> upsilon;  // upsilon[0] is the coefficient of D^(n-2)

    int n() const { return static_cast<int>(upsilon.size()) + 1; }
    FieldOperator series() const;
    /// Validates monic normal form.
    static ConcreteOperator from_series(const FieldPtr& field, const FieldOperator& l);
};

/// J*_{n,m}: {1..m-1} without multiples of n and without j >= M_k in the
/// class of a found order M_k, plus m itself.
std::vector<int> optimized_index_set(int n, int m, const std::vector<int>& found_orders);

/// How the specialized GD data for index j is obtained.
enum class GDRoute {
    automatic,  ///< hierarchy for small weights, direct otherwise
    hierarchy,  ///< specialize the cached formal P_j and H_j
    direct,     ///< root of the concrete operator over the field
};

std::string to_string(GDRoute r);
GDRoute parse_gd_route(const std::string& s);

/// Weight limit m + n up to which the automatic policy uses the hierarchy.
inline constexpr int kHierarchyWeightLimit = 19;

/// Specialized almost-commuting operators B_j and GD vectors sigma_j of a
/// concrete operator, memoized per j.
class GDProvider {
   public:
    GDProvider(ConcreteOperator l, GDRoute route = GDRoute::automatic, HierarchyStore* store = nullptr);

    const ConcreteOperator& op() const { return l_; }
    const FieldOperator& l_series() const { return l_series_; }
    /// Sizes the direct root for indices up to max_j.
    void reserve(int max_j);
    const std::vector<FieldElem>& sigma(int j);
    const FieldOperator& basis_operator(int j);
    GDRoute route_for(int j) const;

   private:
    void ensure(int j);
    void run_direct(int max_j);

    ConcreteOperator l_;
    FieldOperator l_series_;
    GDRoute route_;
    HierarchyStore* store_;
    SpecializationContext ctx_;
    int reserved_ = 0;
    std::map<int, FieldOperator> b_;
    std::map<int, std::vector<FieldElem>> sigma_;
};

struct RowKey {
    int equation;  // k in H_k
    int nu_degree;
    int eta_power;
    friend auto operator<=>(const RowKey&, const RowKey&) = default;
};

/// Constant-coefficient system obtained from an eta-system.  Entries are
/// polynomials in the parameters.
struct ConstSystem {
    std::vector<int> columns;
    Matrix<MPoly> rows;
    std::vector<RowKey> keys;
};

/// Clears each row by the lcm of its denominators and splits it by the
/// monomials eta^h nu^e; constant solutions are preserved.
ConstSystem extend_system(const Matrix<FieldElem>& s, const std::vector<int>& columns);

/// GD system over columns J: sigma_j for j in J, ascending.
struct GDSystem {
    std::vector<int> columns;
    Matrix<FieldElem> eta;  // rows k = 0..n-2
    ConstSystem constant;
};

GDSystem build_system(GDProvider& provider, const std::vector<int>& columns);

/// Solution of A c = b where A is all but the last column and b is the
/// negated last column.
LinearSolution<Constant> solve_constants(const ConstSystem& s);
/// Kernel of the full homogeneous matrix.
std::vector<std::vector<Constant>> homogeneous_kernel(const ConstSystem& s);

struct Generator {
    int order;
    FieldOperator op;
    std::map<int, Constant> coordinates;  // G = sum_j coordinates[j] B_j
};

struct StepTrace {
    int m;
    std::vector<int> columns;
    std::size_t rows;
    bool consistent;
    std::size_t kernel_dim;
    bool discovered;
};

struct FilteredBasisResult {
    int n = 0;
    int level = 0;
    int bound = 0;
    std::vector<Generator> generators;
    std::vector<int> classes;  // residues mod n of 0 and every generator order
    bool complete = false;     // every residue class found
    int rank = 0;              // n / |classes| when the classes form a subgroup, else 0
    std::vector<StepTrace> trace;
};

FilteredBasisResult filtered_basis(GDProvider& provider, int level, std::optional<int> bound = std::nullopt);

/// Default loop bound (n/(n,M) - 1) M.
int default_bound(int n, int level);

struct LevelScan {
    std::optional<int> level;
    std::vector<StepTrace> trace;
};

/// Smallest m (not a multiple of n, m <= bound) with a consistent GD system.
LevelScan compute_level(GDProvider& provider, int bound);

/// Coordinates of Q as sum over generators i (0 = identity) of p_i(L) G_i,
/// p_i given as {power of L -> constant}.  nullopt when the greedy reduction
/// meets an order with no matching generator or a non-constant leading
/// coefficient.
using ModuleCoordinates = std::map<int, std::map<int, Constant>>;
std::optional<ModuleCoordinates> express_in_basis(const FieldOperator& q, const FilteredBasisResult& basis,
                                                  const FieldOperator& l);

/// G_target = product of generators (1-based indices, with repetition).
struct Relation {
    int target;
    std::vector<int> factors;
    std::string text() const;
};

std::vector<Relation> detect_relations(const FilteredBasisResult& basis);

/// Exact zero test for an operator with reduced coefficients.
bool is_zero_operator(const FieldOperator& a);

}  // namespace odo
