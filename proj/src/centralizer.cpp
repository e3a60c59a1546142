#include "odo/centralizer.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "odo/errors.hpp"

namespace odo {

FieldOperator ConcreteOperator::series() const {
    const int order = n();
    FieldOperator l = FieldOperator::monomial(FieldElem::constant(field, 1), order);
    for (int j = 2; j <= order; ++j) l.set(order - j, upsilon[static_cast<std::size_t>(j - 2)]);
    return l;
}

ConcreteOperator ConcreteOperator::from_series(const FieldPtr& field, const FieldOperator& l) {
    int n = check_normal_form(l);
    ConcreteOperator c;
    c.field = field;
    for (int j = 2; j <= n; ++j) {
        FieldElem x = l.coeff(n - j);
        c.upsilon.push_back(x.field() ? x : FieldElem(field, RatFunc()));
    }
    return c;
}

std::vector<int> optimized_index_set(int n, int m, const std::vector<int>& found_orders) {
    std::vector<int> j;
    for (int i = 1; i < m; ++i) {
        if (i % n == 0) continue;
        bool covered = false;
        for (int mk : found_orders)
            if (i >= mk && (i - mk) % n == 0) covered = true;
        if (!covered) j.push_back(i);
    }
    j.push_back(m);
    return j;
}

std::string to_string(GDRoute r) {
    switch (r) {
        case GDRoute::automatic:
            return "auto";
        case GDRoute::hierarchy:
            return "hierarchy";
        case GDRoute::direct:
            return "direct";
    }
    return "auto";
}

GDRoute parse_gd_route(const std::string& s) {
    if (s == "auto") return GDRoute::automatic;
    if (s == "hierarchy") return GDRoute::hierarchy;
    if (s == "direct") return GDRoute::direct;
    throw ParseError("unknown GD route '" + s + "'", 0);
}

GDProvider::GDProvider(ConcreteOperator l, GDRoute route, HierarchyStore* store)
    : l_(std::move(l)),
      l_series_(l_.series()),
      route_(route),
      store_(store ? store : &default_store()),
      ctx_(l_.field, l_.upsilon) {
    check_normal_form(l_series_);
}

GDRoute GDProvider::route_for(int j) const {
    if (route_ != GDRoute::automatic) return route_;
    return j + l_.n() <= kHierarchyWeightLimit ? GDRoute::hierarchy : GDRoute::direct;
}

void GDProvider::reserve(int max_j) { reserved_ = std::max(reserved_, max_j); }

void GDProvider::run_direct(int max_j) {
    const int n = l_.n();
    FieldOperator q = nth_root(l_series_, max_j);
    FieldOperator power = q;
    for (int j = 1; j <= max_j; ++j) {
        if (j > 1) power = op_mul(power, q);
        if (b_.count(j)) continue;
        FieldOperator b = positive_part(power);
        FieldOperator c = commutator(l_series_, b);
        if (c.order() > n - 2) throw ContractError("specialized almost-commuting operator has the wrong order");
        std::vector<FieldElem> s;
        for (int k = 0; k <= n - 2; ++k) s.push_back(c.coeff(k));
        b_.emplace(j, std::move(b));
        sigma_.emplace(j, std::move(s));
    }
}

void GDProvider::ensure(int j) {
    if (j < 1) throw ContractError("index must be positive");
    if (b_.count(j)) return;
    if (route_for(j) == GDRoute::hierarchy) {
        const HierarchyEntry& e = store_->get(l_.n(), j);
        FieldOperator b;
        for (const auto& [i, c] : e.p.terms()) b.set(i, ctx_.specialize(c));
        std::vector<FieldElem> s;
        for (const auto& h : e.h) s.push_back(ctx_.specialize(h));
        b_.emplace(j, std::move(b));
        sigma_.emplace(j, std::move(s));
    } else {
        run_direct(std::max(j, reserved_));
    }
}

const std::vector<FieldElem>& GDProvider::sigma(int j) {
    ensure(j);
    return sigma_.at(j);
}

const FieldOperator& GDProvider::basis_operator(int j) {
    ensure(j);
    return b_.at(j);
}

ConstSystem extend_system(const Matrix<FieldElem>& s, const std::vector<int>& columns) {
    ConstSystem out;
    out.columns = columns;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const auto& row = s[k];
        if (row.size() != columns.size()) throw ContractError("row length does not match the column labels");
        Denominator clear;
        std::vector<FieldElem> reduced;
        for (const auto& x : row) {
            FieldElem r = x;
            r.reduce();
            clear = den_lcm(clear, r.a().den());
            clear = den_lcm(clear, r.b().den());
            reduced.push_back(std::move(r));
        }
        std::map<std::pair<int, int>, std::vector<MPoly>> split;
        for (std::size_t j = 0; j < reduced.size(); ++j) {
            if (reduced[j].is_zero()) continue;
            for (auto& [key, c] : to_constant_combination(reduced[j], clear)) {
                auto& target = split[key];
                if (target.empty()) target.assign(columns.size(), MPoly());
                target[j] = std::move(c);
            }
        }
        for (auto& [key, values] : split) {
            out.rows.push_back(std::move(values));
            out.keys.push_back(RowKey{static_cast<int>(k), key.first, key.second});
        }
    }
    return out;
}

GDSystem build_system(GDProvider& provider, const std::vector<int>& columns) {
    if (columns.empty()) throw ContractError("empty index set");
    if (!std::is_sorted(columns.begin(), columns.end())) throw ContractError("index set must be ascending");
    GDSystem sys;
    sys.columns = columns;
    const int n = provider.op().n();
    sys.eta.assign(static_cast<std::size_t>(n - 1), std::vector<FieldElem>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const auto& s = provider.sigma(columns[c]);
        for (std::size_t k = 0; k < s.size(); ++k) sys.eta[k][c] = s[k];
    }
    sys.constant = extend_system(sys.eta, columns);
    return sys;
}

namespace {

Matrix<Constant> to_constants(const ConstSystem& s, std::size_t cols) {
    Matrix<Constant> a;
    for (const auto& row : s.rows) {
        std::vector<Constant> r;
        for (std::size_t j = 0; j < cols; ++j) r.emplace_back(row[j]);
        a.push_back(std::move(r));
    }
    return a;
}

}  // namespace

LinearSolution<Constant> solve_constants(const ConstSystem& s) {
    const std::size_t cols = s.columns.size() - 1;
    Matrix<Constant> a = to_constants(s, cols);
    std::vector<Constant> b;
    for (const auto& row : s.rows) b.emplace_back(-row.back());
    return solve(a, b, cols);
}

std::vector<std::vector<Constant>> homogeneous_kernel(const ConstSystem& s) {
    return kernel(to_constants(s, s.columns.size()), s.columns.size());
}

bool is_zero_operator(const FieldOperator& a) {
    for (const auto& [i, c] : a.terms()) {
        FieldElem r = c;
        if (!r.reduce().is_zero()) return false;
    }
    return true;
}

int default_bound(int n, int level) { return (n / std::gcd(n, level) - 1) * level; }

namespace {

StepTrace trace_of(int m, const GDSystem& sys, const LinearSolution<Constant>& sol, bool discovered) {
    return StepTrace{m, sys.columns, sys.constant.rows.size(), sol.consistent, sol.kernel.size(), discovered};
}

}  // namespace

FilteredBasisResult filtered_basis(GDProvider& provider, int level, std::optional<int> bound) {
    const int n = provider.op().n();
    if (level < 1 || level % n == 0) throw ContractError("level must be positive and not a multiple of n");
    FilteredBasisResult res;
    res.n = n;
    res.level = level;
    res.bound = bound ? std::max(*bound, level) : default_bound(n, level);
    if (std::gcd(n, level) == 1) res.bound = std::max(res.bound, default_bound(n, level));
    provider.reserve(res.bound);

    std::set<int> classes{0};
    std::vector<int> found;
    for (int m = level; m <= res.bound && static_cast<int>(classes.size()) < n; ++m) {
        if (classes.count(m % n)) continue;
        GDSystem sys = build_system(provider, optimized_index_set(n, m, found));
        LinearSolution<Constant> sol = solve_constants(sys.constant);
        if (!sol.consistent) {
            res.trace.push_back(trace_of(m, sys, sol, false));
            continue;
        }
        if (!sol.unique())
            throw ContractError("optimized system at m = " + std::to_string(m) + " has a " +
                                std::to_string(sol.kernel.size()) +
                                "-dimensional solution set; the level input is wrong");
        res.trace.push_back(trace_of(m, sys, sol, true));

        Generator g;
        g.order = m;
        g.op = provider.basis_operator(m);
        g.coordinates[m] = Constant(1);
        for (std::size_t c = 0; c + 1 < sys.columns.size(); ++c) {
            const Constant& xi = sol.particular[c];
            if (xi.is_zero()) continue;
            g.coordinates[sys.columns[c]] = xi;
            FieldOperator term = provider.basis_operator(sys.columns[c]);
            FieldElem scale(provider.op().field, xi);
            FieldOperator scaled;
            for (const auto& [i, x] : term.terms()) scaled.set(i, (x * scale).reduce());
            g.op += scaled;
        }
        if (!is_zero_operator(commutator(provider.l_series(), g.op)))
            throw ContractError("generator of order " + std::to_string(m) + " does not commute with L");
        for (const auto& other : res.generators)
            if (!is_zero_operator(commutator(other.op, g.op)))
                throw ContractError("generators of orders " + std::to_string(other.order) + " and " +
                                    std::to_string(m) + " do not commute");
        res.generators.push_back(std::move(g));
        found.push_back(m);
        classes.insert(m % n);
        if (std::gcd(n, m) == 1 && (n - 1) * m > res.bound) {
            res.bound = (n - 1) * m;
            provider.reserve(res.bound);
        }
    }
    res.classes.assign(classes.begin(), classes.end());
    res.complete = static_cast<int>(classes.size()) == n;
    // The classes form a subgroup of Z/n exactly when they are the multiples of n/|classes|.
    const int d = static_cast<int>(classes.size());
    bool subgroup = n % d == 0;
    for (int r : classes) subgroup = subgroup && r % (n / d) == 0;
    res.rank = subgroup ? n / d : 0;
    return res;
}

LevelScan compute_level(GDProvider& provider, int bound) {
    const int n = provider.op().n();
    if (bound < 1) throw ContractError("bound must be positive");
    provider.reserve(bound);
    LevelScan scan;
    for (int m = 1; m <= bound; ++m) {
        if (m % n == 0) continue;
        GDSystem sys = build_system(provider, full_index_set(n, m));
        LinearSolution<Constant> sol = solve_constants(sys.constant);
        scan.trace.push_back(trace_of(m, sys, sol, sol.consistent));
        if (sol.consistent) {
            scan.level = m;
            break;
        }
    }
    return scan;
}

std::optional<ModuleCoordinates> express_in_basis(const FieldOperator& q, const FilteredBasisResult& basis,
                                                  const FieldOperator& l) {
    const int n = basis.n;
    if (!is_zero_operator(commutator(l, q))) throw ContractError("operator does not commute with L");
    ModuleCoordinates coords;
    FieldOperator rest = q;
    const FieldElem one = FieldElem::constant(l.terms().rbegin()->second.field(), 1);
    while (!rest.is_zero()) {
        const int d = rest.order();
        FieldElem lead = rest.terms().rbegin()->second;
        lead.reduce();
        if (!lead.is_constant()) return std::nullopt;
        // Generator 0 is the identity (order 0).
        int index = -1, order = 0;
        if (d % n == 0) {
            index = 0;
        } else {
            for (std::size_t i = 0; i < basis.generators.size(); ++i) {
                int mi = basis.generators[i].order;
                if (mi <= d && (d - mi) % n == 0) {
                    index = static_cast<int>(i) + 1;
                    order = mi;
                    break;
                }
            }
        }
        if (index < 0) return std::nullopt;
        const int power = (d - order) / n;
        FieldOperator g = index == 0 ? FieldOperator::monomial(one, 0) : basis.generators[index - 1].op;
        FieldOperator term = op_mul(op_pow(l, static_cast<unsigned>(power), one), g);
        FieldOperator scaled;
        for (const auto& [i, x] : term.terms()) scaled.set(i, (x * lead).reduce());
        rest -= scaled;
        Constant& slot = coords[index][power];
        slot += lead.a();
        slot.reduce();
    }
    return coords;
}

std::string Relation::text() const {
    std::string out = "G" + std::to_string(target) + "* = ";
    std::map<int, int> counts;
    for (int f : factors) ++counts[f];
    bool first = true;
    for (const auto& [f, e] : counts) {
        if (!first) out += " * ";
        first = false;
        out += "G" + std::to_string(f) + "*";
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

std::vector<Relation> detect_relations(const FilteredBasisResult& basis) {
    std::vector<Relation> out;
    std::vector<int> independent;  // 1-based generator indices
    const auto& gens = basis.generators;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const int target = gens[k].order;
        bool related = false;
        // Multisets of earlier independent generators (size >= 2) with total order = target.
        std::vector<int> chosen;
        std::function<void(std::size_t, int)> search = [&](std::size_t start, int rest) {
            if (related) return;
            if (rest == 0) {
                if (chosen.size() < 2) return;
                FieldOperator prod = gens[static_cast<std::size_t>(chosen[0] - 1)].op;
                for (std::size_t i = 1; i < chosen.size(); ++i)
                    prod = op_mul(prod, gens[static_cast<std::size_t>(chosen[i] - 1)].op);
                if (is_zero_operator(prod - gens[k].op)) {
                    out.push_back(Relation{static_cast<int>(k) + 1, chosen});
                    related = true;
                }
                return;
            }
            for (std::size_t i = start; i < independent.size(); ++i) {
                int o = gens[static_cast<std::size_t>(independent[i] - 1)].order;
                if (o > rest) continue;
                chosen.push_back(independent[i]);
                search(i, rest - o);
                chosen.pop_back();
            }
        };
        search(0, target);
        if (!related) independent.push_back(static_cast<int>(k) + 1);
    }
    return out;
}

}  // namespace odo
