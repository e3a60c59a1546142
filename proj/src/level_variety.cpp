#include "odo/level_variety.hpp"

#include <algorithm>
#include <set>

#include "odo/errors.hpp"

namespace odo {

namespace {

std::vector<std::optional<Rational>> theta_values(const Ansatz& a, const std::vector<Rational>& point) {
    if (point.size() != a.theta.size())
        throw ContractError("point has " + std::to_string(point.size()) + " coordinates, expected " +
                            std::to_string(a.theta.size()));
    std::vector<std::optional<Rational>> values(a.op.field->params().size());
    for (std::size_t i = 0; i < point.size(); ++i) values[static_cast<std::size_t>(a.first_slot()) + i] = point[i];
    return values;
}

unsigned theta_mask(const Ansatz& a) {
    unsigned mask = 0;
    for (std::size_t i = 0; i < a.theta.size(); ++i) mask |= 1u << (static_cast<std::size_t>(a.first_slot()) + i);
    return mask;
}

}  // namespace

ConcreteOperator Ansatz::specialize(const std::vector<Rational>& point) const {
    auto values = theta_values(*this, point);
    FieldPtr target = substitute_field(op.field, values);
    ConcreteOperator out;
    out.field = target;
    for (const auto& u : op.upsilon) out.upsilon.push_back(u.substitute(target, values).reduce());
    return out;
}

Ansatz parse_ansatz(std::string_view text, const FieldPtr& field) {
    ParsedOperator p = parse_operator(text, field);
    return Ansatz{ConcreteOperator::from_series(p.field, p.op), p.new_params};
}

ConstSystem parametric_system(const Ansatz& a, int m, GDRoute route) {
    const int n = a.op.n();
    if (m < 1 || m % n == 0) throw ContractError("M must be positive and not a multiple of n");
    GDProvider provider(a.op, route);
    provider.reserve(m);
    GDSystem sys = build_system(provider, full_index_set(n, m));
    const unsigned params = (1u << a.op.field->params().size()) - 1u;
    for (const auto& row : sys.eta)
        for (const auto& x : row)
            for (const auto& part : {x.a(), x.b()})
                for (const auto& f : part.den())
                    if (f.atom->mask & params)
                        throw ContractError("a system entry has a parameter-dependent denominator");
    return sys.constant;
}

LevelIdeal level_ideal(const Ansatz& a, int m, GDRoute route) {
    ConstSystem s = parametric_system(a, m, route);
    LevelIdeal ideal;
    ideal.n = a.op.n();
    ideal.m = m;
    ideal.t = s.columns.size();
    ideal.rows = s.rows.size();
    ideal.theta = a.theta;
    ideal.first_slot = a.first_slot();
    if (ideal.rows <= ideal.t)
        throw ContractError("level ideal is undetermined: " + std::to_string(ideal.rows) + " rows for minors of size " +
                            std::to_string(ideal.t));
    std::vector<std::size_t> pick(ideal.t);
    for (std::size_t i = 0; i < ideal.t; ++i) pick[i] = i;
    std::set<MPoly> seen;
    while (true) {
        Matrix<MPoly> sub;
        for (std::size_t r : pick) sub.push_back(s.rows[r]);
        MPoly d = bareiss_det(std::move(sub));
        if (!d.is_zero()) {
            ++ideal.nonzero_minors;
            MPoly g = d.monic();
            if (seen.insert(g).second) ideal.generators.push_back(std::move(g));
        }
        // Next subset in lexicographic order.
        std::size_t i = ideal.t;
        while (i > 0 && pick[i - 1] == ideal.rows - ideal.t + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < ideal.t; ++j) pick[j] = pick[j - 1] + 1;
    }
    return ideal;
}

bool membership(const std::vector<Rational>& point, const LevelIdeal& ideal) {
    if (point.size() != ideal.theta.size()) throw ContractError("point dimension does not match the ideal");
    std::vector<std::optional<Rational>> values(static_cast<std::size_t>(ideal.first_slot) + point.size());
    for (std::size_t i = 0; i < point.size(); ++i) values[static_cast<std::size_t>(ideal.first_slot) + i] = point[i];
    for (const auto& g : ideal.generators)
        if (!g.substitute(values).is_zero()) return false;
    return true;
}

std::string to_string(LevelClass c) {
    switch (c) {
        case LevelClass::below:
            return "below";
        case LevelClass::exactly:
            return "exactly";
        case LevelClass::above:
            return "above";
    }
    return "above";
}

Classification classify_point(const std::vector<Rational>& point, const Ansatz& a, int m, GDRoute route) {
    const int n = a.op.n();
    if (m < 1 || m % n == 0) throw ContractError("M must be positive and not a multiple of n");
    Classification c;
    GDProvider provider(a.specialize(point), route);
    LevelScan scan = compute_level(provider, m);
    c.level = scan.level;
    c.verdict = !scan.level ? LevelClass::above : *scan.level < m ? LevelClass::below : LevelClass::exactly;

    auto check = [&](int mm, std::optional<bool>& slot, const char* name) {
        try {
            slot = membership(point, level_ideal(a, mm, route));
        } catch (const ContractError&) {
            return;  // undetermined ideal: no cross-check
        }
        bool expect = scan.level && *scan.level <= mm;
        if (*slot != expect) {
            c.consistent = false;
            c.diagnostic += std::string(name) + " membership is " + (*slot ? "true" : "false") +
                            " but the direct level scan gives " +
                            (scan.level ? std::to_string(*scan.level) : std::string("none up to M")) + "; ";
        }
    };
    check(m, c.in_ideal, "I_M");
    c.prev_m = m - 1;
    while (c.prev_m > 0 && c.prev_m % n == 0) --c.prev_m;
    if (c.prev_m > 0) check(c.prev_m, c.in_prev_ideal, "I_M'");
    return c;
}

// ---------------------------------------------------------------------------

namespace {

Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[static_cast<std::size_t>(i)] = std::max(a.e[static_cast<std::size_t>(i)], b.e[static_cast<std::size_t>(i)]);
    return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < kMaxVars; ++i)
        if (a.e[static_cast<std::size_t>(i)] && b.e[static_cast<std::size_t>(i)]) return false;
    return true;
}

MPoly s_polynomial(const MPoly& f, const MPoly& g) {
    const Term& lf = f.leading_term();
    const Term& lg = g.leading_term();
    Monomial l = lcm(lf.mono, lg.mono);
    return f.mul_monomial(l / lf.mono, 1 / lf.coef) - g.mul_monomial(l / lg.mono, 1 / lg.coef);
}

}  // namespace

MPoly normal_form(const MPoly& p, const std::vector<MPoly>& basis) {
    MPoly rest = p;
    std::vector<Term> remainder;
    while (!rest.is_zero()) {
        const Term lt = rest.leading_term();
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.is_zero()) continue;
            const Term& lg = g.leading_term();
            if (!lg.mono.divides(lt.mono)) continue;
            rest -= g.mul_monomial(lt.mono / lg.mono, lt.coef / lg.coef);
            reduced = true;
            break;
        }
        if (!reduced) {
            remainder.push_back(lt);
            rest -= MPoly::monomial(lt.mono, lt.coef);
        }
    }
    return MPoly::from_terms(std::move(remainder));
}

GroebnerResult groebner_reduce(const std::vector<MPoly>& generators, std::size_t max_pairs) {
    GroebnerResult res;
    std::vector<MPoly> g;
    for (const auto& p : generators) {
        MPoly r = normal_form(p, g);
        if (!r.is_zero()) g.push_back(r.monic());
    }
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 0; j < g.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) pairs.emplace(i, j);

    auto pair_degree = [&](const std::pair<std::size_t, std::size_t>& p) {
        return lcm(g[p.first].leading_term().mono, g[p.second].leading_term().mono).degree();
    };
    while (!pairs.empty()) {
        if (res.pairs >= max_pairs) {
            res.complete = false;
            break;
        }
        // Normal selection strategy: smallest lcm degree first.
        auto best = pairs.begin();
        for (auto it = pairs.begin(); it != pairs.end(); ++it)
            if (pair_degree(*it) < pair_degree(*best)) best = it;
        auto [i, j] = *best;
        pairs.erase(best);
        ++res.pairs;
        const Monomial& mi = g[i].leading_term().mono;
        const Monomial& mj = g[j].leading_term().mono;
        if (coprime(mi, mj)) continue;
        Monomial l = lcm(mi, mj);
        bool chain = false;
        for (std::size_t k = 0; k < g.size() && !chain; ++k) {
            if (k == i || k == j || !g[k].leading_term().mono.divides(l)) continue;
            auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
            chain = !pairs.count(key(i, k)) && !pairs.count(key(j, k));
        }
        if (chain) continue;
        MPoly h = normal_form(s_polynomial(g[i], g[j]), g);
        if (h.is_zero()) continue;
        g.push_back(h.monic());
        for (std::size_t k = 0; k + 1 < g.size(); ++k) pairs.emplace(k, g.size() - 1);
    }
    // Minimize, then inter-reduce.
    std::vector<MPoly> minimal;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (std::size_t k = 0; k < g.size() && !redundant; ++k) {
            if (k == i) continue;
            const Monomial& mk = g[k].leading_term().mono;
            const Monomial& mi = g[i].leading_term().mono;
            if (mk.divides(mi) && (mk != mi || k < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(g[i]);
    }
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<MPoly> others;
        for (std::size_t k = 0; k < minimal.size(); ++k)
            if (k != i) others.push_back(minimal[k]);
        const Term lead = minimal[i].leading_term();
        MPoly tail = minimal[i] - MPoly::monomial(lead.mono, lead.coef);
        minimal[i] = (MPoly::monomial(lead.mono, lead.coef) + normal_form(tail, others)).monic();
    }
    std::sort(minimal.begin(), minimal.end(), [](const MPoly& a, const MPoly& b) {
        return degrevlex_less(a.leading_term().mono, b.leading_term().mono);
    });
    res.basis = std::move(minimal);
    return res;
}

}  // namespace odo
