#include "odo/mpoly.hpp"

#include <algorithm>
#include <bit>

#include "odo/errors.hpp"

namespace odo {

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
    return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
    return r;
}

bool degrevlex_less(const Monomial& a, const Monomial& b) {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (int i = kMaxVars - 1; i >= 0; --i) {
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
    }
    return false;
}

namespace {

bool term_greater(const Term& a, const Term& b) { return degrevlex_less(b.mono, a.mono); }

// Dense univariate helpers, index = exponent.
using Dense = std::vector<Rational>;

void trim(Dense& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Dense dense_mul(const Dense& a, const Dense& b) {
    if (a.empty() || b.empty()) return {};
    Dense r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (sgn(b[j]) == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    trim(r);
    return r;
}

// Returns quotient, leaves the remainder in `a`.
Dense dense_divmod(Dense& a, const Dense& b) {
    trim(a);
    if (a.size() < b.size()) return {};
    Dense q(a.size() - b.size() + 1);
    const Rational& lb = b.back();
    for (std::size_t k = a.size(); k-- >= b.size();) {
        if (sgn(a[k]) == 0) {
            if (k == 0) break;
            continue;
        }
        Rational t = a[k] / lb;
        std::size_t shift = k - (b.size() - 1);
        q[shift] = t;
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= t * b[j];
        if (k == 0) break;
    }
    trim(a);
    trim(q);
    return q;
}

Dense dense_monic(Dense p) {
    trim(p);
    if (p.empty()) return p;
    Rational lc = p.back();
    for (auto& c : p) c /= lc;
    return p;
}

Dense dense_gcd(Dense a, Dense b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        dense_divmod(a, b);
        std::swap(a, b);
        b = dense_monic(std::move(b));
    }
    return dense_monic(std::move(a));
}

Dense dense_derivative(const Dense& p) {
    if (p.size() <= 1) return {};
    Dense r(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Rational(static_cast<long>(i));
    trim(r);
    return r;
}

int single_var(unsigned mask) { return mask == 0 ? -1 : std::countr_zero(mask); }

}  // namespace

MPoly::MPoly(const Rational& c) {
    if (sgn(c) != 0) terms_.push_back({Monomial{}, c});
}

MPoly MPoly::variable(int var, unsigned power) {
    Monomial m;
    m.e[var] = static_cast<std::uint16_t>(power);
    return monomial(m, 1);
}

MPoly MPoly::monomial(const Monomial& m, const Rational& c) {
    MPoly p;
    if (sgn(c) != 0) p.terms_.push_back({m, c});
    return p;
}

MPoly MPoly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), term_greater);
    MPoly p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coef += t.coef;
        } else {
            if (!p.terms_.empty() && sgn(p.terms_.back().coef) == 0) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && sgn(p.terms_.back().coef) == 0) p.terms_.pop_back();
    return p;
}

MPoly MPoly::from_dense(int var, const std::vector<Rational>& coeffs) {
    MPoly p;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (sgn(coeffs[i]) == 0) continue;
        Monomial m;
        m.e[var] = static_cast<std::uint16_t>(i);
        p.terms_.push_back({m, coeffs[i]});
    }
    return p;
}

Rational MPoly::constant_value() const {
    if (!is_constant()) throw ContractError("polynomial is not constant");
    return terms_.empty() ? Rational(0) : terms_[0].coef;
}

Rational MPoly::constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
    return 0;
}

unsigned MPoly::var_mask() const {
    unsigned mask = 0;
    for (const auto& t : terms_)
        for (int i = 0; i < kMaxVars; ++i)
            if (t.mono.e[i]) mask |= 1u << i;
    return mask;
}

unsigned MPoly::degree_in(int var) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono.e[var]);
    return d;
}

unsigned MPoly::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

namespace {

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
    std::vector<Term> r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && degrevlex_less(b[j].mono, a[i].mono))) {
            r.push_back(a[i++]);
        } else if (i == a.size() || degrevlex_less(a[i].mono, b[j].mono)) {
            r.push_back(b[j++]);
            if (subtract) r.back().coef = -r.back().coef;
        } else {
            Rational c = subtract ? Rational(a[i].coef - b[j].coef) : Rational(a[i].coef + b[j].coef);
            if (sgn(c) != 0) r.push_back({a[i].mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    return r;
}

}  // namespace

MPoly& MPoly::operator+=(const MPoly& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    terms_ = merge_terms(terms_, o.terms_, false);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    if (o.terms_.empty()) return *this;
    terms_ = merge_terms(terms_, o.terms_, true);
    return *this;
}

MPoly& MPoly::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coef *= c;
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.terms_.size() == 1) return b.mul_monomial(a.terms_[0].mono, a.terms_[0].coef);
    if (b.terms_.size() == 1) return a.mul_monomial(b.terms_[0].mono, b.terms_[0].coef);
    unsigned mask = a.var_mask() | b.var_mask();
    if (std::popcount(mask) == 1) {
        int v = single_var(mask);
        return MPoly::from_dense(v, dense_mul(a.dense(v), b.dense(v)));
    }
    std::vector<Term> terms;
    terms.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) terms.push_back({s.mono * t.mono, s.coef * t.coef});
    return MPoly::from_terms(std::move(terms));
}

bool operator==(const MPoly& a, const MPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef) return false;
    }
    return true;
}

bool operator<(const MPoly& a, const MPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size();
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        const auto& s = a.terms_[i];
        const auto& t = b.terms_[i];
        if (!(s.mono == t.mono)) return degrevlex_less(s.mono, t.mono);
        if (s.coef != t.coef) return s.coef < t.coef;
    }
    return false;
}

MPoly MPoly::pow(unsigned k) const {
    MPoly result(1), base = *this;
    while (k) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return result;
}

MPoly MPoly::mul_monomial(const Monomial& m, const Rational& c) const {
    MPoly r;
    if (sgn(c) == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
    return r;
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& d) const {
    if (d.is_zero()) throw ContractError("division by zero polynomial");
    if (is_zero()) return MPoly{};
    if (d.terms_.size() == 1) {
        const auto& dt = d.terms_[0];
        MPoly q;
        q.terms_.reserve(terms_.size());
        Rational inv = 1 / dt.coef;
        for (const auto& t : terms_) {
            if (!dt.mono.divides(t.mono)) return std::nullopt;
            q.terms_.push_back({t.mono / dt.mono, t.coef * inv});
        }
        return q;
    }
    unsigned mask = var_mask() | d.var_mask();
    if (std::popcount(mask) == 1) {
        int v = single_var(mask);
        Dense a = dense(v);
        Dense q = dense_divmod(a, d.dense(v));
        if (!a.empty()) return std::nullopt;
        return from_dense(v, q);
    }
    // Leading terms of exact quotients are forced, so fail fast on the first mismatch.
    MPoly rem = *this, q;
    const Term& lt = d.terms_.front();
    while (!rem.is_zero()) {
        const Term& rt = rem.terms_.front();
        if (!lt.mono.divides(rt.mono)) return std::nullopt;
        if (degrevlex_less(rt.mono, lt.mono)) return std::nullopt;
        Monomial m = rt.mono / lt.mono;
        Rational c = rt.coef / lt.coef;
        q.terms_.push_back({m, c});
        rem -= d.mul_monomial(m, c);
    }
    return q;
}

MPoly MPoly::remainder_univariate(const MPoly& d, int var) const {
    Dense a = dense(var);
    dense_divmod(a, d.dense(var));
    return from_dense(var, a);
}

MPoly MPoly::derivative(int var) const {
    std::vector<Term> r;
    r.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (t.mono.e[var] == 0) continue;
        Term n = t;
        n.coef *= Rational(static_cast<long>(t.mono.e[var]));
        --n.mono.e[var];
        r.push_back(std::move(n));
    }
    // Lowering one exponent keeps the degrevlex order among surviving terms.
    MPoly p;
    p.terms_ = std::move(r);
    return p;
}

MPoly MPoly::substitute(const std::vector<std::optional<Rational>>& values) const {
    std::array<int, kMaxVars> target{};
    int next = 0;
    for (int i = 0; i < kMaxParams; ++i) {
        bool assigned = i < static_cast<int>(values.size()) && values[i].has_value();
        target[i] = assigned ? -1 : next++;
    }
    target[kEtaVar] = kEtaVar;
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Term n{Monomial{}, t.coef};
        for (int i = 0; i < kMaxVars; ++i) {
            if (!t.mono.e[i]) continue;
            if (target[i] < 0) {
                Rational p = 1;
                for (unsigned k = 0; k < t.mono.e[i]; ++k) p *= *values[i];
                n.coef *= p;
            } else {
                n.mono.e[target[i]] = t.mono.e[i];
            }
        }
        out.push_back(std::move(n));
    }
    return from_terms(std::move(out));
}

Rational MPoly::evaluate(const std::vector<Rational>& values) const {
    Rational sum = 0;
    for (const auto& t : terms_) {
        Rational v = t.coef;
        for (int i = 0; i < kMaxVars; ++i) {
            if (!t.mono.e[i]) continue;
            if (i >= static_cast<int>(values.size()))
                throw ContractError("evaluation point has too few coordinates");
            Rational p = 1;
            for (unsigned k = 0; k < t.mono.e[i]; ++k) p *= values[i];
            v *= p;
        }
        sum += v;
    }
    return sum;
}

MPoly MPoly::monic() const {
    if (is_zero()) return {};
    return *this * Rational(1 / leading_coeff());
}

std::vector<Rational> MPoly::dense(int var) const {
    std::vector<Rational> d(terms_.empty() ? 0 : degree_in(var) + 1);
    for (const auto& t : terms_) d[t.mono.e[var]] += t.coef;
    return d;
}

std::vector<MPoly> MPoly::coefficients_in(int var) const {
    std::vector<std::vector<Term>> buckets(terms_.empty() ? 0 : degree_in(var) + 1);
    for (const auto& t : terms_) {
        Term n = t;
        n.mono.e[var] = 0;
        buckets[t.mono.e[var]].push_back(std::move(n));
    }
    std::vector<MPoly> r;
    r.reserve(buckets.size());
    for (auto& b : buckets) r.push_back(from_terms(std::move(b)));
    return r;
}

std::string MPoly::to_string(const VarNames& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coef;
        bool neg = sgn(c) < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (int i = 0; i < kMaxVars; ++i) {
            if (!t.mono.e[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += names[i];
            if (t.mono.e[i] > 1) mono += "^" + std::to_string(t.mono.e[i]);
        }
        if (mono.empty()) {
            out += odo::to_string(c);
        } else if (c == 1) {
            out += mono;
        } else {
            out += odo::to_string(c) + "*" + mono;
        }
    }
    return out;
}

namespace {

// Pseudo-remainder of a by b as polynomials in `var`.
MPoly pseudo_remainder(MPoly a, const MPoly& b, int var) {
    unsigned db = b.degree_in(var);
    auto bc = b.coefficients_in(var);
    const MPoly& lb = bc.back();
    while (!a.is_zero()) {
        unsigned da = a.degree_in(var);
        if (da < db) break;
        MPoly la = a.coefficients_in(var).back();
        a = a * lb - la * MPoly::variable(var, da - db) * b;
    }
    return a;
}

MPoly content_in(const MPoly& p, int var) {
    MPoly g;
    for (const auto& c : p.coefficients_in(var)) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c.monic() : gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

MPoly exact(const MPoly& a, const MPoly& b) {
    auto q = a.divide_exact(b);
    if (!q) throw ContractError("internal: inexact division in gcd");
    return *q;
}

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return MPoly(1);
    unsigned ma = a.var_mask(), mb = b.var_mask();
    unsigned mask = ma | mb;
    if (std::popcount(mask) == 1) {
        int v = single_var(mask);
        return MPoly::from_dense(v, dense_gcd(a.dense(v), b.dense(v)));
    }
    // A variable present in one argument only is absorbed into a content.
    unsigned only = ma ^ mb;
    if (only) {
        int v = single_var(only);
        if ((ma >> v) & 1u) return gcd(content_in(a, v), b);
        return gcd(a, content_in(b, v));
    }
    int v = single_var(mask);
    MPoly ca = content_in(a, v), cb = content_in(b, v);
    MPoly c = gcd(ca, cb);
    MPoly pa = exact(a, ca), pb = exact(b, cb);
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    while (true) {
        MPoly r = pseudo_remainder(pa, pb, v);
        if (r.is_zero()) break;
        if (r.degree_in(v) == 0) {
            pb = MPoly(1);
            break;
        }
        pa = std::move(pb);
        pb = exact(r, content_in(r, v));
    }
    return (c * pb).monic();
}

std::vector<std::pair<MPoly, unsigned>> squarefree_univariate(const MPoly& p, int var) {
    std::vector<std::pair<MPoly, unsigned>> out;
    Dense f = dense_monic(p.dense(var));
    if (f.size() <= 1) return out;
    Dense fp = dense_derivative(f);
    Dense a = dense_gcd(f, fp);
    Dense b = f, c = fp;
    Dense tmp = b;
    b = dense_divmod(tmp, a);
    tmp = c;
    c = dense_divmod(tmp, a);
    Dense d = c;
    {
        Dense bp = dense_derivative(b);
        d.resize(std::max(d.size(), bp.size()));
        for (std::size_t i = 0; i < bp.size(); ++i) d[i] -= bp[i];
        trim(d);
    }
    unsigned i = 1;
    while (b.size() > 1) {
        Dense ai = dense_gcd(b, d);
        tmp = b;
        b = dense_divmod(tmp, ai);
        tmp = d;
        c = dense_divmod(tmp, ai);
        Dense bp = dense_derivative(b);
        d = c;
        d.resize(std::max(d.size(), bp.size()));
        for (std::size_t k = 0; k < bp.size(); ++k) d[k] -= bp[k];
        trim(d);
        if (ai.size() > 1) out.emplace_back(MPoly::from_dense(var, ai), i);
        ++i;
    }
    return out;
}

VarNames default_var_names() {
    VarNames n;
    for (int i = 0; i < kMaxParams; ++i) n[i] = "t" + std::to_string(i);
    n[kEtaVar] = "eta";
    return n;
}

}  // namespace odo
