#include "odo/ratfunc.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <memory>
#include <mutex>

#include "odo/errors.hpp"

namespace odo {

struct AtomPowerCache {
    std::mutex mutex;
    std::deque<MPoly> powers;  // powers[k] = poly^k
};

namespace {

struct AtomSlot {
    Atom atom;
    std::unique_ptr<AtomPowerCache> cache;
};

struct Registry {
    std::mutex mutex;
    std::map<MPoly, std::unique_ptr<AtomSlot>> by_poly;
    std::vector<const AtomSlot*> by_id;
};

Registry& registry() {
    static Registry r;
    return r;
}

std::vector<const Atom*> atoms_snapshot() {
    auto& reg = registry();
    std::lock_guard lock(reg.mutex);
    std::vector<const Atom*> out;
    out.reserve(reg.by_id.size());
    for (const auto* s : reg.by_id) out.push_back(&s->atom);
    return out;
}

Denominator normalize_factors(std::vector<DenFactor> f) {
    std::sort(f.begin(), f.end(), [](const DenFactor& a, const DenFactor& b) { return a.atom->id < b.atom->id; });
    Denominator out;
    for (const auto& x : f) {
        if (x.exp == 0) continue;
        if (!out.empty() && out.back().atom == x.atom) {
            out.back().exp += x.exp;
        } else {
            out.push_back(x);
        }
    }
    return out;
}

Denominator den_product(const Denominator& a, const Denominator& b) {
    std::vector<DenFactor> f(a);
    f.insert(f.end(), b.begin(), b.end());
    return normalize_factors(std::move(f));
}

}  // namespace

const MPoly& Atom::power(unsigned k) const {
    AtomPowerCache* s = cache;
    std::lock_guard lock(s->mutex);
    if (s->powers.empty()) {
        s->powers.emplace_back(1);
        s->powers.push_back(poly);
    }
    while (s->powers.size() <= k) s->powers.push_back(s->powers.back() * poly);
    return s->powers[k];
}

const Atom* intern_atom(const MPoly& monic_poly) {
    if (monic_poly.is_constant()) throw ContractError("internal: constant denominator atom");
    auto& reg = registry();
    std::lock_guard lock(reg.mutex);
    auto it = reg.by_poly.find(monic_poly);
    if (it != reg.by_poly.end()) return &it->second->atom;
    auto slot = std::make_unique<AtomSlot>();
    slot->atom.poly = monic_poly;
    slot->atom.id = static_cast<std::uint32_t>(reg.by_id.size());
    slot->atom.mask = monic_poly.var_mask();
    slot->cache = std::make_unique<AtomPowerCache>();
    slot->atom.cache = slot->cache.get();
    const Atom* out = &slot->atom;
    reg.by_id.push_back(slot.get());
    reg.by_poly.emplace(monic_poly, std::move(slot));
    return out;
}

Denominator den_lcm(const Denominator& a, const Denominator& b) {
    Denominator out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].atom->id < b[j].atom->id)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].atom->id < a[i].atom->id) {
            out.push_back(b[j++]);
        } else {
            out.push_back({a[i].atom, std::max(a[i].exp, b[j].exp)});
            ++i;
            ++j;
        }
    }
    return out;
}

MPoly den_cofactor(const Denominator& big, const Denominator& small) {
    MPoly r(1);
    std::size_t j = 0;
    for (const auto& f : big) {
        unsigned have = 0;
        if (j < small.size() && small[j].atom == f.atom) have = small[j++].exp;
        if (f.exp > have) r = r * f.atom->power(f.exp - have);
    }
    return r;
}

RatFunc RatFunc::quotient(const MPoly& num, const MPoly& den) {
    if (den.is_zero()) throw ContractError("division by zero");
    if (num.is_zero()) return {};
    Rational inv = 1 / den.leading_coeff();
    MPoly n = num * inv;
    MPoly d = den * inv;
    std::vector<DenFactor> factors;
    // Monomial content.
    Monomial g;
    g.e.fill(0xFFFF);
    for (const auto& t : d.terms())
        for (int i = 0; i < kMaxVars; ++i) g.e[i] = std::min(g.e[i], t.mono.e[i]);
    if (!g.is_one()) {
        for (int i = 0; i < kMaxVars; ++i)
            if (g.e[i]) factors.push_back({intern_atom(MPoly::variable(i)), g.e[i]});
        d = *d.divide_exact(MPoly::monomial(g, 1));
    }
    if (!d.is_constant()) {
        unsigned mask = d.var_mask();
        for (const Atom* a : atoms_snapshot()) {
            if (d.is_constant()) break;
            if ((a->mask & ~mask) != 0 || a->poly.total_degree() > d.total_degree() || a->poly.size() == 1) continue;
            unsigned e = 0;
            while (!d.is_constant()) {
                auto q = d.divide_exact(a->poly);
                if (!q) break;
                d = std::move(*q);
                ++e;
            }
            if (e) factors.push_back({a, e});
        }
    }
    if (!d.is_constant()) {
        unsigned mask = d.var_mask();
        if (std::popcount(mask) == 1) {
            int v = std::countr_zero(mask);
            for (auto& [s, e] : squarefree_univariate(d, v)) factors.push_back({intern_atom(s), e});
        } else {
            factors.push_back({intern_atom(d.monic()), 1});
            n *= d.leading_coeff();
        }
    } else {
        n *= 1 / d.constant_value();
    }
    return {std::move(n), normalize_factors(std::move(factors))};
}

unsigned RatFunc::var_mask() const {
    unsigned m = num_.var_mask();
    for (const auto& f : den_) m |= f.atom->mask;
    return m;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        Denominator l = den_lcm(den_, o.den_);
        num_ = num_ * den_cofactor(l, den_) + o.num_ * den_cofactor(l, o.den_);
        den_ = std::move(l);
    }
    if (num_.is_zero()) den_.clear();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = RatFunc{};
    num_ = num_ * o.num_;
    if (!o.den_.empty()) den_ = den_product(den_, o.den_);
    return *this;
}

bool operator==(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return (a - b).is_zero();
}

MPoly RatFunc::den_poly() const {
    MPoly r(1);
    for (const auto& f : den_) r = r * f.atom->power(f.exp);
    return r;
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw ContractError("division by zero");
    return quotient(den_poly(), num_);
}

RatFunc RatFunc::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    if (k == 0) return RatFunc(1);
    Denominator d = den_;
    for (auto& f : d) f.exp *= static_cast<unsigned>(k);
    return {num_.pow(static_cast<unsigned>(k)), std::move(d)};
}

RatFunc RatFunc::derivative(int var) const {
    MPoly dn = num_.derivative(var);
    std::vector<std::size_t> moving;
    for (std::size_t i = 0; i < den_.size(); ++i)
        if ((den_[i].atom->mask >> var) & 1u) moving.push_back(i);
    if (moving.empty()) {
        if (dn.is_zero()) return {};
        return {std::move(dn), den_};
    }
    // d(N / prod A_i^e_i) = (N' prod A_i - N sum e_i A_i' prod_{j!=i} A_j) / prod A_i^(e_i+1)
    MPoly prod(1);
    for (auto i : moving) prod = prod * den_[i].atom->poly;
    MPoly sum;
    for (auto i : moving) {
        MPoly others(1);
        for (auto j : moving)
            if (j != i) others = others * den_[j].atom->poly;
        sum += den_[i].atom->poly.derivative(var) * others * Rational(static_cast<long>(den_[i].exp));
    }
    MPoly n = dn * prod - num_ * sum;
    if (n.is_zero()) return {};
    Denominator d = den_;
    for (auto i : moving) ++d[i].exp;
    return {std::move(n), std::move(d)};
}

RatFunc RatFunc::substitute(const std::vector<std::optional<Rational>>& values) const {
    RatFunc r(num_.substitute(values));
    for (const auto& f : den_) {
        MPoly a = f.atom->poly.substitute(values);
        if (a.is_zero()) throw ContractError("denominator vanishes at the substituted point");
        r *= quotient(MPoly(1), a).pow(static_cast<int>(f.exp));
    }
    return r;
}

RatFunc& RatFunc::reduce() {
    if (num_.is_zero()) {
        den_.clear();
        return *this;
    }
    unsigned nmask = num_.var_mask();
    for (auto& f : den_) {
        if ((f.atom->mask & ~nmask) != 0) continue;
        while (f.exp > 0 && !num_.is_constant()) {
            auto q = num_.divide_exact(f.atom->poly);
            if (!q) break;
            num_ = std::move(*q);
            --f.exp;
        }
        nmask = num_.var_mask();
    }
    std::erase_if(den_, [](const DenFactor& f) { return f.exp == 0; });
    return *this;
}

std::pair<MPoly, MPoly> RatFunc::canonical() const {
    RatFunc r = reduced();
    MPoly num = r.num_;
    MPoly den(1);
    for (const auto& f : r.den_) {
        const MPoly& a = f.atom->poly;
        for (unsigned k = 0; k < f.exp; ++k) {
            MPoly g;
            unsigned mask = num.var_mask() | f.atom->mask;
            if (std::popcount(mask) == 1) {
                int v = std::countr_zero(mask);
                g = gcd(a, num.remainder_univariate(a, v));
            } else {
                g = gcd(num, a);
            }
            if (g.is_constant()) {
                den = den * a.pow(f.exp - k);
                break;
            }
            num = *num.divide_exact(g);
            den = den * *a.divide_exact(g);
        }
    }
    if (num.is_zero()) return {MPoly{}, MPoly(1)};
    return {num, den};
}

std::string RatFunc::to_string(const VarNames& names) const {
    auto [n, d] = canonical();
    if (d.is_constant()) return n.to_string(names);
    std::string den;
    unsigned mask = d.var_mask();
    auto wrap = [&](const MPoly& p) { return p.size() == 1 ? p.to_string(names) : "(" + p.to_string(names) + ")"; };
    if (std::popcount(mask) == 1) {
        auto parts = squarefree_univariate(d, std::countr_zero(mask));
        std::sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) {
            if (x.first.total_degree() != y.first.total_degree())
                return x.first.total_degree() < y.first.total_degree();
            return x.second < y.second;
        });
        for (const auto& [s, e] : parts) {
            if (!den.empty()) den += "*";
            if (s.size() == 1 && e > 1) {
                // A single monomial s is a bare variable here.
                den += s.to_string(names) + "^" + std::to_string(e);
            } else {
                den += wrap(s);
                if (e > 1) den += "^" + std::to_string(e);
            }
        }
    } else {
        den = d.to_string(names);
    }
    return "(" + n.to_string(names) + ")/(" + den + ")";
}

void RatFuncAccumulator::add(const RatFunc& x) {
    if (x.is_zero()) return;
    std::vector<std::pair<std::uint32_t, unsigned>> key;
    key.reserve(x.den().size());
    for (const auto& f : x.den()) key.emplace_back(f.atom->id, f.exp);
    auto [it, inserted] = groups_.try_emplace(std::move(key), x);
    if (!inserted) it->second += x;
}

void RatFuncAccumulator::add(RatFunc&& x) {
    if (x.is_zero()) return;
    std::vector<std::pair<std::uint32_t, unsigned>> key;
    key.reserve(x.den().size());
    for (const auto& f : x.den()) key.emplace_back(f.atom->id, f.exp);
    auto [it, inserted] = groups_.try_emplace(std::move(key), std::move(x));
    if (!inserted) it->second += x;
}

RatFunc RatFuncAccumulator::take() {
    Denominator l;
    for (const auto& [k, v] : groups_)
        if (!v.is_zero()) l = den_lcm(l, v.den());
    MPoly num;
    for (const auto& [k, v] : groups_) {
        if (v.is_zero()) continue;
        num += v.num() * den_cofactor(l, v.den());
    }
    groups_.clear();
    if (num.is_zero()) return {};
    return {std::move(num), std::move(l)};
}

}  // namespace odo
