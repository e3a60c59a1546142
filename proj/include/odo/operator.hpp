#pragma once

#include <climits>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "odo/diffpoly.hpp"
#include "odo/errors.hpp"
#include "odo/field.hpp"
#include "odo/rational.hpp"

namespace odo {

/// Floor value standing for "no truncation" (minus infinity).
inline constexpr int kNoFloor = INT_MIN / 4;

/// Sum builder for operator coefficients.  The generic version adds in place;
/// field elements group by denominator.
template <class C>
class CoefSum {
   public:
    void add(const C& x) { sum_ += x; }
    void add_product(const Rational& c, const C& a, const C& b) {
        C t = a * b;
        t *= c;
        sum_ += t;
    }
    C take() { return std::move(sum_); }

   private:
    C sum_{};
};

template <>
class CoefSum<DiffPoly> {
   public:
    void add(const DiffPoly& x) { sum_ += x; }
    void add_product(const Rational& c, const DiffPoly& a, const DiffPoly& b) { sum_.add_product(c, a, b); }
    DiffPoly take() { return std::move(sum_); }

   private:
    DiffPoly sum_;
};

template <>
class CoefSum<FieldElem> {
   public:
    void add(const FieldElem& x) { acc_.add(x); }
    void add_product(const Rational& c, const FieldElem& a, const FieldElem& b) {
        FieldElem t = a * b;
        t *= c;
        acc_.add(t);
    }
    FieldElem take() {
        FieldElem r = acc_.take();
        r.reduce();
        return r;
    }

   private:
    FieldAccumulator acc_;
};

/// Sum of c_i * D^i over integer orders i.  Orders <= floor() are unknown;
/// a differential operator has floor kNoFloor and only orders >= 0.
template <class C>
class OperatorSeries {
   public:
    using Terms = std::map<int, C>;

    OperatorSeries() = default;
    explicit OperatorSeries(int floor) : floor_(floor) {}
    static OperatorSeries monomial(C coef, int order) {
        OperatorSeries r;
        r.set(order, std::move(coef));
        return r;
    }

    const Terms& terms() const { return terms_; }
    int floor() const { return floor_; }
    bool is_zero() const { return terms_.empty(); }
    bool exact() const { return floor_ == kNoFloor; }
    bool is_differential() const { return exact() && (terms_.empty() || terms_.begin()->first >= 0); }
    /// Highest stored order, kNoFloor when empty.
    int order() const { return terms_.empty() ? kNoFloor : terms_.rbegin()->first; }
    C coeff(int i) const {
        auto it = terms_.find(i);
        return it == terms_.end() ? C{} : it->second;
    }
    void set(int i, C c) {
        if (i <= floor_) throw ContractError("coefficient below the truncation floor");
        if (odo::is_zero(c)) {
            terms_.erase(i);
        } else {
            terms_.insert_or_assign(i, std::move(c));
        }
    }
    /// Drops orders <= f and raises the floor to f (never lowers it).
    OperatorSeries truncated(int f) const {
        OperatorSeries r(std::max(f, floor_));
        for (auto it = terms_.upper_bound(r.floor_); it != terms_.end(); ++it) r.terms_.insert(*it);
        return r;
    }

    OperatorSeries operator-() const {
        OperatorSeries r(floor_);
        for (const auto& [i, c] : terms_) r.terms_.emplace(i, -c);
        return r;
    }
    OperatorSeries& operator+=(const OperatorSeries& o) { return combine(o, 1); }
    OperatorSeries& operator-=(const OperatorSeries& o) { return combine(o, -1); }
    OperatorSeries& operator*=(const Rational& c) {
        if (sgn(c) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [i, x] : terms_) x *= c;
        return *this;
    }
    friend OperatorSeries operator+(OperatorSeries a, const OperatorSeries& b) { return a += b; }
    friend OperatorSeries operator-(OperatorSeries a, const OperatorSeries& b) { return a -= b; }
    friend OperatorSeries operator*(OperatorSeries a, const Rational& c) { return a *= c; }
    friend bool operator==(const OperatorSeries& a, const OperatorSeries& b) {
        if (a.floor_ != b.floor_ || a.terms_.size() != b.terms_.size()) return false;
        for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
            if (ia->first != ib->first || !(ia->second == ib->second)) return false;
        return true;
    }
    friend bool operator!=(const OperatorSeries& a, const OperatorSeries& b) { return !(a == b); }

    /// `(coef)*D^i` terms, highest order first; a truncated series ends with
    /// `+ O(D^floor)`.
    std::string render(const std::function<std::string(const C&)>& coef) const {
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!out.empty()) out += " + ";
            out += "(" + coef(it->second) + ")";
            if (it->first == 1) {
                out += "*D";
            } else if (it->first != 0) {
                out += "*D^" + std::to_string(it->first);
            }
        }
        if (!exact()) out += (out.empty() ? "" : " + ") + std::string("O(D^") + std::to_string(floor_) + ")";
        return out.empty() ? "0" : out;
    }

   private:
    OperatorSeries& combine(const OperatorSeries& o, int sign) {
        floor_ = std::max(floor_, o.floor_);
        for (auto it = terms_.begin(); it != terms_.end();) it = it->first <= floor_ ? terms_.erase(it) : std::next(it);
        for (const auto& [i, c] : o.terms_) {
            if (i <= floor_) continue;
            auto it = terms_.find(i);
            if (it == terms_.end()) {
                terms_.emplace(i, sign > 0 ? c : -c);
            } else {
                if (sign > 0) {
                    it->second += c;
                } else {
                    it->second -= c;
                }
                normalize(it->second);
                if (odo::is_zero(it->second)) terms_.erase(it);
            }
        }
        return *this;
    }

    Terms terms_;
    int floor_ = kNoFloor;
};

namespace detail {

inline int floor_sum(int f, int ord) {
    if (f == kNoFloor || ord == kNoFloor) return kNoFloor;
    return f + ord;
}

}  // namespace detail

/// Derivative budget for D^i with i < 0 against an exact operand whose
/// derivatives never vanish; hitting it means the caller forgot a floor.
inline constexpr int kMaxExactTail = 256;

/// A * B using D^i a = sum_l binom(i,l) a^(l) D^(i-l).  The result floor is
/// max(f_A + ord B, f_B + ord A); every stored coefficient is exact.
template <class C>
OperatorSeries<C> op_mul(const OperatorSeries<C>& a, const OperatorSeries<C>& b) {
    if (a.is_zero() && a.exact()) return OperatorSeries<C>();
    if (b.is_zero() && b.exact()) return OperatorSeries<C>();
    int f = std::max(detail::floor_sum(a.floor(), b.order()), detail::floor_sum(b.floor(), a.order()));
    if (a.is_zero() || b.is_zero()) f = std::max({f, a.floor(), b.floor()});

    std::map<int, CoefSum<C>> sums;
    // Derivatives of the coefficients of b, extended on demand.
    std::map<int, std::vector<C>> derivs;
    for (const auto& [j, c] : b.terms()) derivs[j].push_back(c);

    for (const auto& [i, x] : a.terms()) {
        for (const auto& [j, y] : b.terms()) {
            std::vector<C>& d = derivs[j];
            for (int l = 0;; ++l) {
                int ord = i + j - l;
                if (ord <= f) break;
                if (i >= 0 && l > i) break;
                if (l >= static_cast<int>(d.size())) {
                    if (is_zero(d.back())) break;
                    C next = derive(d.back());
                    normalize(next);
                    d.push_back(std::move(next));
                }
                if (is_zero(d[static_cast<std::size_t>(l)])) break;
                if (f == kNoFloor && i < 0 && l > kMaxExactTail)
                    throw ContractError("non-terminating product of exact pseudo-differential operators");
                Rational bin = binomial(i, static_cast<unsigned>(l));
                if (sgn(bin) != 0) sums[ord].add_product(bin, x, d[static_cast<std::size_t>(l)]);
            }
        }
    }
    OperatorSeries<C> r(f);
    for (auto& [ord, s] : sums) r.set(ord, s.take());
    return r;
}

template <class C>
OperatorSeries<C> commutator(const OperatorSeries<C>& a, const OperatorSeries<C>& b) {
    return op_mul(a, b) - op_mul(b, a);
}

/// Orders >= 0, exact.  Throws if the truncation floor reaches order 0.
template <class C>
OperatorSeries<C> positive_part(const OperatorSeries<C>& a) {
    if (a.floor() >= 0) throw ContractError("positive part is not determined by the truncated series");
    OperatorSeries<C> r;
    for (auto it = a.terms().lower_bound(0); it != a.terms().end(); ++it) r.set(it->first, it->second);
    return r;
}

template <class C>
OperatorSeries<C> op_pow(const OperatorSeries<C>& a, unsigned k, const C& one) {
    OperatorSeries<C> r = OperatorSeries<C>::monomial(one, 0);
    for (unsigned i = 0; i < k; ++i) r = op_mul(r, a);
    return r;
}

/// Checks that L is monic of order n >= 2 with no D^(n-1) term; returns n.
template <class C>
int check_normal_form(const OperatorSeries<C>& l) {
    if (!l.is_differential() || l.is_zero()) throw ContractError("expected a differential operator");
    int n = l.order();
    if (n < 2) throw ContractError("operator order must be at least 2");
    if (!is_one(l.terms().rbegin()->second)) throw ContractError("operator is not monic");
    if (!is_zero(l.coeff(n - 1))) throw ContractError("operator is not in normal form (D^(n-1) term present)");
    return n;
}

/// Monic n-th root Q = D + q_{-1} D^-1 + ... with floor -depth (q_0 = 0 in
/// normal form).
/// Each unknown q_{1-k} is fixed by the coefficient of D^(n-k) in Q^n, which
/// equals n q_{1-k} plus terms in the already known coefficients.
template <class C>
OperatorSeries<C> nth_root(const OperatorSeries<C>& l, int depth) {
    int n = check_normal_form(l);
    if (depth < 1) throw ContractError("root depth must be positive");
    const C one = one_like(l.terms().rbegin()->second);
    OperatorSeries<C> q(-1);
    q.set(1, one);
    for (int k = 2; k <= depth; ++k) {
        // Known part with the next unknown set to zero; Q^n then has floor n-1-k.
        OperatorSeries<C> probe(-k);
        for (const auto& [i, c] : q.terms()) probe.set(i, c);
        OperatorSeries<C> power = probe;
        for (int i = 1; i < n; ++i) power = op_mul(power, probe);
        C next = l.coeff(n - k) - power.coeff(n - k);
        next *= Rational(1, n);
        normalize(next);
        probe.set(1 - k, std::move(next));
        q = std::move(probe);
    }
    return q;
}

template <class C>
std::string render(const OperatorSeries<C>& a) {
    return a.render([](const C& c) { return c.to_string(); });
}

}  // namespace odo
