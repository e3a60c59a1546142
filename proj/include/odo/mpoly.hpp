#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "odo/rational.hpp"

namespace odo {

/// Parameters occupy variable slots 0..kMaxParams-1, the field generator is
/// always the last slot.
inline constexpr int kMaxVars = 8;
inline constexpr int kMaxParams = kMaxVars - 1;
inline constexpr int kEtaVar = kMaxVars - 1;

struct Monomial {
    std::array<std::uint16_t, kMaxVars> e{};

    unsigned degree() const {
        unsigned d = 0;
        for (auto x : e) d += x;
        return d;
    }
    bool is_one() const {
        for (auto x : e)
            if (x) return false;
        return true;
    }
    bool divides(const Monomial& other) const {
        for (int i = 0; i < kMaxVars; ++i)
            if (e[i] > other.e[i]) return false;
        return true;
    }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial operator*(const Monomial& a, const Monomial& b);
/// Requires b | a.
Monomial operator/(const Monomial& a, const Monomial& b);

/// Graded reverse lexicographic comparison with x0 > x1 > ... ; true when a < b.
bool degrevlex_less(const Monomial& a, const Monomial& b);

struct Term {
    Monomial mono;
    Rational coef;
};

using VarNames = std::array<std::string, kMaxVars>;

/// Sparse multivariate polynomial over Q, terms sorted by decreasing
/// degrevlex monomial, no stored zeros.
class MPoly {
   public:
    MPoly() = default;
    MPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
    MPoly(long c) : MPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

    static MPoly variable(int var, unsigned power = 1);
    static MPoly monomial(const Monomial& m, const Rational& c);
    /// Terms may be unsorted and contain duplicates or zeros.
    static MPoly from_terms(std::vector<Term> terms);
    /// Dense univariate polynomial coeffs[i] * var^i.
    static MPoly from_dense(int var, const std::vector<Rational>& coeffs);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    Rational constant_value() const;  // requires is_constant()
    Rational constant_term() const;
    const Term& leading_term() const { return terms_.front(); }
    const Rational& leading_coeff() const { return terms_.front().coef; }

    /// Bit mask of variables that occur.
    unsigned var_mask() const;
    bool uses_var(int var) const { return (var_mask() >> var) & 1u; }
    unsigned degree_in(int var) const;
    unsigned total_degree() const;
    /// True when only `var` occurs (constants included).
    bool is_univariate_in(int var) const { return (var_mask() & ~(1u << var)) == 0; }

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    MPoly& operator*=(const Rational& c);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(MPoly a, const Rational& c) { return a *= c; }
    friend MPoly operator*(const Rational& c, MPoly a) { return a *= c; }
    friend MPoly operator*(MPoly a, long c) { return a *= Rational(c); }
    friend MPoly operator*(long c, MPoly a) { return a *= Rational(c); }
    friend bool operator==(const MPoly& a, const MPoly& b);
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }
    /// Arbitrary total order, used for map keys only.
    friend bool operator<(const MPoly& a, const MPoly& b);

    MPoly pow(unsigned k) const;
    MPoly mul_monomial(const Monomial& m, const Rational& c) const;

    /// Exact quotient if d divides *this, otherwise nullopt.
    std::optional<MPoly> divide_exact(const MPoly& d) const;
    /// Remainder of univariate division in `var`; both must be univariate in var.
    MPoly remainder_univariate(const MPoly& d, int var) const;

    MPoly derivative(int var) const;
    /// Replaces the parameters that have a value and shifts the remaining
    /// parameter slots down; the generator slot is untouched.
    MPoly substitute(const std::vector<std::optional<Rational>>& values) const;
    /// Value at a full parameter assignment; the generator must not occur.
    Rational evaluate(const std::vector<Rational>& values) const;

    /// Divides by the leading coefficient.
    MPoly monic() const;
    /// Dense coefficient list in `var` (requires univariate).
    std::vector<Rational> dense(int var) const;
    /// Entry k is the coefficient of var^k, as a polynomial in the other variables.
    std::vector<MPoly> coefficients_in(int var) const;

    std::string to_string(const VarNames& names) const;

   private:
    std::vector<Term> terms_;
};

/// Monic gcd; gcd(0, 0) = 0.
MPoly gcd(const MPoly& a, const MPoly& b);

/// Squarefree decomposition of a polynomial univariate in `var`: returns
/// pairs (s_i, i) with monic squarefree pairwise coprime s_i, product s_i^i
/// equal to the monic part of p.
std::vector<std::pair<MPoly, unsigned>> squarefree_univariate(const MPoly& p, int var);

VarNames default_var_names();

}  // namespace odo
