#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "odo/field.hpp"
#include "odo/rational.hpp"

namespace odo {

/// u_l^(k), the k-th derivative of the formal coefficient u_l (l >= 2).
struct DiffVar {
    int l;
    int k;
    std::uint16_t code() const { return static_cast<std::uint16_t>((l << 8) | k); }
    static DiffVar from_code(std::uint16_t c) { return {c >> 8, c & 0xFF}; }
    int weight() const { return l + k; }
};

/// Sorted (by (l, k)) list of (variable code, exponent >= 1).
using DiffMonomial = std::vector<std::pair<std::uint16_t, std::uint16_t>>;

int monomial_weight(const DiffMonomial& m);

/// Sparse differential polynomial in u_2, u_3, ... with rational coefficients.
class DiffPoly {
   public:
    using TermMap = std::map<DiffMonomial, Rational>;

    DiffPoly() = default;
    DiffPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
    DiffPoly(long c) : DiffPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    static DiffPoly var(int l, int k = 0);
    static DiffPoly monomial(DiffMonomial m, const Rational& c);

    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second == 1; }

    DiffPoly operator-() const;
    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    DiffPoly& operator*=(const Rational& c);
    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
    friend DiffPoly operator*(DiffPoly a, const Rational& c) { return a *= c; }
    friend bool operator==(const DiffPoly& a, const DiffPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const DiffPoly& a, const DiffPoly& b) { return !(a == b); }

    /// this += c * a * b without materializing the product.
    void add_product(const Rational& c, const DiffPoly& a, const DiffPoly& b);
    void add_term(const DiffMonomial& m, const Rational& c);

    /// Canonical text form: `coef * u[l]^(k)^e * ...` terms joined by " + ".
    std::string to_string() const;
    /// Human oriented form: u2, u3', u2^(4), ...
    std::string pretty() const;

   private:
    TermMap terms_;
};

DiffPoly dp_derive(const DiffPoly& p);
/// Common weight of all monomials, nullopt when inhomogeneous; 0 for the zero polynomial.
std::optional<int> dp_weight(const DiffPoly& p);
DiffPoly parse_diffpoly(std::string_view text);

/// Evaluates differential polynomials at u_l -> upsilon_l in a field, with a
/// memo of the derivatives of upsilon.  Safe to share between threads.
class SpecializationContext {
   public:
    /// upsilon[0] is the image of u_2, upsilon[n-2] the image of u_n.
    SpecializationContext(FieldPtr field, std::vector<FieldElem> upsilon);

    const FieldPtr& field() const { return field_; }
    int n() const { return static_cast<int>(upsilon_.size()) + 1; }
    /// d^k(upsilon_l), memoized.
    FieldElem derivative(int l, int k) const;
    FieldElem specialize(const DiffPoly& p) const;

   private:
    FieldPtr field_;
    std::vector<FieldElem> upsilon_;
    mutable std::mutex mutex_;
    mutable std::map<std::uint16_t, FieldElem> memo_;
};

inline DiffPoly derive(const DiffPoly& p) { return dp_derive(p); }
inline bool is_zero(const DiffPoly& p) { return p.is_zero(); }
inline bool is_one(const DiffPoly& p) { return p.is_one(); }
inline DiffPoly one_like(const DiffPoly&) { return DiffPoly(1); }
inline void normalize(DiffPoly&) {}

}  // namespace odo
