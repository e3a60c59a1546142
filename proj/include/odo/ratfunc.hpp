#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "odo/mpoly.hpp"

namespace odo {

struct AtomPowerCache;

/// A monic non-constant polynomial used as a denominator factor.  Atoms are
/// interned process-wide, so identity comparison is pointer comparison.
struct Atom {
    MPoly poly;
    std::uint32_t id;
    unsigned mask;  // variables occurring in poly
    AtomPowerCache* cache;

    /// poly^k, cached.
    const MPoly& power(unsigned k) const;
};

const Atom* intern_atom(const MPoly& monic_poly);

struct DenFactor {
    const Atom* atom;
    unsigned exp;
    friend bool operator==(const DenFactor&, const DenFactor&) = default;
};

/// Denominators are products of atom powers, sorted by atom id.
using Denominator = std::vector<DenFactor>;

/// Rational function num / prod(atom^exp).  Arithmetic never calls gcd; it
/// keeps denominators factored so common multiples are exponent maxima, and
/// `reduce` cancels atoms that divide the numerator.
class RatFunc {
   public:
    RatFunc() = default;
    RatFunc(const Rational& c) : num_(c) {}  // NOLINT(google-explicit-constructor)
    RatFunc(long c) : num_(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    RatFunc(MPoly p) : num_(std::move(p)) {}  // NOLINT(google-explicit-constructor)
    RatFunc(MPoly num, Denominator den) : num_(std::move(num)), den_(std::move(den)) {}

    /// num / den for an arbitrary nonzero polynomial den; den is split into
    /// atoms (monomial part, known atoms, squarefree parts).
    static RatFunc quotient(const MPoly& num, const MPoly& den);

    const MPoly& num() const { return num_; }
    const Denominator& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.empty(); }
    unsigned var_mask() const;
    bool uses_var(int var) const { return (var_mask() >> var) & 1u; }

    RatFunc operator-() const { return {-num_, den_}; }
    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator*=(const Rational& c) {
        num_ *= c;
        if (num_.is_zero()) den_.clear();
        return *this;
    }
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator*(RatFunc a, const Rational& c) { return a *= c; }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
    /// Value equality (the difference has zero numerator).
    friend bool operator==(const RatFunc& a, const RatFunc& b);
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc inverse() const;
    RatFunc pow(int k) const;
    RatFunc derivative(int var) const;
    RatFunc substitute(const std::vector<std::optional<Rational>>& values) const;

    /// Cancels atom factors dividing the numerator.
    RatFunc& reduce();
    RatFunc reduced() const {
        RatFunc r = *this;
        return r.reduce();
    }
    /// Fully reduced (num, den) with monic expanded den.
    std::pair<MPoly, MPoly> canonical() const;
    MPoly den_poly() const;

    /// Renders "num" or "(num)/(den)", the denominator in squarefree factored
    /// form when univariate.
    std::string to_string(const VarNames& names) const;

   private:
    MPoly num_;
    Denominator den_;
};

/// Least common multiple of factored denominators (exponent maxima).
Denominator den_lcm(const Denominator& a, const Denominator& b);
/// prod atom^(big.exp - small.exp); requires small | big.
MPoly den_cofactor(const Denominator& big, const Denominator& small);

/// Sums many rational functions, grouping terms by denominator so numerators
/// are combined before any common-denominator lifting.
class RatFuncAccumulator {
   public:
    void add(const RatFunc& x);
    void add(RatFunc&& x);
    RatFunc take();

   private:
    std::map<std::vector<std::pair<std::uint32_t, unsigned>>, RatFunc> groups_;
};

}  // namespace odo
