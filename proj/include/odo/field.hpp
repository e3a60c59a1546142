#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "odo/ratfunc.hpp"

namespace odo {

enum class FieldKind { rational, exponential, hyperbolic, weierstrass, elliptic, custom };

std::string to_string(FieldKind k);
FieldKind parse_field_kind(const std::string& s);

/// Differential field Q(params)(eta)[nu].  Two shapes:
///  * monomial: no nu, d(eta) = delta(eta) given in Q(eta);
///  * quadratic: nu^2 = gamma0 + gamma1*nu, d(eta) = nu.
/// Parameters are constants and sit in polynomial slots 0..p-1, eta in the
/// last slot.  Immutable once built.
class Field {
   public:
    FieldKind kind() const { return kind_; }
    bool quadratic() const { return quadratic_; }
    const std::vector<std::string>& params() const { return params_; }
    const std::string& eta_name() const { return eta_name_; }
    const std::string& nu_name() const { return nu_name_; }
    const VarNames& var_names() const { return names_; }
    const RatFunc& delta() const { return delta_; }
    const RatFunc& gamma0() const { return gamma0_; }
    const RatFunc& gamma1() const { return gamma1_; }
    /// d(nu) = dnu_a + dnu_b * nu (quadratic fields only).
    const RatFunc& dnu_a() const { return dnu_a_; }
    const RatFunc& dnu_b() const { return dnu_b_; }
    /// Stable textual description; two fields are compatible iff equal.
    const std::string& descriptor() const { return descriptor_; }
    int param_index(const std::string& name) const;

    friend class FieldBuilder;

   private:
    FieldKind kind_ = FieldKind::rational;
    bool quadratic_ = false;
    std::vector<std::string> params_;
    std::string eta_name_ = "x";
    std::string nu_name_ = "nu";
    VarNames names_{};
    RatFunc delta_ = RatFunc(1);
    RatFunc gamma0_, gamma1_, dnu_a_, dnu_b_;
    std::string descriptor_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Field constructors.  `params` lists the parameter names (at most 7).
FieldPtr make_monomial_field(FieldKind kind, const RatFunc& delta, std::vector<std::string> params,
                             std::string eta_name);
FieldPtr make_quadratic_field(FieldKind kind, const RatFunc& gamma0, const RatFunc& gamma1,
                              std::vector<std::string> params, std::string eta_name = "eta");
FieldPtr make_rational_field(std::vector<std::string> params = {});
FieldPtr make_exponential_field(std::vector<std::string> params = {});
/// nu^2 = eta^2 - 1 (eta = cosh, nu = sinh).
FieldPtr make_hyperbolic_field(std::vector<std::string> params = {});
/// nu^2 = 4 eta^3 - g2 eta - g3 where each g is a rational or a parameter name
/// (which must appear in params).
FieldPtr make_weierstrass_field(const std::string& g2, const std::string& g3, std::vector<std::string> params);
/// nu^2 = eta^3 + g2 eta + g3, same conventions for g2 and g3.
FieldPtr make_elliptic_field(const std::string& g2, const std::string& g3, std::vector<std::string> params);

/// Same field with some parameters replaced by values; parameters without a
/// value keep their relative order.
FieldPtr substitute_field(const FieldPtr& f, const std::vector<std::optional<Rational>>& values);
/// Same field with extra parameters appended (existing slots unchanged).
FieldPtr extend_params(const FieldPtr& f, const std::vector<std::string>& extra);

/// Element a + b*nu.  A default-constructed element is a field-less zero that
/// combines with elements of any field.
class FieldElem {
   public:
    FieldElem() = default;
    FieldElem(FieldPtr f, RatFunc a, RatFunc b = {});

    static FieldElem constant(const FieldPtr& f, const Rational& c);
    static FieldElem eta(const FieldPtr& f);
    static FieldElem nu(const FieldPtr& f);
    static FieldElem param(const FieldPtr& f, int index);

    const FieldPtr& field() const { return field_; }
    const RatFunc& a() const { return a_; }
    const RatFunc& b() const { return b_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_one() const;
    /// True when the value is a constant (a has no eta, b = 0).
    bool is_constant() const;

    FieldElem operator-() const { return {field_, -a_, -b_}; }
    FieldElem& operator+=(const FieldElem& o);
    FieldElem& operator-=(const FieldElem& o);
    FieldElem& operator*=(const FieldElem& o);
    FieldElem& operator*=(const Rational& c);
    friend FieldElem operator+(FieldElem x, const FieldElem& y) { return x += y; }
    friend FieldElem operator-(FieldElem x, const FieldElem& y) { return x -= y; }
    friend FieldElem operator*(FieldElem x, const FieldElem& y) { return x *= y; }
    friend FieldElem operator*(FieldElem x, const Rational& c) { return x *= c; }
    friend bool operator==(const FieldElem& x, const FieldElem& y) { return (x - y).is_zero(); }
    friend bool operator!=(const FieldElem& x, const FieldElem& y) { return !(x == y); }

    FieldElem inverse() const;
    FieldElem pow(int k) const;
    FieldElem derive() const;
    FieldElem& reduce();
    FieldElem substitute(const FieldPtr& target, const std::vector<std::optional<Rational>>& values) const;

    std::string to_string() const;

   private:
    FieldPtr field_;
    RatFunc a_, b_;
};

/// Throws ContractError when x and y live in different fields.
const FieldPtr& common_field(const FieldElem& x, const FieldElem& y);

FieldElem he_mul(const FieldElem& x, const FieldElem& y);
FieldElem he_inv(const FieldElem& x);
FieldElem he_derive(const FieldElem& x);

/// Keys (nu-degree e, eta-power h) of the expansion of x * clear in the basis
/// eta^h nu^e; values are constants (polynomials in the parameters).  `clear`
/// must make both parts of x polynomial in eta.
using ConstantCombination = std::map<std::pair<int, int>, MPoly>;
ConstantCombination to_constant_combination(const FieldElem& x, const Denominator& clear);

/// Sums field elements with per-denominator grouping.
class FieldAccumulator {
   public:
    void add(const FieldElem& x);
    FieldElem take();

   private:
    FieldPtr field_;
    RatFuncAccumulator a_, b_;
};

}  // namespace odo

namespace odo {

inline FieldElem derive(const FieldElem& x) { return x.derive(); }
inline bool is_zero(const FieldElem& x) { return x.is_zero(); }
inline bool is_one(const FieldElem& x) { return x.is_one(); }
inline FieldElem one_like(const FieldElem& x) { return FieldElem::constant(x.field(), 1); }
inline void normalize(FieldElem& x) { x.reduce(); }

}  // namespace odo
