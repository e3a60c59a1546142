#include "odo/field.hpp"

#include <bit>

#include "odo/errors.hpp"

namespace odo {

std::string to_string(FieldKind k) {
    switch (k) {
        case FieldKind::rational: return "rational";
        case FieldKind::exponential: return "exponential";
        case FieldKind::hyperbolic: return "hyperbolic";
        case FieldKind::weierstrass: return "weierstrass";
        case FieldKind::elliptic: return "elliptic";
        case FieldKind::custom: return "custom";
    }
    return "custom";
}

FieldKind parse_field_kind(const std::string& s) {
    if (s == "rational") return FieldKind::rational;
    if (s == "exponential") return FieldKind::exponential;
    if (s == "hyperbolic") return FieldKind::hyperbolic;
    if (s == "weierstrass") return FieldKind::weierstrass;
    if (s == "elliptic") return FieldKind::elliptic;
    if (s == "custom") return FieldKind::custom;
    throw ParseError("unknown field kind '" + s + "'", 0);
}

int Field::param_index(const std::string& name) const {
    for (std::size_t i = 0; i < params_.size(); ++i)
        if (params_[i] == name) return static_cast<int>(i);
    return -1;
}

class FieldBuilder {
   public:
    static std::shared_ptr<Field> blank(FieldKind kind, std::vector<std::string> params, std::string eta_name) {
        if (params.size() > static_cast<std::size_t>(kMaxParams))
            throw ContractError("at most " + std::to_string(kMaxParams) + " parameters are supported");
        auto f = std::make_shared<Field>();
        f->kind_ = kind;
        f->params_ = std::move(params);
        f->eta_name_ = std::move(eta_name);
        f->names_ = default_var_names();
        for (std::size_t i = 0; i < f->params_.size(); ++i) f->names_[i] = f->params_[i];
        f->names_[kEtaVar] = f->eta_name_;
        return f;
    }

    static FieldPtr finish_monomial(std::shared_ptr<Field> f, const RatFunc& delta) {
        if (delta.is_zero()) throw ContractError("derivative of the generator must be nonzero");
        f->quadratic_ = false;
        f->delta_ = delta.reduced();
        f->descriptor_ = to_string(f->kind_) + ";params=" + join(f->params_) + ";" + f->eta_name_ +
                         "'=" + f->delta_.to_string(f->names_);
        return f;
    }

    static FieldPtr finish_quadratic(std::shared_ptr<Field> f, const RatFunc& gamma0, const RatFunc& gamma1) {
        f->quadratic_ = true;
        f->gamma0_ = gamma0.reduced();
        f->gamma1_ = gamma1.reduced();
        RatFunc disc = (f->gamma0_ * Rational(4) + f->gamma1_ * f->gamma1_).reduce();
        if (disc.is_zero()) throw ContractError("defining polynomial of nu is not separable (4*gamma0 + gamma1^2 = 0)");
        reject_square(disc);
        // d(nu) = N (2 nu - gamma1) / (4 gamma0 + gamma1^2),
        // N = gamma1' gamma0 + (gamma0' + gamma1' gamma1) nu, ' = d/d eta.
        RatFunc g0e = f->gamma0_.derivative(kEtaVar), g1e = f->gamma1_.derivative(kEtaVar);
        RatFunc n0 = g1e * f->gamma0_;
        RatFunc n1 = g0e + g1e * f->gamma1_;
        RatFunc inv = disc.inverse();
        f->dnu_a_ = ((-(n0 * f->gamma1_) + n1 * f->gamma0_ * Rational(2)) * inv).reduce();
        f->dnu_b_ = ((n0 * Rational(2) + n1 * f->gamma1_) * inv).reduce();
        f->descriptor_ = to_string(f->kind_) + ";params=" + join(f->params_) + ";" + f->eta_name_ + ";" +
                         f->nu_name_ + "^2=" + f->gamma0_.to_string(f->names_) + " + (" +
                         f->gamma1_.to_string(f->names_) + ")*" + f->nu_name_;
        return f;
    }

   private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
        return s;
    }

    // y^2 - gamma1 y - gamma0 splits iff its discriminant is a square.
    static void reject_square(const RatFunc& disc) {
        auto [n, d] = disc.canonical();
        MPoly p = n * d;
        unsigned mask = p.var_mask();
        if (mask == 0) {
            Rational c = p.constant_value();
            if (sgn(c) > 0 && mpz_perfect_square_p(c.get_num_mpz_t()) && mpz_perfect_square_p(c.get_den_mpz_t()))
                throw ContractError("defining polynomial of nu is reducible (discriminant is a square)");
            return;
        }
        if (std::popcount(mask) != 1) return;
        int v = std::countr_zero(mask);
        for (const auto& [s, e] : squarefree_univariate(p, v))
            if (e % 2 != 0) return;
        Rational lc = p.leading_coeff();
        if (sgn(lc) > 0 && mpz_perfect_square_p(lc.get_num_mpz_t()) && mpz_perfect_square_p(lc.get_den_mpz_t()))
            throw ContractError("defining polynomial of nu is reducible (discriminant is a square)");
    }
};

FieldPtr make_monomial_field(FieldKind kind, const RatFunc& delta, std::vector<std::string> params,
                             std::string eta_name) {
    if ((delta.var_mask() & ~(1u << kEtaVar)) != 0)
        throw ContractError("derivative of the generator must not depend on parameters");
    return FieldBuilder::finish_monomial(FieldBuilder::blank(kind, std::move(params), std::move(eta_name)), delta);
}

FieldPtr make_quadratic_field(FieldKind kind, const RatFunc& gamma0, const RatFunc& gamma1,
                              std::vector<std::string> params, std::string eta_name) {
    return FieldBuilder::finish_quadratic(FieldBuilder::blank(kind, std::move(params), std::move(eta_name)), gamma0,
                                          gamma1);
}

FieldPtr make_rational_field(std::vector<std::string> params) {
    return make_monomial_field(FieldKind::rational, RatFunc(1), std::move(params), "x");
}

FieldPtr make_exponential_field(std::vector<std::string> params) {
    return make_monomial_field(FieldKind::exponential, RatFunc(MPoly::variable(kEtaVar)), std::move(params), "eta");
}

FieldPtr make_hyperbolic_field(std::vector<std::string> params) {
    MPoly g0 = MPoly::variable(kEtaVar, 2) - MPoly(1);
    return make_quadratic_field(FieldKind::hyperbolic, RatFunc(g0), RatFunc(), std::move(params));
}

namespace {

MPoly constant_or_param(const std::string& text, const std::vector<std::string>& params) {
    for (std::size_t i = 0; i < params.size(); ++i)
        if (params[i] == text) return MPoly::variable(static_cast<int>(i));
    return MPoly(parse_rational(text));
}

}  // namespace

FieldPtr make_weierstrass_field(const std::string& g2, const std::string& g3, std::vector<std::string> params) {
    MPoly eta = MPoly::variable(kEtaVar);
    MPoly g0 = MPoly::variable(kEtaVar, 3) * Rational(4) - constant_or_param(g2, params) * eta -
               constant_or_param(g3, params);
    return make_quadratic_field(FieldKind::weierstrass, RatFunc(g0), RatFunc(), std::move(params));
}

FieldPtr make_elliptic_field(const std::string& g2, const std::string& g3, std::vector<std::string> params) {
    MPoly eta = MPoly::variable(kEtaVar);
    MPoly g0 = MPoly::variable(kEtaVar, 3) + constant_or_param(g2, params) * eta + constant_or_param(g3, params);
    return make_quadratic_field(FieldKind::elliptic, RatFunc(g0), RatFunc(), std::move(params));
}

FieldPtr substitute_field(const FieldPtr& f, const std::vector<std::optional<Rational>>& values) {
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < f->params().size(); ++i)
        if (i >= values.size() || !values[i]) rest.push_back(f->params()[i]);
    auto blank = FieldBuilder::blank(f->kind(), std::move(rest), f->eta_name());
    if (f->quadratic())
        return FieldBuilder::finish_quadratic(blank, f->gamma0().substitute(values), f->gamma1().substitute(values));
    return FieldBuilder::finish_monomial(blank, f->delta().substitute(values));
}

FieldPtr extend_params(const FieldPtr& f, const std::vector<std::string>& extra) {
    std::vector<std::string> all = f->params();
    for (const auto& e : extra) {
        if (f->param_index(e) >= 0) throw ContractError("duplicate parameter '" + e + "'");
        all.push_back(e);
    }
    auto blank = FieldBuilder::blank(f->kind(), std::move(all), f->eta_name());
    if (f->quadratic()) return FieldBuilder::finish_quadratic(blank, f->gamma0(), f->gamma1());
    return FieldBuilder::finish_monomial(blank, f->delta());
}

// ---------------------------------------------------------------------------

FieldElem::FieldElem(FieldPtr f, RatFunc a, RatFunc b) : field_(std::move(f)), a_(std::move(a)), b_(std::move(b)) {
    if (!b_.is_zero() && field_ && !field_->quadratic())
        throw ContractError("nu component in a field without nu");
}

FieldElem FieldElem::constant(const FieldPtr& f, const Rational& c) { return {f, RatFunc(c)}; }

FieldElem FieldElem::eta(const FieldPtr& f) { return {f, RatFunc(MPoly::variable(kEtaVar))}; }

FieldElem FieldElem::nu(const FieldPtr& f) {
    if (!f->quadratic()) throw ContractError("field has no nu");
    return {f, RatFunc(), RatFunc(1)};
}

FieldElem FieldElem::param(const FieldPtr& f, int index) {
    if (index < 0 || index >= static_cast<int>(f->params().size())) throw ContractError("parameter index out of range");
    return {f, RatFunc(MPoly::variable(index))};
}

bool FieldElem::is_one() const { return b_.is_zero() && a_ == RatFunc(1); }

bool FieldElem::is_constant() const { return b_.is_zero() && !a_.uses_var(kEtaVar); }

const FieldPtr& common_field(const FieldElem& x, const FieldElem& y) {
    if (!x.field()) return y.field();
    if (!y.field() || x.field() == y.field()) return x.field();
    if (x.field()->descriptor() != y.field()->descriptor())
        throw ContractError("field mismatch: '" + x.field()->descriptor() + "' vs '" + y.field()->descriptor() + "'");
    return x.field();
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
    field_ = common_field(*this, o);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
    field_ = common_field(*this, o);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
    field_ = common_field(*this, o);
    if (b_.is_zero() && o.b_.is_zero()) {
        a_ *= o.a_;
        return *this;
    }
    // (a + b nu)(c + d nu) = ac + bd gamma0 + (ad + bc + bd gamma1) nu
    RatFunc bd = b_ * o.b_;
    RatFunc na = a_ * o.a_;
    RatFunc nb = a_ * o.b_ + b_ * o.a_;
    if (!bd.is_zero()) {
        na += bd * field_->gamma0();
        nb += bd * field_->gamma1();
    }
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
}

FieldElem& FieldElem::operator*=(const Rational& c) {
    a_ *= c;
    b_ *= c;
    return *this;
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw ContractError("division by zero in field");
    if (b_.is_zero()) return {field_, a_.inverse()};
    // conjugate (a + b gamma1) - b nu, norm a^2 + a b gamma1 - b^2 gamma0
    const RatFunc& g0 = field_->gamma0();
    const RatFunc& g1 = field_->gamma1();
    RatFunc norm = (a_ * a_ + a_ * b_ * g1 - b_ * b_ * g0).reduce();
    RatFunc inv = norm.inverse();
    return FieldElem{field_, ((a_ + b_ * g1) * inv).reduce(), (-b_ * inv).reduce()};
}

FieldElem FieldElem::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    FieldElem r = constant(field_, 1), base = *this;
    while (k) {
        if (k & 1) r *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return r;
}

FieldElem FieldElem::derive() const {
    if (!field_ || is_zero()) return {field_, RatFunc()};
    if (!field_->quadratic()) {
        RatFunc da = a_.derivative(kEtaVar);
        if (!da.is_zero()) da *= field_->delta();
        return {field_, std::move(da)};
    }
    // d(a + b nu) = (b' gamma0 + b p) + (a' + b' gamma1 + b q) nu, d(nu) = p + q nu
    RatFunc ae = a_.derivative(kEtaVar);
    RatFunc be = b_.derivative(kEtaVar);
    RatFunc na, nb = ae;
    if (!be.is_zero()) {
        na += be * field_->gamma0();
        if (!field_->gamma1().is_zero()) nb += be * field_->gamma1();
    }
    if (!b_.is_zero()) {
        if (!field_->dnu_a().is_zero()) na += b_ * field_->dnu_a();
        if (!field_->dnu_b().is_zero()) nb += b_ * field_->dnu_b();
    }
    return {field_, std::move(na), std::move(nb)};
}

FieldElem& FieldElem::reduce() {
    a_.reduce();
    b_.reduce();
    return *this;
}

FieldElem FieldElem::substitute(const FieldPtr& target, const std::vector<std::optional<Rational>>& values) const {
    return {target, a_.substitute(values), b_.substitute(values)};
}

std::string FieldElem::to_string() const {
    const VarNames names = field_ ? field_->var_names() : default_var_names();
    if (b_.is_zero()) return a_.to_string(names);
    std::string nb = "(" + b_.to_string(names) + ")*" + field_->nu_name();
    if (a_.is_zero()) return nb;
    return a_.to_string(names) + " + " + nb;
}

FieldElem he_mul(const FieldElem& x, const FieldElem& y) { return x * y; }

FieldElem he_inv(const FieldElem& x) { return x.inverse(); }

FieldElem he_derive(const FieldElem& x) { return x.derive(); }

ConstantCombination to_constant_combination(const FieldElem& x, const Denominator& clear) {
    ConstantCombination out;
    auto expand = [&](const RatFunc& part, int e) {
        if (part.is_zero()) return;
        RatFunc r = part.reduced();
        std::size_t j = 0;
        for (const auto& f : r.den()) {
            while (j < clear.size() && clear[j].atom != f.atom) ++j;
            if (j == clear.size() || clear[j].exp < f.exp)
                throw ContractError("row multiplier does not clear the denominator");
        }
        MPoly p = r.num() * den_cofactor(clear, r.den());
        std::map<int, std::vector<Term>> by_h;
        for (const auto& t : p.terms()) {
            Term c = t;
            int h = c.mono.e[kEtaVar];
            c.mono.e[kEtaVar] = 0;
            by_h[h].push_back(std::move(c));
        }
        for (auto& [h, terms] : by_h) {
            MPoly c = MPoly::from_terms(std::move(terms));
            if (!c.is_zero()) out[{e, h}] = std::move(c);
        }
    };
    expand(x.a(), 0);
    expand(x.b(), 1);
    return out;
}

void FieldAccumulator::add(const FieldElem& x) {
    if (x.is_zero()) return;
    if (!field_) field_ = x.field();
    a_.add(x.a());
    b_.add(x.b());
}

FieldElem FieldAccumulator::take() { return {field_, a_.take(), b_.take()}; }

}  // namespace odo
