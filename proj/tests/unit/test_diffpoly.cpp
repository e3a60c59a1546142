#include <random>

#include "doctest.h"
#include "odo/diffpoly.hpp"
#include "odo/errors.hpp"

using namespace odo;

namespace {
DiffPoly u(int l, int k = 0) { return DiffPoly::var(l, k); }

DiffPoly random_dp(std::mt19937& rng) {
    std::uniform_int_distribution<int> l(2, 4), k(0, 3), c(-5, 5), nf(0, 3), nt(1, 4);
    DiffPoly p;
    int terms = nt(rng);
    for (int t = 0; t < terms; ++t) {
        DiffPoly m(c(rng));
        int factors = nf(rng);
        for (int i = 0; i < factors; ++i) m = m * u(l(rng), k(rng));
        p += m;
    }
    return p;
}
}  // namespace

TEST_CASE("derivation is a Leibniz derivation") {
    std::mt19937 rng(11);
    for (int it = 0; it < 50; ++it) {
        DiffPoly p = random_dp(rng), q = random_dp(rng);
        CHECK(dp_derive(p * q) == dp_derive(p) * q + p * dp_derive(q));
        CHECK(dp_derive(p + q) == dp_derive(p) + dp_derive(q));
    }
    CHECK(dp_derive(u(2) * u(2)) == u(2) * u(2, 1) * Rational(2));
    CHECK(dp_derive(DiffPoly(5)).is_zero());
}

TEST_CASE("weight grading") {
    CHECK(dp_weight(u(2) * u(3, 1)) == 6);
    CHECK(dp_weight(u(2) + u(3)) == std::nullopt);
    CHECK(dp_weight(DiffPoly()) == 0);
    std::mt19937 rng(5);
    for (int it = 0; it < 30; ++it) {
        DiffPoly p = random_dp(rng);
        auto w = dp_weight(p);
        if (w && !p.is_zero() && !dp_derive(p).is_zero()) CHECK(dp_weight(dp_derive(p)) == *w + 1);
    }
}

TEST_CASE("canonical text round trip") {
    std::mt19937 rng(21);
    for (int it = 0; it < 50; ++it) {
        DiffPoly p = random_dp(rng) * Rational(3, 7);
        std::string s = p.to_string();
        DiffPoly q = parse_diffpoly(s);
        CHECK(q == p);
        CHECK(q.to_string() == s);
    }
    CHECK(parse_diffpoly("0") == DiffPoly());
    CHECK_THROWS_AS(parse_diffpoly("1 * v[2]^(0)^1"), ParseError);
    CHECK_THROWS_AS(parse_diffpoly("1 * u[3]^(0)^1 * u[2]^(0)^1"), ParseError);
    CHECK_THROWS_AS(parse_diffpoly(""), ParseError);
    CHECK((u(2, 1) * u(2, 1) * Rational(-2, 3) + u(3, 4)).pretty() == "-2/3*u2'^2 + u3^(4)");
}

TEST_CASE("specialization at concrete coefficients") {
    auto f = make_rational_field();
    FieldElem x = FieldElem::eta(f);
    // u2 = -6/x^2, u3 = 12/x^3
    SpecializationContext ctx(f, {FieldElem::constant(f, -6) * x.pow(-2), FieldElem::constant(f, 12) * x.pow(-3)});
    CHECK(ctx.derivative(2, 2) == FieldElem::constant(f, -36) * x.pow(-4));
    DiffPoly p = u(2) * u(3, 1) + u(2, 3);
    FieldElem expect = FieldElem::constant(f, -6) * x.pow(-2) * FieldElem::constant(f, -36) * x.pow(-4) +
                       FieldElem::constant(f, 144) * x.pow(-5);
    CHECK(ctx.specialize(p) == expect);
    CHECK_THROWS_AS(ctx.derivative(4, 0), ContractError);
}
