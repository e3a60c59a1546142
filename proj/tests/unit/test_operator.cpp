#include <random>

#include "doctest.h"
#include "odo/operator.hpp"

using namespace odo;

namespace {
using DOp = OperatorSeries<DiffPoly>;
using FOp = OperatorSeries<FieldElem>;

DiffPoly u(int l, int k = 0) { return DiffPoly::var(l, k); }

DOp formal_l(int n) {
    DOp l = DOp::monomial(DiffPoly(1), n);
    for (int j = 2; j <= n; ++j) l.set(n - j, u(j));
    return l;
}

DOp d(int i) { return DOp::monomial(DiffPoly(1), i); }
}  // namespace

TEST_CASE("commutation rule D a = a D + a'") {
    DOp a = DOp::monomial(u(2), 0);
    DOp r = op_mul(d(1), a);
    CHECK(r.coeff(1) == u(2));
    CHECK(r.coeff(0) == u(2, 1));
    CHECK(r.terms().size() == 2);
    CHECK(r.exact());
}

TEST_CASE("D^-1 D = D D^-1 = 1 within truncation") {
    DOp inv(-6);
    inv.set(-1, DiffPoly(1));
    DOp left = op_mul(inv, d(1)), right = op_mul(d(1), inv);
    CHECK(left.floor() == -5);
    CHECK(left.terms().size() == 1);
    CHECK(left.coeff(0).is_one());
    CHECK(right.coeff(0).is_one());
    CHECK(right.terms().size() == 1);
}

TEST_CASE("[D, x] = 1 over Q(x)") {
    auto f = make_rational_field();
    FOp dx = FOp::monomial(FieldElem::constant(f, 1), 1);
    FOp x = FOp::monomial(FieldElem::eta(f), 0);
    FOp c = commutator(dx, x);
    CHECK(c.terms().size() == 1);
    CHECK(c.coeff(0).is_one());
}

TEST_CASE("[L, L] = 0 and commutator order bound") {
    for (int n = 2; n <= 5; ++n) {
        DOp l = formal_l(n);
        CHECK(commutator(l, l).is_zero());
        DOp p = op_mul(d(2), l);
        CHECK(commutator(p, l).order() <= n + (n + 2) - 1);
    }
}

TEST_CASE("square root for n = 2: q_-1 = u2/2") {
    DOp q = nth_root(formal_l(2), 4);
    CHECK(q.floor() == -4);
    CHECK(q.coeff(1).is_one());
    CHECK(q.coeff(0).is_zero());
    CHECK(q.coeff(-1) == u(2) * Rational(1, 2));
    // Oracle: Q^2 agrees with L above its floor.
    DOp sq = op_mul(q, q);
    CHECK(sq.floor() == -3);
    DOp diff = sq - formal_l(2);
    CHECK(diff.is_zero());
}

TEST_CASE("positive parts of powers of the cube root") {
    DOp q = nth_root(formal_l(3), 4);
    DOp p2 = positive_part(op_pow(q, 2, DiffPoly(1)));
    DOp expect2 = d(2);
    expect2.set(0, u(2) * Rational(2, 3));
    CHECK(p2 == expect2);

    DOp p4 = positive_part(op_pow(q, 4, DiffPoly(1)));
    DOp expect4 = d(4);
    expect4.set(2, u(2) * Rational(4, 3));
    expect4.set(1, u(2, 1) * Rational(2, 3) + u(3) * Rational(4, 3));
    expect4.set(0, u(2) * u(2) * Rational(2, 9) + u(2, 2) * Rational(2, 9) + u(3, 1) * Rational(2, 3));
    CHECK(p4 == expect4);

    DOp p3 = positive_part(op_pow(q, 3, DiffPoly(1)));
    CHECK(p3 == formal_l(3));

    DOp h2 = commutator(formal_l(3), p2);
    CHECK(h2.order() <= 1);
    CHECK(h2.coeff(0) == u(2) * u(2, 1) * Rational(2, 3) + u(2, 3) * Rational(2, 3) - u(3, 2));
    CHECK(h2.coeff(1) == u(2, 2) - u(3, 1) * Rational(2));
}

TEST_CASE("positive part drops negative orders") {
    DOp a(-5);
    a.set(1, DiffPoly(1));
    a.set(-1, u(2));
    DOp p = positive_part(a);
    CHECK(p == d(1));
    CHECK(p.exact());
    CHECK(positive_part(formal_l(3)) == formal_l(3));
    CHECK_THROWS_AS(positive_part(DOp(0)), ContractError);
}

TEST_CASE("root depth: (Q^m)_+ is stable when the root is deepened") {
    for (int n = 2; n <= 4; ++n) {
        for (int m = 1; m <= 6; ++m) {
            DOp shallow = positive_part(op_pow(nth_root(formal_l(n), m), static_cast<unsigned>(m), DiffPoly(1)));
            DOp deep = positive_part(op_pow(nth_root(formal_l(n), m + 2), static_cast<unsigned>(m), DiffPoly(1)));
            CHECK(shallow == deep);
        }
    }
}

TEST_CASE("truncation soundness and order additivity on random series") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> c(-4, 4), ord(-3, 3), l(2, 3), k(0, 2);
    auto random_series = [&](int floor) {
        DOp a(floor);
        for (int t = 0; t < 4; ++t) {
            int o = ord(rng);
            if (o <= floor) continue;
            a.set(o, a.coeff(o) + u(l(rng), k(rng)) * Rational(c(rng)) + DiffPoly(c(rng)));
        }
        a.set(4, DiffPoly(1 + std::abs(c(rng))));
        return a;
    };
    for (int it = 0; it < 25; ++it) {
        DOp deep_a = random_series(-9), deep_b = random_series(-9);
        DOp a = deep_a.truncated(-4), b = deep_b.truncated(-5);
        DOp coarse = op_mul(a, b), fine = op_mul(deep_a, deep_b);
        CHECK(fine.truncated(coarse.floor()) == coarse);
        CHECK(coarse.order() == a.order() + b.order());
    }
}

TEST_CASE("canonical rendering") {
    DOp l = formal_l(3);
    CHECK(render(l) == "(1)*D^3 + (1 * u[2]^(0)^1)*D + (1 * u[3]^(0)^1)");
    DOp t(-2);
    t.set(-1, DiffPoly(3));
    CHECK(render(t) == "(3)*D^-1 + O(D^-2)");
}
