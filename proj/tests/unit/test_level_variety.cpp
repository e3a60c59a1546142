#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "odo/errors.hpp"
#include "odo/level_variety.hpp"
#include "random_poly.hpp"

using namespace odo;
using odo::testing::random_poly;

namespace {

MPoly var(int i) { return MPoly::variable(i); }
MPoly k(long c) { return MPoly(Rational(c)); }

Ansatz hyperbolic_template() {
    return parse_ansatz("D^3 + (a2/eta^2)*D + (a3*nu/eta^3)", make_hyperbolic_field());
}

Ansatz rational_n4_template() {
    return parse_ansatz("D^4 + a2/x^2*D^2 + a3/x^3*D + a4/x^4", make_rational_field());
}

std::vector<Rational> pt(std::initializer_list<Rational> xs) { return xs; }

// Cofactor expansion along the first row.
MPoly cofactor_det(const Matrix<MPoly>& m) {
    if (m.size() == 1) return m[0][0];
    MPoly det;
    for (std::size_t c = 0; c < m.size(); ++c) {
        Matrix<MPoly> minor;
        for (std::size_t r = 1; r < m.size(); ++r) {
            std::vector<MPoly> row;
            for (std::size_t j = 0; j < m.size(); ++j)
                if (j != c) row.push_back(m[r][j]);
            minor.push_back(row);
        }
        MPoly term = m[0][c] * cofactor_det(minor);
        if (c % 2) det -= term;
        else det += term;
    }
    return det;
}

bool same_up_to_scalar(const std::vector<MPoly>& a, const std::vector<MPoly>& b) {
    std::set<MPoly> sa, sb;
    for (const auto& p : a) sa.insert(p.monic());
    for (const auto& p : b) sb.insert(p.monic());
    return sa == sb;
}

}  // namespace

TEST_CASE("hyperbolic template: parametric system and level ideal at M = 4") {
    Ansatz a = hyperbolic_template();
    REQUIRE(a.theta == std::vector<std::string>{"a2", "a3"});
    MPoly a2 = var(a.first_slot()), a3 = var(a.first_slot() + 1);

    ConstSystem s = parametric_system(a, 4);
    CHECK(s.rows.size() == 9);
    CHECK(s.columns == std::vector<int>{1, 2, 4});
    // Row (-3 a3, 0, 0) is present.
    bool found = false;
    for (const auto& row : s.rows)
        found |= row[0] == k(-3) * a3 && row[1].is_zero() && row[2].is_zero();
    CHECK(found);

    LevelIdeal ideal = level_ideal(a, 4);
    CHECK(ideal.t == 3);
    CHECK(ideal.rows == 9);
    CHECK(ideal.nonzero_minors == 39);

    GroebnerResult gb = groebner_reduce(ideal.generators);
    CHECK(gb.complete);
    std::vector<MPoly> printed = {a2.pow(3) * (a2 - k(6)), a3.pow(3) * (a3 + k(12)),
                                  a3 * (k(2) * a2 - a3) * (k(2) * a2 + a3), (k(2) * a2 + a3) * a3.pow(2)};
    CHECK(same_up_to_scalar(gb.basis, groebner_reduce(printed).basis));
    CHECK(gb.basis.size() == 4);

    for (auto p : {pt({0, 0}), pt({6, 0}), pt({6, -12})}) CHECK(membership(p, ideal));
    CHECK_FALSE(membership(pt({1, 1}), ideal));
    CHECK_FALSE(membership(pt({-6, 0}), ideal));
    CHECK_THROWS_AS(parametric_system(a, 3), ContractError);
}

TEST_CASE("hyperbolic template: classification and the lower ideal") {
    Ansatz a = hyperbolic_template();
    Classification c = classify_point(pt({6, 0}), a, 4);
    CHECK(c.verdict == LevelClass::exactly);
    CHECK(c.level == 4);
    CHECK(c.consistent);
    CHECK(c.prev_m == 2);
    CHECK(c.in_ideal == true);
    CHECK(c.in_prev_ideal == false);

    Classification origin = classify_point(pt({0, 0}), a, 4);
    CHECK(origin.verdict == LevelClass::below);
    CHECK(origin.consistent);

    Classification generic = classify_point(pt({1, 1}), a, 4);
    CHECK(generic.verdict == LevelClass::above);
    CHECK(generic.consistent);

    LevelIdeal i2 = level_ideal(a, 2);
    CHECK(i2.t == 2);
    CHECK(membership(pt({0, 0}), i2));
    CHECK_FALSE(membership(pt({6, 0}), i2));
    CHECK_FALSE(membership(pt({6, -12}), i2));
}

TEST_CASE("rational n = 4 template: chain of level varieties") {
    Ansatz a = rational_n4_template();
    REQUIRE(a.theta.size() == 3);
    MPoly a2 = var(a.first_slot()), a3 = var(a.first_slot() + 1), a4 = var(a.first_slot() + 2);

    ConstSystem s6 = parametric_system(a, 6);
    CHECK(s6.columns == std::vector<int>{1, 2, 3, 5, 6});
    CHECK(s6.rows.size() == 15);
    bool found = false;
    for (const auto& row : s6.rows) found |= row[0] == k(4) * a4;
    CHECK(found);

    LevelIdeal i1 = level_ideal(a, 1);
    CHECK(i1.t == 1);
    CHECK(membership(pt({0, 0, 0}), i1));
    CHECK_FALSE(membership(pt({-1, 2, Rational(1, 4) - 3}), i1));

    LevelIdeal i2 = level_ideal(a, 2);
    for (long t = -5; t < 5; ++t) {
        Rational tt(t * 3 + 1);
        CHECK(membership(pt({-tt / 2, tt, tt * tt / 16 - Rational(3, 2) * tt}), i2));
    }
    CHECK_FALSE(membership(pt({-8, 8, 0}), i2));

    LevelIdeal i3 = level_ideal(a, 3);
    for (auto p : {pt({-8, 8, 0}), pt({-8, 24, -24}), pt({-20, 40, 0}), pt({-4, 8, -8})}) CHECK(membership(p, i3));
    CHECK(membership(pt({-1, 2, Rational(1, 4) - 3}), i3));

    LevelIdeal i5 = level_ideal(a, 5);
    for (auto p : {pt({-24, 24, 0}), pt({-24, 72, -72}), pt({-12, 48, -72}), pt({-12, 0, 0}), pt({-36, 24, 144}),
                   pt({-36, 120, 0}), pt({-60, 120, 216}), pt({-28, 56, -56}), pt({-16, 32, 40}), pt({-12, 24, 0}),
                   pt({-8, 8, 0}), pt({0, 0, 0})})
        CHECK(membership(p, i5));
    CHECK_FALSE(membership(pt({1, 1, 1}), i5));

    // Points of the curve I_{6,2} lie in the level-6 variety.
    LevelIdeal i6 = level_ideal(a, 6);
    for (long t : {-3, 1, 7}) {
        Rational x3(t);
        CHECK(membership(pt({-x3 / 2, x3, (x3 * x3 - 152 * x3 + 4480) / 16}), i6));
    }
    GroebnerResult g62 = groebner_reduce({k(2) * a2 + a3, a3.pow(2) - k(152) * a3 - k(16) * a4 + k(4480)});
    REQUIRE(g62.basis.size() == 2);
    CHECK(same_up_to_scalar(g62.basis, {k(2) * a2 + a3, a3.pow(2) - k(152) * a3 - k(16) * a4 + k(4480)}));
}

TEST_CASE("fraction-free determinants agree with cofactor expansion") {
    std::mt19937 rng(20240611);
    for (std::size_t size : {3u, 4u}) {
        for (int trial = 0; trial < 12; ++trial) {
            Matrix<MPoly> m(size, std::vector<MPoly>(size));
            for (auto& row : m)
                for (auto& x : row) x = random_poly(rng, 0b11, 3, 2);
            CHECK(bareiss_det(m) == cofactor_det(m));
        }
    }
    Matrix<MPoly> singular = {{var(0), var(1)}, {k(2) * var(0), k(2) * var(1)}};
    CHECK(bareiss_det(singular).is_zero());
}

TEST_CASE("Buchberger post-conditions") {
    std::mt19937 rng(77);
    CHECK(groebner_reduce({k(3) * var(0)}).basis == std::vector<MPoly>{var(0)});
    CHECK(groebner_reduce({k(5)}).basis == std::vector<MPoly>{k(1)});
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<MPoly> gens;
        for (int i = 0; i < 3; ++i) gens.push_back(random_poly(rng, 0b11, 3, 3));
        GroebnerResult gb = groebner_reduce(gens);
        REQUIRE(gb.complete);
        for (const auto& g : gens) CHECK(normal_form(g, gb.basis).is_zero());
        for (std::size_t i = 0; i < gb.basis.size(); ++i) {
            CHECK(gb.basis[i].leading_coeff() == 1);
            for (std::size_t j = i + 1; j < gb.basis.size(); ++j) {
                const Term& li = gb.basis[i].leading_term();
                const Term& lj = gb.basis[j].leading_term();
                Monomial l;
                for (int v = 0; v < kMaxVars; ++v)
                    l.e[static_cast<std::size_t>(v)] =
                        std::max(li.mono.e[static_cast<std::size_t>(v)], lj.mono.e[static_cast<std::size_t>(v)]);
                MPoly sp = gb.basis[i].mul_monomial(l / li.mono, 1) - gb.basis[j].mul_monomial(l / lj.mono, 1);
                CHECK(normal_form(sp, gb.basis).is_zero());
            }
        }
        // Deterministic under generator permutation.
        std::reverse(gens.begin(), gens.end());
        CHECK(groebner_reduce(gens).basis == gb.basis);
    }
}
