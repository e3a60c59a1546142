#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "odo/hierarchy.hpp"

using namespace odo;

namespace {
DiffPoly u(int l, int k = 0) { return DiffPoly::var(l, k); }
Rational q(long a, long b = 1) { return Rational(a, b); }

std::filesystem::path fresh_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("odo-test-" + tag + "-" + std::to_string(::getpid()));
    std::filesystem::remove_all(p);
    return p;
}
}  // namespace

TEST_CASE("n = 3 entries against the closed forms") {
    auto e1 = almost_commuting(3, 1);
    CHECK(e1.h[0] == -u(3, 1));
    CHECK(e1.h[1] == -u(2, 1));

    auto e2 = almost_commuting(3, 2);
    CHECK(e2.h[0] == u(2) * u(2, 1) * q(2, 3) + u(2, 3) * q(2, 3) - u(3, 2));
    CHECK(e2.h[1] == u(2, 2) - u(3, 1) * q(2));

    auto e4 = almost_commuting(3, 4);
    DiffPoly h04 = u(2) * u(2, 3) * q(2, 3) - u(2) * u(3, 2) * q(2, 3) + u(2) * u(2) * u(2, 1) * q(4, 9) +
                   u(2, 1) * u(2, 2) * q(4, 3) - u(2, 1) * u(3, 1) * q(2, 3) + u(2, 5) * q(2, 9) -
                   u(3) * u(3, 1) * q(4, 3) - u(3, 4) * q(1, 3);
    DiffPoly h14 = u(2) * u(2, 2) * q(2, 3) - u(2) * u(3, 1) * q(4, 3) - u(2, 1) * u(3) * q(4, 3) +
                   u(2, 1) * u(2, 1) * q(2, 3) + u(2, 4) * q(1, 3) - u(3, 3) * q(2, 3);
    CHECK(e4.h[0] == h04);
    CHECK(e4.h[1] == h14);

    auto e3 = almost_commuting(3, 3);
    CHECK(e3.p == formal_operator(3));
    CHECK(e3.h[0].is_zero());
    CHECK(e3.h[1].is_zero());
}

TEST_CASE("homogeneity and shape invariants") {
    for (int n = 2; n <= 5; ++n) {
        auto range = almost_commuting_range(n, 9);
        for (const auto& e : range) {
            CHECK(e.p.order() == e.m);
            CHECK(e.p.coeff(e.m).is_one());
            CHECK(e.p.coeff(e.m - 1).is_zero());
            for (const auto& [i, c] : e.p.terms()) CHECK(dp_weight(c) == e.m - i);
            for (int k = 0; k <= n - 2; ++k) {
                const DiffPoly& h = e.h[static_cast<std::size_t>(k)];
                if (!h.is_zero()) CHECK(dp_weight(h) == e.m + n - k);
            }
            if (e.m % n == 0) {
                DiffOperator power = op_pow(formal_operator(n), static_cast<unsigned>(e.m / n), DiffPoly(1));
                CHECK(e.p == power);
            }
        }
    }
}

TEST_CASE("ansatz oracle agrees with the root construction") {
    CHECK(ansatz_oracle(2, 1).p == DiffOperator::monomial(DiffPoly(1), 1));
    for (int n = 2; n <= 4; ++n) {
        auto range = almost_commuting_range(n, 7);
        for (int m = 1; m <= 7; ++m) CHECK(ansatz_oracle(n, m) == range[static_cast<std::size_t>(m - 1)]);
    }
}

TEST_CASE("weight monomial enumeration") {
    // Weight 4 in u2, u3: u2^2, u2'', u3'.
    CHECK(weight_monomials(3, 4).size() == 3);
    CHECK(weight_monomials(2, 1).empty());
    for (const auto& m : weight_monomials(5, 9)) CHECK(monomial_weight(m) == 9);
}

TEST_CASE("index sets") {
    CHECK(full_index_set(3, 4) == std::vector<int>{1, 2, 4});
    CHECK(full_index_set(2, 3) == std::vector<int>{1, 3});
    HierarchyStore store;
    CHECK_THROWS_AS(store.gd_symbolic_system(3, 6), ContractError);
    auto sys = store.gd_symbolic_system(3, 4);
    CHECK(sys.size() == 3);
    CHECK(sys.at(1)->h[0] == -u(3, 1));
}

TEST_CASE("cache text round trip is bit exact") {
    for (const auto& e : almost_commuting_range(4, 6)) {
        std::string s = serialize(e);
        HierarchyEntry back = parse_entry(s);
        CHECK(back == e);
        CHECK(serialize(back) == s);
    }
    CHECK_THROWS_AS(parse_entry("gd-cache v2 n=3 m=2\n"), ParseError);
    CHECK_THROWS_AS(parse_entry("gd-cache v1 n=3 m=2\nP 2 1\nH 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_entry("gd-cache v1 n=3 m=2\nP 2 1\nH 0 0\nH 1 1 * w\n"), ParseError);
}

TEST_CASE("disk cache: write, reload, recover from corruption") {
    auto dir = fresh_dir("cache");
    {
        HierarchyStore store(dir);
        store.get(3, 5);
        CHECK(store.computed() == 5);
        CHECK(std::filesystem::exists(store.file_for(3, 5)));
        CHECK(std::filesystem::exists(store.file_for(3, 2)));
    }
    {
        HierarchyStore store(dir);
        const auto& e = store.get(3, 4);
        CHECK(store.disk_hits() == 1);
        CHECK(store.computed() == 0);
        CHECK(e == almost_commuting(3, 4));
    }
    {
        std::ofstream(dir / "gd-n3-m2.txt") << "garbage";
        HierarchyStore store(dir);
        CHECK(store.get(3, 2) == almost_commuting(3, 2));
        CHECK(store.computed() >= 1);
        CHECK(store.clear_disk() == 5);
    }
    std::filesystem::remove_all(dir);
}
