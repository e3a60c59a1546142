#pragma once

#include <random>

#include "odo/mpoly.hpp"

namespace odo::testing {

/// Random sparse polynomial in the variables selected by `mask`.
inline MPoly random_poly(std::mt19937& rng, unsigned mask, int max_terms, int max_deg) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<long> coef(-9, 9);
    std::uniform_int_distribution<long> den(1, 3);
    std::vector<Term> terms;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Term t;
        for (int v = 0; v < kMaxVars; ++v)
            if ((mask >> v) & 1u) t.mono.e[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(deg(rng));
        t.coef = Rational(coef(rng), den(rng));
        t.coef.canonicalize();
        terms.push_back(t);
    }
    return MPoly::from_terms(std::move(terms));
}

}  // namespace odo::testing
