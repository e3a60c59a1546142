#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace odo {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" with decimal digits.  The result is canonical.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is one, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Generalized binomial coefficient top*(top-1)*...*(top-k+1)/k!, valid for
/// negative tops.
Rational binomial(long top, unsigned k);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace odo
