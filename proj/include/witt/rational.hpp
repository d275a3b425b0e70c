#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace witt {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "n" or "n/d" (optional sign, decimal digits only).  Throws
/// Error(SchemaViolation) on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// num / den in lowest terms; den must be nonzero.
inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

int sign(const Rational& x);

/// Exact square root of a nonnegative rational, if it is a square.
std::optional<Rational> rational_sqrt(const Rational& x);

bool is_rational_square(const Rational& x);

Rational rational_abs(const Rational& x);

}  // namespace witt
