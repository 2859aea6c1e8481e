#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace semispread {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "num/den" or "num" (optional leading '-'); result is canonicalized.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Lossless "num/den" form; integers still carry "/1".
std::string to_string(const Rational& q);

/// Decimal rendering with `digits` significant digits, scientific notation
/// once the exponent leaves [-4, 15). Meant for CSV, never for round-trips.
std::string to_decimal(const Rational& q, int digits = 12);

/// floor(log2 |q|) up to +-1; used only to pick split points.
long approx_log2(const Rational& q);

/// Smallest integer >= q.
Integer ceil(const Rational& q);

/// Exact square root when both numerator and denominator are perfect
/// squares; returns false otherwise.
bool exact_sqrt(const Rational& q, Rational& root);

/// num/den in canonical form. Prefer this to the two-argument constructor,
/// which leaves common factors in place.
inline Rational fraction(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace semispread
