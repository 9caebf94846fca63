#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace e2sieve {

using BigInt = mpz_class;

// Canonical (gcd-reduced, positive denominator) exact rational. Every
// arithmetic operator of mpq_class returns canonical values; only
// hand-built values need canonicalize().
using BigRational = mpq_class;

/// Canonical p/q. (mpq_class's two-argument constructor does not reduce.)
inline BigRational ratio(const BigInt& p, const BigInt& q) {
  BigRational r(p, q);
  r.canonicalize();
  return r;
}

/// Parses "p/q", "p", or "-p/q" (decimal). Throws std::invalid_argument on
/// malformed input or a zero denominator. The result is canonical.
BigRational parse_rational(std::string_view text);

/// Decimal "p/q" form; integers are written without the "/1".
std::string format_rational(const BigRational& value);

/// True when numerator and denominator are coprime and the denominator is
/// positive.
bool is_canonical(const BigRational& value);

// Memoized n! (process-wide, thread-safe).
const BigInt& factorial(unsigned n);

BigInt binomial(long n, long k);

inline int sign_of_power(long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

}  // namespace e2sieve
