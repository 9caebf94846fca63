#pragma once

#include <compare>
#include <vector>

#include "e2sieve/rational.hpp"

namespace e2sieve {

// One monomial (1 - P1)^b * P2^c of the symmetric polynomial family, where
// P1, P2 are the first and second power sums.
struct BasisTerm {
  int b = 0;
  int c = 0;

  int degree() const { return b + 2 * c; }
  friend auto operator<=>(const BasisTerm&, const BasisTerm&) = default;
};

// P = sum_i coeffs[i] * (1 - P1)^terms[i].b * P2^terms[i].c
struct SymmetricPolynomialSpec {
  std::vector<BasisTerm> terms;
  std::vector<BigRational> coeffs;

  /// Throws std::invalid_argument on length mismatch, negative exponents or
  /// repeated terms.
  void validate() const;
};

// Q_c(x) = c! sum_{r=1}^{c} binom(x, r) sum_{c_1+...+c_r = c} prod (2c_i)!/c_i!
struct QPolynomial {
  int c = 0;
  std::vector<BigInt> coefficients;  // coefficient of x^r, r = 0..c

  BigInt operator()(long x) const;
};

/// Q_c with exact integer coefficients. Cached process-wide.
const QPolynomial& q_polynomial(int c);

/// Q_c(k), exact.
BigRational q_eval(int c, long k);

/// First m exponent pairs in degree-major order (degree b + 2c ascending),
/// b descending within a degree.
std::vector<BasisTerm> basis_sequence(int m);

}  // namespace e2sieve
