#pragma once

#include <stdexcept>

#include "e2sieve/interval.hpp"
#include "e2sieve/rational.hpp"

namespace e2sieve {

// Exact element q0 + q1*log(1 - theta/2) + q2*log(2/theta - 1) of the rational
// span of {1, Lambda1, Lambda2}. theta is carried by the surrounding
// computation, not by the value.
//
// Products are only defined when at least one factor is purely rational; the
// sieve forms never multiply two logarithms together.
struct LogLinearScalar {
  BigRational q0;
  BigRational q1;
  BigRational q2;

  LogLinearScalar() = default;
  LogLinearScalar(BigRational rational) : q0(std::move(rational)) {}  // NOLINT: implicit lift
  LogLinearScalar(long value) : q0(value) {}                            // NOLINT
  LogLinearScalar(int value) : q0(value) {}                             // NOLINT
  LogLinearScalar(BigRational a, BigRational b, BigRational c)
      : q0(std::move(a)), q1(std::move(b)), q2(std::move(c)) {}

  bool is_rational() const { return q1 == 0 && q2 == 0; }

  LogLinearScalar operator-() const { return {-q0, -q1, -q2}; }
  LogLinearScalar& operator+=(const LogLinearScalar& rhs) {
    q0 += rhs.q0;
    q1 += rhs.q1;
    q2 += rhs.q2;
    return *this;
  }
  LogLinearScalar& operator-=(const LogLinearScalar& rhs) {
    q0 -= rhs.q0;
    q1 -= rhs.q1;
    q2 -= rhs.q2;
    return *this;
  }
  LogLinearScalar& operator*=(const BigRational& s) {
    q0 *= s;
    q1 *= s;
    q2 *= s;
    return *this;
  }
  LogLinearScalar& operator*=(const LogLinearScalar& rhs);
  LogLinearScalar& operator/=(const LogLinearScalar& rhs);  // rhs must be rational

  /// Coefficient-wise equality. Not value equality: at theta = 1 Lambda2 = 0.
  friend bool operator==(const LogLinearScalar&, const LogLinearScalar&) = default;

  friend LogLinearScalar operator+(LogLinearScalar a, const LogLinearScalar& b) { return a += b; }
  friend LogLinearScalar operator-(LogLinearScalar a, const LogLinearScalar& b) { return a -= b; }
  friend LogLinearScalar operator*(LogLinearScalar a, const BigRational& s) { return a *= s; }
  friend LogLinearScalar operator*(const BigRational& s, LogLinearScalar a) { return a *= s; }
  friend LogLinearScalar operator*(LogLinearScalar a, const LogLinearScalar& b) { return a *= b; }
  friend LogLinearScalar operator/(LogLinearScalar a, const LogLinearScalar& b) { return a /= b; }
};

/// Moves the rational part of r onto the Lambda2 axis: returns r*Lambda2.
LogLinearScalar times_lambda2(const BigRational& r);

/// Validates 0 < theta <= 1; throws std::domain_error otherwise.
void require_theta(const BigRational& theta);

/// H_n = 1 + 1/2 + ... + 1/n, H_0 = 0.
BigRational harmonic(unsigned n);

/// Exact integral of x^(m-1) (1-x)^n / (2/theta - x) over [0,1]:
/// q0 + q1*Lambda1 with q2 = 0. Requires m >= 1.
LogLinearScalar mu(long m, long n, const BigRational& theta);

/// lambda_n = (theta/2) (mu(1,n) - H_n + Lambda1), the regularized value of
/// the integral of ((1-x)^n - 1) / (x (2/theta - x)) over [0,1].
LogLinearScalar lambda_n(long n, const BigRational& theta);

/// Rigorous enclosure of 2F1(a,b;c;z) for positive integers with c > b and
/// 0 < z <= 1/2, from the Gauss series plus a geometric tail bound.
Interval hyp2f1_series(long a, long b, long c, const BigRational& z, mpfr_prec_t precision);

/// Enclosures of Lambda1 = log(1 - theta/2) and Lambda2 = log(2/theta - 1).
struct LogConstants {
  Interval lambda1;
  Interval lambda2;
};
LogConstants log_constants(const BigRational& theta, mpfr_prec_t precision);

Interval eval_interval(const LogLinearScalar& s, const BigRational& theta, mpfr_prec_t precision);
Interval eval_interval(const LogLinearScalar& s, const LogConstants& logs);

/// Sign of the value, decided by interval evaluation with precision doubled
/// from `precision` up to `max_precision`. Returns 0 when still undecided.
int certified_sign(const LogLinearScalar& s, const BigRational& theta, mpfr_prec_t precision,
                   mpfr_prec_t max_precision);

}  // namespace e2sieve
