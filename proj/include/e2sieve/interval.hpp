#pragma once

#include <mpfr.h>

#include <string>

#include "e2sieve/rational.hpp"

namespace e2sieve {

// Closed interval [lower, upper] with MPFR endpoints. Every operation rounds
// the lower endpoint toward -inf and the upper toward +inf, so a true value
// enclosed by the operands is enclosed by the result.
class Interval {
 public:
  Interval() : Interval(256) {}
  explicit Interval(mpfr_prec_t precision);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval from_rational(const BigRational& q, mpfr_prec_t precision);
  static Interval from_bounds(double lower, double upper, mpfr_prec_t precision);

  mpfr_prec_t precision() const { return precision_; }

  /// Outward-rounded endpoints as doubles.
  double lower() const;
  double upper() const;
  /// Midpoint rounded to nearest, as double.
  double mid() const;
  double width() const;

  /// Endpoints as decimal strings, rounded outward.
  std::string lower_string(int digits) const;
  std::string upper_string(int digits) const;

  bool contains(double x) const;
  bool contains(const BigRational& q) const;
  bool overlaps(const Interval& other) const;
  /// upper - lower <= 2^-bits * min(|lower|, |upper|); false if 0 is inside
  /// a nondegenerate interval.
  bool tight(mpfr_prec_t bits) const;
  bool positive() const;  // lower > 0
  bool negative() const;  // upper < 0

  const __mpfr_struct* lower_ptr() const { return lo_; }
  const __mpfr_struct* upper_ptr() const { return hi_; }

  Interval operator-() const;
  Interval& operator+=(const Interval& rhs);
  Interval& operator-=(const Interval& rhs);
  Interval& operator*=(const Interval& rhs);
  Interval& operator/=(const Interval& rhs);  // throws std::domain_error if rhs contains 0

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }

  /// Natural log; throws std::domain_error unless lower > 0.
  friend Interval log(const Interval& x);

  /// Smallest interval containing both.
  friend Interval hull(const Interval& a, const Interval& b);

 private:
  mpfr_prec_t precision_;
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace e2sieve
