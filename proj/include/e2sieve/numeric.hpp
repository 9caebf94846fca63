#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <Eigen/Core>

#include <limits>

#include "e2sieve/interval.hpp"
#include "e2sieve/rational.hpp"

namespace e2sieve {

// Variable-precision MPFR real used on the floating side of the optimizer.
// Precision (decimal digits) comes from boost's default precision, which
// callers set through DigitsScope.
using MpReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                             boost::multiprecision::et_off>;

// Sets MpReal's default precision (decimal digits) for the current scope.
class DigitsScope {
 public:
  explicit DigitsScope(unsigned digits) : saved_(MpReal::default_precision()) { MpReal::default_precision(digits); }
  ~DigitsScope() { MpReal::default_precision(saved_); }
  DigitsScope(const DigitsScope&) = delete;
  DigitsScope& operator=(const DigitsScope&) = delete;

 private:
  unsigned saved_;
};

/// Exact value of a finite floating number.
BigRational to_rational(double x);
BigRational to_rational(const MpReal& x);

template <class Real>
Real interval_midpoint(const Interval& x);

template <>
double interval_midpoint<double>(const Interval& x);
template <>
MpReal interval_midpoint<MpReal>(const Interval& x);

}  // namespace e2sieve

namespace Eigen {

template <>
struct NumTraits<e2sieve::MpReal> : GenericNumTraits<e2sieve::MpReal> {
  using Real = e2sieve::MpReal;
  using NonInteger = e2sieve::MpReal;
  using Literal = e2sieve::MpReal;
  using Nested = e2sieve::MpReal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 10,
    MulCost = 40
  };
  static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static Real dummy_precision() { return epsilon() * 1024; }
  static Real highest() { return (std::numeric_limits<Real>::max)(); }
  static Real lowest() { return std::numeric_limits<Real>::lowest(); }
  static Real infinity() { return std::numeric_limits<Real>::infinity(); }
  static Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
  static int digits10() { return static_cast<int>(Real::default_precision()); }
};

}  // namespace Eigen
