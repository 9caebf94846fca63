#pragma once

#include <Eigen/Core>

#include <span>
#include <vector>

#include "e2sieve/basis.hpp"
#include "e2sieve/interval.hpp"
#include "e2sieve/scalars.hpp"

namespace Eigen {

template <>
struct NumTraits<e2sieve::LogLinearScalar> : GenericNumTraits<e2sieve::LogLinearScalar> {
  using Real = e2sieve::LogLinearScalar;
  using NonInteger = e2sieve::LogLinearScalar;
  using Literal = e2sieve::LogLinearScalar;
  using Nested = e2sieve::LogLinearScalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 3,
    AddCost = 30,
    MulCost = 60
  };
};

template <>
struct NumTraits<e2sieve::BigRational> : GenericNumTraits<e2sieve::BigRational> {
  using Real = e2sieve::BigRational;
  using NonInteger = e2sieve::BigRational;
  using Literal = e2sieve::BigRational;
  using Nested = e2sieve::BigRational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 10,
    MulCost = 20
  };
};

}  // namespace Eigen

namespace e2sieve {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Symmetric matrix of a quadratic form a^T A a in the basis coefficients.
using QuadraticForm = DenseMatrix<LogLinearScalar>;

struct SieveConfig {
  int k = 2;                 // tuple size, also the number of integration variables
  BigRational theta = 1;     // level of distribution, in (0, 1]
  int nu = 1;                // certify R_k > nu
  int nterms = 1;            // basis prefix length

  /// Throws std::invalid_argument (or std::domain_error for theta).
  void validate() const;
};

QuadraticForm build_I(int k, std::span<const BasisTerm> terms);
QuadraticForm build_J(int k, std::span<const BasisTerm> terms);
QuadraticForm build_Ltilde(int k, const BigRational& theta, std::span<const BasisTerm> terms);
QuadraticForm build_Mtilde(int k, const BigRational& theta, std::span<const BasisTerm> terms);
QuadraticForm build_Jtilde(int k, const BigRational& theta, std::span<const BasisTerm> terms);

/// -theta k A_L + (theta^2/4) Lambda2 k A_J + k A_M.
QuadraticForm combine_Jtilde(int k, const BigRational& theta, const QuadraticForm& a_ltilde,
                             const QuadraticForm& a_j, const QuadraticForm& a_mtilde);

// Raw coefficient arrays f(i, j) of a_i a_j before symmetrization. The
// L and M tilde expressions are not symmetric in (i, j).
struct RawTildeForms {
  QuadraticForm ltilde;
  QuadraticForm mtilde;
};
RawTildeForms build_raw_tilde(int k, const BigRational& theta, std::span<const BasisTerm> terms);

QuadraticForm symmetrize(const QuadraticForm& raw);
bool is_symmetric(const QuadraticForm& form);

struct SieveForms {
  QuadraticForm I;
  QuadraticForm J;
  QuadraticForm Ltilde;
  QuadraticForm Mtilde;
  QuadraticForm Jtilde;
};

/// All five forms for config.k, config.theta and the given basis.
SieveForms build_forms(const SieveConfig& config, std::span<const BasisTerm> terms);

/// Exact a^T A a.
LogLinearScalar quadratic_value(const QuadraticForm& form, std::span<const BigRational> a);

/// Rational part of a form whose entries carry no logarithms; throws
/// std::domain_error otherwise.
DenseMatrix<BigRational> rational_matrix(const QuadraticForm& form);

/// det of each leading k x k block, k = 1..n, computed exactly.
std::vector<BigRational> leading_principal_minors(const DenseMatrix<BigRational>& m);

struct RatioEvaluation {
  LogLinearScalar numerator;  // a^T A_Jtilde a
  BigRational denominator;    // (theta/2) a^T A_I a
  Interval ratio;             // enclosure of numerator / denominator
};

/// Throws std::invalid_argument for a zero or wrongly sized vector and
/// std::logic_error if the denominator is not positive.
RatioEvaluation evaluate_ratio(std::span<const BigRational> a, const SieveConfig& config,
                               const SieveForms& forms, mpfr_prec_t precision = 256);

}  // namespace e2sieve
