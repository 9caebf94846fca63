#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "e2sieve/forms.hpp"
#include "e2sieve/numeric.hpp"

namespace e2sieve {

class OptimizerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Real>
struct RayleighMaximum {
  DenseVector<Real> vector;
  Real ratio;  // (2/theta) a^T A_Jtilde a / a^T A_I a at `vector`
  int iterations = 0;
};

// Maximizes (2/theta) a^T A_Jtilde a / a^T A_I a. With N = (theta/2) A_I =
// L L^T, the maximizer is L^-T y for the top eigenvector y of
// L^-1 A_Jtilde L^-T; shifted inverse iteration then polishes it until the
// quotient is stationary to relative 10^-digits.
template <class Real>
RayleighMaximum<Real> max_rayleigh(const DenseMatrix<Real>& a_i, const DenseMatrix<Real>& a_jtilde,
                                   const Real& theta, int digits, int max_iterations = 50) {
  using std::abs;
  using std::pow;
  if (a_i.rows() != a_i.cols() || a_jtilde.rows() != a_i.rows() || a_jtilde.cols() != a_i.cols()) {
    throw std::invalid_argument("max_rayleigh: matrix shapes differ");
  }
  const DenseMatrix<Real> n_form = a_i * (theta / Real(2));
  Eigen::LLT<DenseMatrix<Real>> llt(n_form);
  if (llt.info() != Eigen::Success) {
    throw OptimizerError("Cholesky factorization failed: A_I is not positive definite");
  }
  const auto lower = llt.matrixL();
  DenseMatrix<Real> whitened = lower.solve(a_jtilde);
  whitened = lower.solve(whitened.transpose()).transpose();
  whitened = (whitened + whitened.transpose()) / Real(2);

  Eigen::SelfAdjointEigenSolver<DenseMatrix<Real>> eig(whitened);
  if (eig.info() != Eigen::Success) throw OptimizerError("symmetric eigensolver did not converge");
  const Eigen::Index top = whitened.rows() - 1;  // eigenvalues ascend
  DenseVector<Real> x = lower.transpose().solve(DenseVector<Real>(eig.eigenvectors().col(top)));

  auto quotient = [&](const DenseVector<Real>& v) -> Real {
    return Real(v.dot(a_jtilde * v)) / Real(v.dot(n_form * v));
  };
  auto normalize = [](DenseVector<Real>& v) {
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    v /= v(arg);
  };

  normalize(x);
  Real r = quotient(x);
  const Real tolerance = pow(Real(10), -digits);
  for (int it = 1; it <= max_iterations; ++it) {
    // shift slightly above the estimate so the solve stays nonsingular
    const Real shift = r * (Real(1) + pow(Real(10), -(digits / 2 + 1)));
    Eigen::PartialPivLU<DenseMatrix<Real>> lu(a_jtilde - n_form * shift);
    DenseVector<Real> next = lu.solve(DenseVector<Real>(n_form * x));
    normalize(next);
    const Real r_next = quotient(next);
    const bool stationary = abs(r_next - r) <= tolerance * abs(r_next);
    if (r_next >= r) {
      x = std::move(next);
      r = r_next;
    }
    if (stationary) return {std::move(x), r, it};
  }
  throw OptimizerError("Rayleigh quotient refinement did not converge");
}

/// Floating midpoints of a form's entries, each enclosed to relative width
/// 2^-bits before rounding (precision is escalated past cancellation).
template <class Real>
DenseMatrix<Real> to_real_matrix(const QuadraticForm& form, const BigRational& theta, mpfr_prec_t bits);

/// Convenience wrapper: MPFR reals at `digits` significant decimal digits.
RayleighMaximum<MpReal> max_rayleigh(const QuadraticForm& a_i, const QuadraticForm& a_jtilde,
                                     const BigRational& theta, int digits = 40);

/// Last continued-fraction convergent of x with denominator <= bound.
BigRational best_convergent(const BigRational& x, const BigInt& bound);

/// Scales v so its largest-magnitude coordinate is +-1, then replaces each
/// coordinate by best_convergent(., bound). Throws on a zero vector.
std::vector<BigRational> rationalize(std::span<const BigRational> v, const BigInt& bound);

template <class Real>
std::vector<BigRational> rationalize(const DenseVector<Real>& v, const BigInt& bound) {
  std::vector<BigRational> exact;
  exact.reserve(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) exact.push_back(to_rational(v(i)));
  return rationalize(std::span<const BigRational>(exact), bound);
}

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);

struct CertifyOptions {
  mpfr_prec_t start_precision = 256;
  mpfr_prec_t max_precision = 1024;
};

// Exact proof object for R_k(F) > nu: D = a^T A_Jtilde a - nu (theta/2) a^T A_I a
// is exact; only its enclosure depends on precision.
struct Certificate {
  SieveConfig config;
  std::vector<BasisTerm> terms;
  std::vector<BigRational> a;
  LogLinearScalar D;
  Interval D_enclosure;
  Interval ratio;
  Verdict verdict = Verdict::inconclusive;
  mpfr_prec_t precision_bits = 0;

  std::string D_lower(int digits = 30) const { return D_enclosure.lower_string(digits); }
};

Certificate certify(const SieveConfig& config, std::span<const BasisTerm> terms,
                    std::span<const BigRational> a, const SieveForms& forms,
                    const CertifyOptions& options = {});
Certificate certify(const SieveConfig& config, std::span<const BasisTerm> terms,
                    std::span<const BigRational> a, const CertifyOptions& options = {});

struct OptimizeOptions {
  int digits = 40;
  BigInt denominator_bound = BigInt("1000000000000000000000");  // 10^21
  BigInt max_denominator_bound = BigInt("1" + std::string(60, '0'));
  CertifyOptions certify;
};

struct OptimizedCertificate {
  Certificate certificate;
  double ratio_estimate = 0;
  BigInt denominator_bound;
};

/// max_rayleigh -> rationalize -> certify; the denominator bound is raised
/// by 10^3 after each non-passing attempt up to max_denominator_bound.
OptimizedCertificate optimize_and_certify(const SieveConfig& config, const SieveForms& forms,
                                          const OptimizeOptions& options = {});

}  // namespace e2sieve
