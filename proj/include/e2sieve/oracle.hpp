#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "e2sieve/basis.hpp"
#include "e2sieve/rational.hpp"

// Independent numerical checks of the integral identities behind the forms
// module. Everything here is floating point; nothing feeds a certificate.
namespace e2sieve::oracle {

struct QuadratureResult {
  double estimate = 0;
  double error_bound = 0;  // deterministic: rule-comparison bound; Monte Carlo: standard error
  long samples_or_depth = 0;
  std::optional<std::uint64_t> seed;
};

/// Integrand of the simplex lemma: (1 - P1)^b P2^c or P1^b P2^c.
enum class LemmaMode { p1_complement, p1_power };

/// Integral over R_k = {x >= 0, x_1 + ... + x_k <= 1} by iterated
/// Gauss-Legendre. Caps: 1 <= k <= 4, b <= 3, c <= 2 (std::invalid_argument).
QuadratureResult simplex_integral(int b, int c, int k, LemmaMode mode);

/// Same integral by the iterated composite midpoint rule with `panels` cells
/// per coordinate; error is O(panels^-2). Used for convergence checks.
QuadratureResult simplex_integral_composite(int b, int c, int k, LemmaMode mode, int panels);

/// Closed forms: b! Q_c(k) / (k+2c+b)! and Q_c(k) / ((k+2c-1)! (k+2c+b)).
BigRational lemma_value(int b, int c, int k, LemmaMode mode);

enum class IJ { I, J };

/// I_k(F) or J_k(F) for F = P restricted to R_k. samples == 0 selects
/// deterministic quadrature (k <= 4); otherwise Monte Carlo (k <= 10) seeded
/// by `seed`.
QuadratureResult integral_IJ_direct(const SymmetricPolynomialSpec& spec, int k, IJ which,
                                    long samples = 0, std::uint64_t seed = 1);

enum class LM { L, M };

/// L_k(F) or M_k(F) at finite eta, 0 < eta < theta/2, k <= 4. The xi integral
/// runs over t = log(xi/eta) with adaptive Gauss-Kronrod. samples > 0 replaces
/// the inner simplex rule by Monte Carlo.
QuadratureResult integral_LM_eta(const SymmetricPolynomialSpec& spec, int k, const BigRational& theta,
                                 double eta, LM which, long samples = 0, std::uint64_t seed = 1);

/// (theta/2) log((1-eta) / (eta (2/theta - 1))), the divergent part of L
/// per unit of J (M carries one more factor theta/2).
double log_divergence(const BigRational& theta, double eta);

struct Extrapolation {
  std::vector<double> etas;
  std::vector<double> regularized;  // L(eta) - div(eta) J, resp. M(eta) - (theta/2) div(eta) J
  double limit = 0;                  // Richardson extrapolation linear in eta
  bool cauchy = false;               // successive differences shrink
};

/// Regularized L or M along decreasing eta, with J from direct quadrature.
Extrapolation extrapolate_tilde(const SymmetricPolynomialSpec& spec, int k, const BigRational& theta, LM which,
                                const std::vector<double>& etas = {1e-2, 1e-3, 1e-4});

struct Check {
  std::string name;
  double estimate = 0;
  double target = 0;
  double error = 0;
  double tolerance = 0;
  bool pass = false;
};

/// The three x0 integrals at (m, n, theta, eta): the mu integral (a), the
/// exact log integral (b) and the regularized lambda integral (c), each
/// against its closed form, plus the eta = 0 limits and the 2F1 series
/// routes. Quadrature runs at `precision_bits`.
std::vector<Check> verify_x0_integrals(long m, long n, const BigRational& theta, double eta,
                                       int precision_bits = 128);

/// simplex_integral against lemma_value for every b <= max_b, c <= max_c,
/// 1 <= k <= max_k and both modes, at relative tolerance rel_tol.
std::vector<Check> verify_lemma(int max_b = 2, int max_c = 1, int max_k = 3, double rel_tol = 1e-6);

/// Single-term basis {term}: I and J by direct quadrature against the
/// formula entries (relative 1e-6), and eta-extrapolated L and M against the
/// tilde entries (relative 1e-3).
std::vector<Check> verify_forms(int k, const BigRational& theta, BasisTerm term);

/// sum_{j=m}^{n} (-1)^j binom(n, j) == (-1)^m binom(n-1, n-m), exactly.
/// Requires 0 < m <= n.
bool verify_binomial_identity(long n, long m);

}  // namespace e2sieve::oracle
