#include "e2sieve/oracle.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

#include "e2sieve/forms.hpp"
#include "e2sieve/numeric.hpp"
#include "e2sieve/scalars.hpp"

namespace e2sieve::oracle {

namespace {

// Quadrature rule on [0, 1].
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

const Rule& gauss_rule(int n) {
  static std::mutex mutex;
  static std::map<int, Rule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Rule r;
  for (double z : boost::math::legendre_p_zeros<double>(n)) {
    const double dp = boost::math::legendre_p_prime(n, z);
    const double w = 1.0 / ((1.0 - z * z) * dp * dp);  // half of the [-1,1] weight
    r.x.push_back((1.0 + z) / 2);
    r.w.push_back(w);
    if (z != 0.0) {
      r.x.push_back((1.0 - z) / 2);
      r.w.push_back(w);
    }
  }
  return cache.emplace(n, std::move(r)).first->second;
}

Rule midpoint_rule(int panels) {
  Rule r;
  for (int j = 0; j < panels; ++j) {
    r.x.push_back((j + 0.5) / panels);
    r.w.push_back(1.0 / panels);
  }
  return r;
}

// Iterated product rule over {y in R^d : y >= 0, sum y <= radius}.
double simplex_rule(int d, double radius, const Rule& rule, const std::function<double(const std::vector<double>&)>& f) {
  std::vector<double> y(static_cast<std::size_t>(d));
  std::function<double(int, double)> level = [&](int i, double rest) -> double {
    if (i == d) return f(y);
    double sum = 0;
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
      y[i] = rest * rule.x[q];
      sum += rule.w[q] * rest * level(i + 1, rest - y[i]);
    }
    return sum;
  };
  return level(0, radius);
}

// Uniform point of the radius-r simplex in R^d: first d of d+1 normalized
// exponential deviates.
void simplex_sample(std::mt19937_64& rng, double radius, std::vector<double>& y) {
  std::exponential_distribution<double> exp1(1.0);
  double total = exp1(rng);
  for (double& v : y) {
    v = exp1(rng);
    total += v;
  }
  for (double& v : y) v *= radius / total;
}

double inv_factorial(int d) {
  double r = 1;
  for (int i = 2; i <= d; ++i) r /= i;
  return r;
}

struct Poly {
  std::vector<BasisTerm> terms;
  std::vector<double> a;
  int degree = 0;

  explicit Poly(const SymmetricPolynomialSpec& spec) : terms(spec.terms) {
    spec.validate();
    for (std::size_t i = 0; i < spec.terms.size(); ++i) {
      a.push_back(spec.coeffs[i].get_d());
      degree = std::max(degree, spec.terms[i].degree());
    }
  }

  double operator()(double p1, double p2) const {
    double v = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      v += a[i] * std::pow(1.0 - p1, terms[i].b) * std::pow(p2, terms[i].c);
    }
    return v;
  }

  // integral over x1 in [0, 1] of F(x0 + (1 - x0) x1, x') where s = sum x',
  // q = sum x'^2 and F vanishes off the simplex. x0 = 0 gives int F dx1.
  double slice(double s, double q, double x0) const {
    if (x0 >= 1) return 0;
    const double top = (1.0 - s - x0) / (1.0 - x0);
    if (top <= 0) return 0;
    const Rule& r = gauss_rule(degree / 2 + 2);
    double v = 0;
    for (std::size_t j = 0; j < r.x.size(); ++j) {
      const double u = x0 + (1.0 - x0) * top * r.x[j];
      v += r.w[j] * (*this)(u + s, u * u + q);
    }
    return v * top;
  }
};

void sums(const std::vector<double>& y, double& s, double& q) {
  s = 0;
  q = 0;
  for (double v : y) {
    s += v;
    q += v * v;
  }
}

double lemma_integrand(const std::vector<double>& y, int b, int c, LemmaMode mode) {
  double s, q;
  sums(y, s, q);
  const double base = (mode == LemmaMode::p1_complement) ? 1.0 - s : s;
  return std::pow(base, b) * std::pow(q, c);
}

void check_lemma_caps(int b, int c, int k) {
  if (k < 1 || k > 4) throw std::invalid_argument("simplex_integral: k must be in [1, 4]");
  if (b < 0 || b > 3) throw std::invalid_argument("simplex_integral: b must be in [0, 3]");
  if (c < 0 || c > 2) throw std::invalid_argument("simplex_integral: c must be in [0, 2]");
}

// Rule error estimate: difference between two exact-enough Gauss orders plus
// accumulated rounding.
QuadratureResult compare_orders(int n, const std::function<double(const Rule&)>& run) {
  const double lo = run(gauss_rule(n));
  const double hi = run(gauss_rule(n + 3));
  return {hi, std::abs(hi - lo) + 1e-14 * std::abs(hi), n + 3, std::nullopt};
}

// Composite Gauss-Legendre at MpReal's current precision; nodes by Newton's
// method on the three-term recurrence.
class MpGauss {
 public:
  explicit MpGauss(int n) {
    using boost::multiprecision::abs;
    using boost::multiprecision::cos;
    const MpReal pi = boost::math::constants::pi<MpReal>();
    const MpReal eps = std::numeric_limits<MpReal>::epsilon() * 16;
    for (int i = 1; i <= n; ++i) {
      MpReal z = cos(pi * (i - MpReal(0.25)) / (n + MpReal(0.5)));
      MpReal dp;
      for (int it = 0; it < 100; ++it) {
        MpReal p0 = 1, p1 = z;
        for (int j = 2; j <= n; ++j) {
          MpReal p2 = ((2 * j - 1) * z * p1 - (j - 1) * p0) / j;
          p0 = std::move(p1);
          p1 = std::move(p2);
        }
        dp = n * (z * p1 - p0) / (z * z - 1);
        const MpReal step = p1 / dp;
        z -= step;
        if (abs(step) <= eps) break;
      }
      x_.push_back(z);
      w_.push_back(2 / ((1 - z * z) * dp * dp));
    }
  }

  // Panels no longer than max_panel keep nearby complex poles harmless.
  template <class F>
  MpReal integrate(F&& f, const MpReal& a, const MpReal& b, double max_panel = 0.5) const {
    using boost::multiprecision::ceil;
    const long panels = std::max(1L, ceil(abs(b - a) / max_panel).convert_to<long>());
    const MpReal h = (b - a) / panels;
    MpReal sum = 0;
    for (long p = 0; p < panels; ++p) {
      const MpReal mid = a + h * (p + MpReal(0.5));
      for (std::size_t i = 0; i < x_.size(); ++i) sum += w_[i] * f(mid + h / 2 * x_[i]);
    }
    return sum * h / 2;
  }

 private:
  std::vector<MpReal> x_;
  std::vector<MpReal> w_;
};

double theta_value(const BigRational& theta) {
  require_theta(theta);
  return theta.get_d();
}

}  // namespace

BigRational lemma_value(int b, int c, int k, LemmaMode mode) {
  if (b < 0 || c < 0 || k < 1) throw std::invalid_argument("lemma_value: bad arguments");
  const BigRational q = q_eval(c, k);
  if (mode == LemmaMode::p1_complement) {
    return BigRational(factorial(static_cast<unsigned>(b))) * q /
           BigRational(factorial(static_cast<unsigned>(k + 2 * c + b)));
  }
  return q / BigRational(factorial(static_cast<unsigned>(k + 2 * c - 1)) * (k + 2 * c + b));
}

QuadratureResult simplex_integral(int b, int c, int k, LemmaMode mode) {
  check_lemma_caps(b, c, k);
  auto f = [&](const std::vector<double>& y) { return lemma_integrand(y, b, c, mode); };
  return compare_orders((b + 2 * c + k) / 2 + 2, [&](const Rule& r) { return simplex_rule(k, 1.0, r, f); });
}

QuadratureResult simplex_integral_composite(int b, int c, int k, LemmaMode mode, int panels) {
  check_lemma_caps(b, c, k);
  if (panels < 1) throw std::invalid_argument("simplex_integral_composite: panels must be positive");
  auto f = [&](const std::vector<double>& y) { return lemma_integrand(y, b, c, mode); };
  const double coarse = simplex_rule(k, 1.0, midpoint_rule(panels), f);
  const double fine = simplex_rule(k, 1.0, midpoint_rule(2 * panels), f);
  // Richardson bound for an O(h^2) rule
  return {coarse, std::abs(coarse - fine) * 4.0 / 3.0, panels, std::nullopt};
}

QuadratureResult integral_IJ_direct(const SymmetricPolynomialSpec& spec, int k, IJ which, long samples,
                                    std::uint64_t seed) {
  const Poly p(spec);
  if (k < (which == IJ::J ? 2 : 1)) throw std::invalid_argument("integral_IJ_direct: k too small");
  if (samples < 0) throw std::invalid_argument("integral_IJ_direct: negative sample count");
  if (samples == 0 && k > 4) throw std::invalid_argument("integral_IJ_direct: deterministic rule needs k <= 4");
  if (samples > 0 && k > 10) throw std::invalid_argument("integral_IJ_direct: Monte Carlo needs k <= 10");

  const int dim = (which == IJ::I) ? k : k - 1;
  auto f = [&](const std::vector<double>& y) {
    double s, q;
    sums(y, s, q);
    const double v = (which == IJ::I) ? p(s, q) : p.slice(s, q, 0.0);
    return v * v;
  };

  if (samples == 0) {
    return compare_orders(p.degree + k / 2 + 3, [&](const Rule& r) { return simplex_rule(dim, 1.0, r, f); });
  }
  std::mt19937_64 rng(seed);
  std::vector<double> y(static_cast<std::size_t>(dim));
  double sum = 0, sum_sq = 0;
  for (long i = 0; i < samples; ++i) {
    simplex_sample(rng, 1.0, y);
    const double v = f(y);
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  const double vol = inv_factorial(dim);
  return {mean * vol, std::sqrt(var / n) * vol, samples, seed};
}

QuadratureResult integral_LM_eta(const SymmetricPolynomialSpec& spec, int k, const BigRational& theta,
                                 double eta, LM which, long samples, std::uint64_t seed) {
  const Poly p(spec);
  const double th = theta_value(theta);
  if (!(eta > 0 && eta < th / 2)) throw std::invalid_argument("integral_LM_eta: need 0 < eta < theta/2");
  if (k < 2 || k > 4) throw std::invalid_argument("integral_LM_eta: k must be in [2, 4]");
  if (samples < 0) throw std::invalid_argument("integral_LM_eta: negative sample count");

  const int dim = k - 1;
  const int power = (which == LM::L) ? 1 : 2;
  std::mt19937_64 rng(seed);

  auto inner = [&](double x0) {
    auto f = [&](const std::vector<double>& y) {
      double s, q;
      sums(y, s, q);
      const double stretched = p.slice(s, q, x0);
      return (which == LM::L) ? stretched * p.slice(s, q, 0.0) : stretched * stretched;
    };
    const double radius = 1.0 - x0;
    if (samples == 0) return simplex_rule(dim, radius, gauss_rule(p.degree + k / 2 + 3), f);
    std::vector<double> y(static_cast<std::size_t>(dim));
    double sum = 0;
    for (long i = 0; i < samples; ++i) {
      simplex_sample(rng, radius, y);
      sum += f(y);
    }
    return sum / static_cast<double>(samples) * std::pow(radius, dim) * inv_factorial(dim);
  };

  // xi = eta e^t absorbs the 1/xi factor of the weight
  auto outer = [&](double t) {
    const double xi = eta * std::exp(t);
    return std::pow(th / 2 - xi, power) / (1.0 - xi) * inner(2 * xi / th);
  };
  const double top = std::log(th / (2 * eta));
  double error = 0;
  const unsigned depth = (samples == 0) ? 12 : 0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(outer, 0.0, top, depth, 1e-11, &error);
  return {value, error, static_cast<long>(depth), samples > 0 ? std::optional<std::uint64_t>(seed) : std::nullopt};
}

double log_divergence(const BigRational& theta, double eta) {
  const double th = theta_value(theta);
  return th / 2 * std::log((1 - eta) / (eta * (2 / th - 1)));
}

Extrapolation extrapolate_tilde(const SymmetricPolynomialSpec& spec, int k, const BigRational& theta, LM which,
                                const std::vector<double>& etas) {
  if (etas.size() < 2) throw std::invalid_argument("extrapolate_tilde: need at least two eta values");
  const double th = theta_value(theta);
  const double j = integral_IJ_direct(spec, k, IJ::J).estimate;
  Extrapolation out;
  out.etas = etas;
  for (double eta : etas) {
    const double scale = (which == LM::L) ? 1.0 : th / 2;
    out.regularized.push_back(integral_LM_eta(spec, k, theta, eta, which).estimate -
                              scale * log_divergence(theta, eta) * j);
  }
  const std::size_t n = etas.size();
  out.cauchy = true;
  for (std::size_t i = 2; i < n; ++i) {
    if (std::abs(out.regularized[i] - out.regularized[i - 1]) >= std::abs(out.regularized[i - 1] - out.regularized[i - 2])) {
      out.cauchy = false;
    }
  }
  const double e1 = etas[n - 2], e2 = etas[n - 1];
  out.limit = (e1 * out.regularized[n - 1] - e2 * out.regularized[n - 2]) / (e1 - e2);
  return out;
}

std::vector<Check> verify_x0_integrals(long m, long n, const BigRational& theta, double eta, int precision_bits) {
  require_theta(theta);
  if (m < 1 || n < 0) throw std::invalid_argument("verify_x0_integrals: need m >= 1 and n >= 0");
  if (!(eta > 0 && eta < theta.get_d() / 2)) throw std::invalid_argument("verify_x0_integrals: need 0 < eta < theta/2");
  if (precision_bits < 53) throw std::invalid_argument("verify_x0_integrals: precision below 53 bits");

  using boost::multiprecision::log;
  using boost::multiprecision::pow;
  const int digits = static_cast<int>(precision_bits * 0.30103) + 1;
  DigitsScope scope(static_cast<unsigned>(digits));
  const auto bits = static_cast<mpfr_prec_t>(precision_bits);

  const MpReal th = interval_midpoint<MpReal>(Interval::from_rational(theta, bits));
  const MpReal c = MpReal(2) / th;
  const MpReal x0 = MpReal(2) * MpReal(eta) / th;
  const MpReal tol_quad = pow(MpReal(2), -(precision_bits - 16));
  const MpGauss quad(precision_bits / 4 + 20);

  auto mu_integrand = [&](const MpReal& x) { return pow(x, m - 1) * pow(1 - x, n) / (c - x); };
  // ((1-x)^n - 1)/x = -sum_{j<n} (1-x)^j, free of cancellation at 0
  auto lambda_integrand = [&](const MpReal& x) {
    MpReal s = 0, term = 1;
    for (long j = 0; j < n; ++j) {
      s += term;
      term *= 1 - x;
    }
    return -s / (c - x);
  };

  const MpReal mu_exact = interval_midpoint<MpReal>(eval_interval(mu(m, n, theta), theta, bits + 32));
  const MpReal lambda_exact = interval_midpoint<MpReal>(eval_interval(lambda_n(n, theta), theta, bits + 32));
  const BigRational z = theta / 2;
  const MpReal half_theta = th / 2;
  const MpReal mu_series =
      half_theta * interval_midpoint<MpReal>(hyp2f1_series(1, m, m + n + 1, z, bits + 32)) /
      MpReal(m * binomial(m + n, m).get_d());
  const MpReal lambda_series =
      half_theta * (half_theta * interval_midpoint<MpReal>(hyp2f1_series(1, 1, n + 2, z, bits + 32)) / MpReal(n + 1) -
                    interval_midpoint<MpReal>(Interval::from_rational(harmonic(static_cast<unsigned>(n)), bits + 32)) +
                    log(1 - half_theta));

  std::vector<Check> out;
  auto add = [&](std::string name, const MpReal& est, const MpReal& target, const MpReal& tol) {
    Check ch;
    ch.name = std::move(name);
    ch.estimate = est.convert_to<double>();
    ch.target = target.convert_to<double>();
    const MpReal err = abs(est - target);
    ch.error = err.convert_to<double>();
    ch.tolerance = tol.convert_to<double>();
    ch.pass = err <= tol;
    out.push_back(std::move(ch));
  };
  auto rel = [](const MpReal& target, double r) { return MpReal(r) * (abs(target) + MpReal(1e-20)); };

  // (a) mu integral: tail over [0, x0] is at most x0^m / m since 2/theta - x > 1
  add("a_mu_eta", quad.integrate(mu_integrand, x0, MpReal(1)), mu_exact, pow(x0, m) / m + tol_quad);
  add("a_mu_limit", quad.integrate(mu_integrand, MpReal(0), MpReal(1)), mu_exact, rel(mu_exact, 1e-9));
  add("a_mu_2f1", mu_series, mu_exact, rel(mu_exact, 1e-9));

  // (b) exact log integral, with x = x0 e^t to flatten the 1/x endpoint
  const MpReal log_closed = half_theta * log((1 - MpReal(eta)) / (MpReal(eta) * (c - 1)));
  auto log_integrand = [&](const MpReal& t) {
    const MpReal x = x0 * exp(t);
    return 1 / (c - x);
  };
  add("b_log_eta", quad.integrate(log_integrand, MpReal(0), -log(x0)), log_closed, rel(log_closed, 1e-10));

  // (c) lambda integral: |integrand| <= n, so the [0, x0] tail is <= n x0
  add("c_lambda_eta", (n == 0) ? MpReal(0) : quad.integrate(lambda_integrand, x0, MpReal(1)), lambda_exact,
      MpReal(n) * x0 + tol_quad);
  add("c_lambda_limit", (n == 0) ? MpReal(0) : quad.integrate(lambda_integrand, MpReal(0), MpReal(1)), lambda_exact,
      rel(lambda_exact, 1e-9));
  add("c_lambda_2f1", lambda_series, lambda_exact, rel(lambda_exact, 1e-9));
  return out;
}

namespace {

Check make_check(std::string name, double estimate, double target, double tolerance) {
  const double error = std::abs(estimate - target);
  return {std::move(name), estimate, target, error, tolerance, error <= tolerance};
}

}  // namespace

std::vector<Check> verify_lemma(int max_b, int max_c, int max_k, double rel_tol) {
  std::vector<Check> out;
  for (int k = 1; k <= max_k; ++k) {
    for (int b = 0; b <= max_b; ++b) {
      for (int c = 0; c <= max_c; ++c) {
        for (LemmaMode mode : {LemmaMode::p1_complement, LemmaMode::p1_power}) {
          const double exact = lemma_value(b, c, k, mode).get_d();
          const QuadratureResult q = simplex_integral(b, c, k, mode);
          const std::string name = std::string(mode == LemmaMode::p1_complement ? "complement" : "power") +
                                   " b=" + std::to_string(b) + " c=" + std::to_string(c) + " k=" + std::to_string(k);
          out.push_back(make_check(name, q.estimate, exact, rel_tol * std::abs(exact)));
        }
      }
    }
  }
  return out;
}

std::vector<Check> verify_forms(int k, const BigRational& theta, BasisTerm term) {
  require_theta(theta);
  const std::vector<BasisTerm> terms{term};
  const SymmetricPolynomialSpec spec{terms, {BigRational(1)}};
  const std::string tag = " b=" + std::to_string(term.b) + " c=" + std::to_string(term.c) +
                          " k=" + std::to_string(k) + " theta=" + format_rational(theta);
  auto entry = [&](const QuadraticForm& f) { return eval_interval(f(0, 0), theta, 128).mid(); };

  std::vector<Check> out;
  const double i_exact = entry(build_I(k, terms));
  const double j_exact = entry(build_J(k, terms));
  out.push_back(make_check("I" + tag, integral_IJ_direct(spec, k, IJ::I).estimate, i_exact, 1e-6 * std::abs(i_exact)));
  out.push_back(make_check("J" + tag, integral_IJ_direct(spec, k, IJ::J).estimate, j_exact, 1e-6 * std::abs(j_exact)));

  const double l_exact = entry(build_Ltilde(k, theta, terms));
  const double m_exact = entry(build_Mtilde(k, theta, terms));
  const Extrapolation l = extrapolate_tilde(spec, k, theta, LM::L);
  const Extrapolation m = extrapolate_tilde(spec, k, theta, LM::M);
  out.push_back(make_check("Ltilde" + tag, l.limit, l_exact, 1e-3 * std::abs(l_exact)));
  out.push_back(make_check("Mtilde" + tag, m.limit, m_exact, 1e-3 * std::abs(m_exact)));
  return out;
}

bool verify_binomial_identity(long n, long m) {
  if (m <= 0 || m > n) throw std::invalid_argument("verify_binomial_identity: need 0 < m <= n");
  BigInt sum = 0;
  for (long j = m; j <= n; ++j) sum += sign_of_power(j) * binomial(n, j);
  return sum == sign_of_power(m) * binomial(n - 1, n - m);
}

}  // namespace e2sieve::oracle
