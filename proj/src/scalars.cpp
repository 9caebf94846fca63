#include "e2sieve/scalars.hpp"

#include <vector>

namespace e2sieve {

LogLinearScalar& LogLinearScalar::operator*=(const LogLinearScalar& rhs) {
  if (rhs.is_rational()) return *this *= rhs.q0;
  if (!is_rational()) {
    throw std::domain_error("product of two log-bearing scalars is not log-linear");
  }
  const BigRational s = q0;
  *this = rhs;
  return *this *= s;
}

LogLinearScalar& LogLinearScalar::operator/=(const LogLinearScalar& rhs) {
  if (!rhs.is_rational() || rhs.q0 == 0) {
    throw std::domain_error("log-linear division requires a nonzero rational divisor");
  }
  const BigRational inv = 1 / rhs.q0;
  return *this *= inv;
}

LogLinearScalar times_lambda2(const BigRational& r) { return {0, 0, r}; }

void require_theta(const BigRational& theta) {
  if (theta <= 0 || theta > 1) {
    throw std::domain_error("theta must lie in (0, 1], got " + format_rational(theta));
  }
}

BigRational harmonic(unsigned n) {
  BigRational h = 0;
  for (unsigned j = 1; j <= n; ++j) h += ratio(1, j);
  return h;
}

LogLinearScalar mu(long m, long n, const BigRational& theta) {
  if (m < 1) throw std::domain_error("mu requires m >= 1");
  if (n < 0) throw std::domain_error("mu requires n >= 0");
  require_theta(theta);
  const BigRational c = 2 / theta;

  // p(x) = x^(m-1) (1-x)^n, coefficients indexed by power
  const long degree = m - 1 + n;
  std::vector<BigRational> p(static_cast<std::size_t>(degree + 1));
  for (long i = 0; i <= n; ++i) {
    BigRational coeff(binomial(n, i));
    if (i % 2 == 1) coeff = -coeff;
    p[static_cast<std::size_t>(m - 1 + i)] = coeff;
  }

  // p(x) - p(c) = (x - c) s(x); p(x)/(c - x) = -s(x) + p(c)/(c - x),
  // and the last term integrates to p(c) log(c/(c-1)) = -p(c) Lambda1.
  BigRational s_next = 0;  // s_i, walking i downward
  BigRational poly_integral = 0;
  for (long i = degree; i >= 1; --i) {
    // s_{i-1} = p_i + c s_i (with s_degree = 0)
    BigRational s = p[static_cast<std::size_t>(i)] + c * s_next;
    poly_integral += s / BigRational(i);  // coefficient of x^(i-1) integrates to 1/i
    s_next = std::move(s);
  }
  const BigRational p_at_c = p[0] + c * s_next;
  return {-poly_integral, -p_at_c, 0};
}

LogLinearScalar lambda_n(long n, const BigRational& theta) {
  if (n < 0) throw std::domain_error("lambda_n requires n >= 0");
  const LogLinearScalar m1 = mu(1, n, theta);
  const BigRational half_theta = theta / 2;
  return {half_theta * (m1.q0 - harmonic(static_cast<unsigned>(n))), half_theta * (m1.q1 + 1), 0};
}

Interval hyp2f1_series(long a, long b, long c, const BigRational& z, mpfr_prec_t precision) {
  if (a < 1 || b < 1 || c <= b) {
    throw std::domain_error("hyp2f1_series requires positive integers with c > b > 0");
  }
  if (z <= 0 || z > BigRational(1, 2)) throw std::domain_error("hyp2f1_series requires 0 < z <= 1/2");

  // For m >= N the term ratio z (a+m)(b+m) / ((c+m)(m+1)) is at most
  // rho_N = z (a+N)/(N+1), which decreases in N.
  const BigRational tolerance = ratio(1, BigInt(1) << static_cast<mp_bitcnt_t>(precision + 16));
  BigRational sum = 0;
  BigRational term = 1;
  for (long m = 0;; ++m) {
    const BigRational rho = z * ratio(a + m, m + 1);
    if (rho < 1) {
      const BigRational tail = term / (1 - rho);  // bounds sum_{j >= m} t_j
      if (tail <= tolerance * (sum + term)) {
        Interval lo = Interval::from_rational(sum + term, precision);
        Interval hi = Interval::from_rational(sum + tail, precision);
        return hull(lo, hi);
      }
    }
    sum += term;
    term *= z * ratio((a + m) * (b + m), (c + m) * (m + 1));
  }
}

LogConstants log_constants(const BigRational& theta, mpfr_prec_t precision) {
  require_theta(theta);
  return {log(Interval::from_rational(1 - theta / 2, precision)),
          log(Interval::from_rational(2 / theta - 1, precision))};
}

Interval eval_interval(const LogLinearScalar& s, const LogConstants& logs) {
  const mpfr_prec_t precision = logs.lambda1.precision();
  Interval r = Interval::from_rational(s.q0, precision);
  if (s.q1 != 0) r += Interval::from_rational(s.q1, precision) * logs.lambda1;
  if (s.q2 != 0) r += Interval::from_rational(s.q2, precision) * logs.lambda2;
  return r;
}

Interval eval_interval(const LogLinearScalar& s, const BigRational& theta, mpfr_prec_t precision) {
  return eval_interval(s, log_constants(theta, precision));
}

int certified_sign(const LogLinearScalar& s, const BigRational& theta, mpfr_prec_t precision,
                   mpfr_prec_t max_precision) {
  if (s.is_rational()) return sgn(s.q0);
  for (mpfr_prec_t p = precision; p <= max_precision; p *= 2) {
    const Interval v = eval_interval(s, theta, p);
    if (v.positive()) return 1;
    if (v.negative()) return -1;
  }
  return 0;
}

}  // namespace e2sieve
