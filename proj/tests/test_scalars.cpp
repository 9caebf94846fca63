#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <random>

#include "e2sieve/scalars.hpp"

using namespace e2sieve;

namespace {

const BigRational kHalf = ratio(1, 2);

bool nested(const Interval& inner, const Interval& outer) {
  return mpfr_cmp(outer.lower_ptr(), inner.lower_ptr()) <= 0 && mpfr_cmp(inner.upper_ptr(), outer.upper_ptr()) <= 0;
}

double quad(const std::function<double(double)>& f) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-15);
}

// ((1-x)^n - 1) / (x (2/theta - x)), written without the removable 0/0
double lambda_integrand(long n, double theta, double x) {
  double s = 0, term = 1;
  for (long j = 0; j < n; ++j) {
    s += term;
    term *= 1 - x;
  }
  return -s / (2 / theta - x);
}

}  // namespace

TEST_CASE("harmonic numbers") {
  CHECK(harmonic(0) == 0);
  CHECK(harmonic(2) == ratio(3, 2));
  CHECK(harmonic(5) == ratio(137, 60));
}

TEST_CASE("mu closed forms") {
  CHECK(mu(1, 0, 1) == LogLinearScalar(0, -1, 0));
  CHECK(mu(2, 0, 1) == LogLinearScalar(-1, -2, 0));
  CHECK(mu(1, 0, kHalf) == LogLinearScalar(0, -1, 0));
  CHECK_THROWS_AS(mu(0, 1, 1), std::domain_error);
  CHECK_THROWS_AS(mu(1, 1, 0), std::domain_error);
  CHECK_THROWS_AS(mu(1, 1, ratio(3, 2)), std::domain_error);
  for (long m = 1; m <= 4; ++m) {
    for (long n = 0; n <= 4; ++n) {
      CHECK(mu(m, n, kHalf).q2 == 0);
    }
  }
}

TEST_CASE("lambda closed forms") {
  CHECK(lambda_n(0, 1) == LogLinearScalar());
  CHECK(lambda_n(0, ratio(1, 3)) == LogLinearScalar());
  CHECK(lambda_n(1, 1) == LogLinearScalar(0, 1, 0));
  const double exact = eval_interval(lambda_n(2, kHalf), kHalf, 128).mid();
  CHECK(std::abs(quad([](double x) { return lambda_integrand(2, 0.5, x); }) - exact) < 1e-12);
}

TEST_CASE("lambda matches quadrature for n <= 8") {
  for (const double th : {1.0, 0.5}) {
    const BigRational theta = (th == 1.0) ? BigRational(1) : kHalf;
    for (long n = 0; n <= 8; ++n) {
      const double exact = eval_interval(lambda_n(n, theta), theta, 128).mid();
      const double numeric = quad([&](double x) { return lambda_integrand(n, th, x); });
      CHECK(std::abs(numeric - exact) < 1e-13);
    }
  }
}

TEST_CASE("lambda agrees with its hypergeometric form for n <= 8") {
  // (theta/2) ((theta/2) 2F1(1,1;n+2;theta/2)/(n+1) - H_n + log(1 - theta/2))
  for (const BigRational& theta : {BigRational(1), kHalf, ratio(1, 3)}) {
    const BigRational z = theta / 2;
    for (long n = 0; n <= 8; ++n) {
      const LogConstants logs = log_constants(theta, 192);
      Interval series = Interval::from_rational(z, 192) * hyp2f1_series(1, 1, n + 2, z, 192) /
                        Interval::from_rational(n + 1, 192);
      series -= Interval::from_rational(harmonic(static_cast<unsigned>(n)), 192);
      series += logs.lambda1;
      series *= Interval::from_rational(z, 192);
      const Interval closed = eval_interval(lambda_n(n, theta), theta, 192);
      CHECK(series.overlaps(closed));
      CHECK(series.width() < 1e-40);
    }
  }
}

TEST_CASE("mu agrees with its hypergeometric form and the overlap tightens") {
  for (const BigRational& theta : {BigRational(1), kHalf}) {
    const BigRational z = theta / 2;
    for (long m = 1; m <= 6; ++m) {
      for (long n = 0; n <= 8; ++n) {
        double previous = 1;
        for (mpfr_prec_t p : {128, 256}) {
          const Interval series = Interval::from_rational(z, p) * hyp2f1_series(1, m, m + n + 1, z, p) /
                                  Interval::from_rational(BigRational(m * binomial(m + n, n)), p);
          const Interval closed = eval_interval(mu(m, n, theta), theta, p);
          REQUIRE(series.overlaps(closed));
          const double width = hull(series, closed).width();
          CHECK(width < previous);
          previous = width;
        }
      }
    }
  }
}

TEST_CASE("hypergeometric series enclosures") {
  const Interval two_log2 = log(Interval::from_rational(2, 200)) * Interval::from_rational(2, 200);
  CHECK(hyp2f1_series(1, 1, 2, kHalf, 200).overlaps(two_log2));
  CHECK(std::abs(hyp2f1_series(1, 1, 3, ratio(1, 1024), 128).mid() - 1.0) < 1e-3);
  // 2F1(1,2;4;z) = 6 int_0^1 t (1-t) / (1 - z t) dt
  const double numeric = 6 * quad([](double t) { return t * (1 - t) / (1 - t / 2); });
  const Interval f = hyp2f1_series(1, 2, 4, kHalf, 128);
  CHECK(std::abs(f.mid() - numeric) < 1e-13);
  CHECK_THROWS_AS(hyp2f1_series(1, 2, 2, kHalf, 128), std::domain_error);
  CHECK_THROWS_AS(hyp2f1_series(1, 1, 2, ratio(3, 4), 128), std::domain_error);
  CHECK_THROWS_AS(hyp2f1_series(1, 1, 2, 0, 128), std::domain_error);
}

TEST_CASE("interval evaluation of log-linear scalars") {
  CHECK(eval_interval(LogLinearScalar(1, 0, 0), kHalf, 128).contains(BigRational(1)));
  const Interval l = eval_interval(LogLinearScalar(0, 1, 0), 1, 128);
  CHECK(l.lower() <= -0.6931471805599453);
  CHECK(l.upper() >= -0.6931471805599453);
  CHECK(l.width() < 1e-30);
  const Interval zero = eval_interval(LogLinearScalar(0, 0, 1), 1, 128);
  CHECK(zero.contains(BigRational(0)));
  CHECK(zero.width() == 0);
}

TEST_CASE("enclosures nest as precision grows") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
  for (int i = 0; i < 40; ++i) {
    const LogLinearScalar s(ratio(num(rng), den(rng)), ratio(num(rng), den(rng)), ratio(num(rng), den(rng)));
    const BigRational theta = ratio(1 + (i % 5), 5);
    Interval outer = eval_interval(s, theta, 64);
    for (mpfr_prec_t p : {128, 256, 512}) {
      Interval inner = eval_interval(s, theta, p);
      CHECK(nested(inner, outer));
      outer = std::move(inner);
    }
  }
}

TEST_CASE("log-linear algebra") {
  const LogLinearScalar a(1, 2, 3), b(ratio(1, 2), 0, -1);
  CHECK(a + b == LogLinearScalar(ratio(3, 2), 2, 2));
  CHECK(a - a == LogLinearScalar());
  CHECK(a * BigRational(2) == LogLinearScalar(2, 4, 6));
  CHECK(a * LogLinearScalar(3) == LogLinearScalar(3, 6, 9));
  CHECK(a / LogLinearScalar(2) == LogLinearScalar(ratio(1, 2), 1, ratio(3, 2)));
  CHECK_THROWS_AS(a * b, std::domain_error);
  CHECK_THROWS_AS(a / b, std::domain_error);
  CHECK_THROWS_AS(a / LogLinearScalar(0), std::domain_error);
  CHECK(times_lambda2(ratio(2, 3)) == LogLinearScalar(0, 0, ratio(2, 3)));
  CHECK(LogLinearScalar(5).is_rational());
  CHECK_FALSE(a.is_rational());
}

TEST_CASE("certified signs") {
  CHECK(certified_sign(LogLinearScalar(0, -1, 0), 1, 64, 256) == 1);   // log 2
  CHECK(certified_sign(LogLinearScalar(0, 1, 0), 1, 64, 256) == -1);
  CHECK(certified_sign(LogLinearScalar(0, 0, 1), 1, 64, 256) == 0);    // log 1
  CHECK(certified_sign(LogLinearScalar(0, 0, 1), kHalf, 64, 256) == 1);
}
