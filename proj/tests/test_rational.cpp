#include <doctest.h>

#include <random>

#include "e2sieve/interval.hpp"
#include "e2sieve/rational.hpp"

using namespace e2sieve;

TEST_CASE("parse and format rationals") {
  CHECK(parse_rational("3/4") == ratio(3, 4));
  CHECK(parse_rational("-6/8") == ratio(-3, 4));
  CHECK(parse_rational("+5") == 5);
  CHECK(parse_rational(" 7/2 ") == ratio(7, 2));
  CHECK(format_rational(ratio(10, -4)) == "-5/2");
  CHECK(format_rational(BigRational(7)) == "7");
  CHECK(is_canonical(parse_rational("12/18")));
  for (const char* bad : {"", "1/0", "a/2", "1/", "/3", "1.5", "2/3/4", "1/-2"}) {
    CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
  }
}

TEST_CASE("arithmetic keeps rationals canonical") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 1000);
  BigRational acc = 1;
  for (int i = 0; i < 500; ++i) {
    const BigRational x = ratio(num(rng), den(rng));
    REQUIRE(is_canonical(x));
    switch (i % 4) {
      case 0: acc += x; break;
      case 1: acc -= x; break;
      case 2: acc *= x; break;
      default:
        if (x != 0) acc /= x;
    }
    CHECK(is_canonical(acc));
    CHECK(parse_rational(format_rational(acc)) == acc);
  }
}

TEST_CASE("factorials and binomials") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(10) == 3628800);
  CHECK(factorial(25) == BigInt("15511210043330985984000000"));
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(0, 0) == 1);
  CHECK(sign_of_power(3) == -1);
  CHECK(sign_of_power(0) == 1);
}

TEST_CASE("interval enclosures") {
  const BigRational third = ratio(1, 3);
  const Interval x = Interval::from_rational(third, 128);
  CHECK(x.contains(third));
  CHECK_FALSE(x.contains(ratio(1, 3) + ratio(1, BigInt("1000000000000000000000000000000"))));
  CHECK(x.tight(120));

  const Interval sum = x + x + x;
  CHECK(sum.contains(BigRational(1)));
  const Interval prod = x * Interval::from_rational(3, 128);
  CHECK(prod.contains(BigRational(1)));
  const Interval quot = Interval::from_rational(1, 128) / Interval::from_rational(3, 128);
  CHECK(quot.contains(third));
  CHECK((x - x).contains(BigRational(0)));
  CHECK((-x).contains(-third));

  const Interval straddle = Interval::from_bounds(-1.0, 1.0, 64);
  CHECK_THROWS_AS(x / straddle, std::domain_error);
  CHECK_FALSE(straddle.tight(1));
  CHECK_FALSE(straddle.positive());
  CHECK_FALSE(straddle.negative());
  CHECK_THROWS_AS(log(straddle), std::domain_error);

  const Interval l2 = log(Interval::from_rational(2, 200));
  CHECK(l2.lower() <= 0.6931471805599453);
  CHECK(l2.upper() >= 0.6931471805599453);
  CHECK(l2.width() < 1e-50);
  CHECK(hull(x, l2).contains(third));
  CHECK(hull(x, l2).overlaps(l2));
  CHECK(l2.lower_string(10).rfind("6.93147180", 0) == 0);
}
