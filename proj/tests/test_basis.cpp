#include <doctest.h>

#include <set>

#include "e2sieve/basis.hpp"

using namespace e2sieve;

namespace {

std::vector<BigInt> coeffs(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("Q_c polynomials") {
  CHECK(q_polynomial(0).coefficients == coeffs({1}));
  CHECK(q_polynomial(1).coefficients == coeffs({0, 2}));
  CHECK(q_polynomial(2).coefficients == coeffs({0, 20, 4}));
  CHECK(q_polynomial(3).coefficients == coeffs({0, 592, 120, 8}));
  CHECK(q_polynomial(4).coefficients == coeffs({0, 33888, 5936, 480, 16}));
  CHECK_THROWS_AS(q_polynomial(-1), std::invalid_argument);
}

TEST_CASE("Q_c structure for c <= 6") {
  for (int c = 1; c <= 6; ++c) {
    const QPolynomial& q = q_polynomial(c);
    REQUIRE(q.coefficients.size() == static_cast<std::size_t>(c + 1));
    CHECK(q.coefficients.back() == BigInt(1) << c);
    CHECK(q(0) == 0);
    for (int r = 1; r <= c; ++r) CHECK(q.coefficients[r] > 0);
  }
}

TEST_CASE("q_eval") {
  CHECK(q_eval(0, 7) == 1);
  CHECK(q_eval(1, 5) == 10);
  CHECK(q_eval(2, 1) == 24);
  CHECK(q_eval(3, 2) == 1728);
}

TEST_CASE("basis_sequence reproduces the 42-entry exponent lists") {
  const std::vector<int> b{0, 1, 2, 0, 3, 1, 4, 2, 0, 5, 3, 1, 6, 4, 2, 0, 7, 5, 3, 1, 8,
                           6, 4, 2, 0, 9, 7, 5, 3, 1, 10, 8, 6, 4, 2, 0, 11, 9, 7, 5, 3, 1};
  const std::vector<int> c{0, 0, 0, 1, 0, 1, 0, 1, 2, 0, 1, 2, 0, 1, 2, 3, 0, 1, 2, 3, 0,
                           1, 2, 3, 4, 0, 1, 2, 3, 4, 0, 1, 2, 3, 4, 5, 0, 1, 2, 3, 4, 5};
  const std::vector<BasisTerm> seq = basis_sequence(42);
  REQUIRE(seq.size() == 42);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    CHECK(seq[i].b == b[i]);
    CHECK(seq[i].c == c[i]);
  }
  CHECK(basis_sequence(1) == std::vector<BasisTerm>{{0, 0}});
  CHECK(basis_sequence(3) == std::vector<BasisTerm>{{0, 0}, {1, 0}, {2, 0}});
  CHECK_THROWS_AS(basis_sequence(0), std::invalid_argument);
}

TEST_CASE("basis_sequence covers each degree before the next") {
  const std::vector<BasisTerm> seq = basis_sequence(120);
  std::set<BasisTerm> seen(seq.begin(), seq.end());
  CHECK(seen.size() == seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i + 1 < seq.size() && seq[i + 1].degree() > seq[i].degree()) {
      const int d = seq[i].degree();
      for (int cc = 0; 2 * cc <= d; ++cc) {
        for (int bb = 0; bb + 2 * cc <= d; ++bb) {
          const BasisTerm t{bb, cc};
          CHECK(std::find(seq.begin(), seq.begin() + static_cast<long>(i) + 1, t) != seq.begin() + static_cast<long>(i) + 1);
        }
      }
    }
    if (i > 0) CHECK(seq[i].degree() >= seq[i - 1].degree());
  }
}

TEST_CASE("the two lemma closed forms agree at b = 0") {
  for (int c = 0; c <= 5; ++c) {
    for (long k = 1; k <= 8; ++k) {
      const auto n = static_cast<unsigned>(k + 2 * c);
      const BigRational first = q_eval(c, k) / BigRational(factorial(n));
      const BigRational second = q_eval(c, k) / BigRational(factorial(n - 1) * BigInt(n));
      CHECK(first == second);
    }
  }
}

TEST_CASE("SymmetricPolynomialSpec validation") {
  CHECK_NOTHROW(SymmetricPolynomialSpec{{{0, 0}, {1, 0}}, {1, ratio(-1, 2)}}.validate());
  CHECK_THROWS_AS(SymmetricPolynomialSpec({{{0, 0}}, {1, 2}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(SymmetricPolynomialSpec({{{0, 0}, {0, 0}}, {1, 2}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(SymmetricPolynomialSpec({{{-1, 0}}, {1}}).validate(), std::invalid_argument);
}
