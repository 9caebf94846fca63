#include "e2sieve/basis.hpp"

#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace e2sieve {

void SymmetricPolynomialSpec::validate() const {
  if (terms.size() != coeffs.size()) {
    throw std::invalid_argument("terms and coeffs differ in length");
  }
  std::set<BasisTerm> seen;
  for (const BasisTerm& t : terms) {
    if (t.b < 0 || t.c < 0) throw std::invalid_argument("negative basis exponent");
    if (!seen.insert(t).second) throw std::invalid_argument("repeated basis term");
  }
}

BigInt QPolynomial::operator()(long x) const {
  BigInt value = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) value = value * x + *it;
  return value;
}

namespace {

// Adds prod (2c_i)!/c_i! over every ordered composition of `remaining` into
// positive parts, bucketed by the number of parts.
void enumerate_compositions(int remaining, int parts, const BigInt& product,
                            std::vector<BigInt>& by_parts) {
  if (remaining == 0) {
    by_parts[static_cast<std::size_t>(parts)] += product;
    return;
  }
  for (int part = 1; part <= remaining; ++part) {
    const BigInt weight = factorial(static_cast<unsigned>(2 * part)) / factorial(static_cast<unsigned>(part));
    enumerate_compositions(remaining - part, parts + 1, product * weight, by_parts);
  }
}

QPolynomial build_q_polynomial(int c) {
  QPolynomial q;
  q.c = c;
  q.coefficients.assign(static_cast<std::size_t>(c + 1), BigInt(0));
  if (c == 0) {
    q.coefficients[0] = 1;
    return q;
  }
  std::vector<BigInt> by_parts(static_cast<std::size_t>(c + 1), BigInt(0));
  enumerate_compositions(c, 0, BigInt(1), by_parts);

  std::vector<BigRational> acc(static_cast<std::size_t>(c + 1), BigRational(0));
  // falling factorial x(x-1)...(x-r+1), as ascending coefficients
  std::vector<BigInt> falling{BigInt(1)};
  for (int r = 1; r <= c; ++r) {
    std::vector<BigInt> next(falling.size() + 1, BigInt(0));
    for (std::size_t i = 0; i < falling.size(); ++i) {
      next[i + 1] += falling[i];
      next[i] -= falling[i] * (r - 1);
    }
    falling = std::move(next);
    const BigRational scale = ratio(by_parts[static_cast<std::size_t>(r)], factorial(static_cast<unsigned>(r)));
    for (std::size_t i = 0; i < falling.size(); ++i) acc[i] += scale * BigRational(falling[i]);
  }
  const BigInt cfact = factorial(static_cast<unsigned>(c));
  for (int i = 0; i <= c; ++i) {
    const BigRational v = acc[static_cast<std::size_t>(i)] * BigRational(cfact);
    if (v.get_den() != 1) throw std::logic_error("Q_c coefficient is not an integer");
    q.coefficients[static_cast<std::size_t>(i)] = v.get_num();
  }
  return q;
}

}  // namespace

const QPolynomial& q_polynomial(int c) {
  if (c < 0) throw std::invalid_argument("q_polynomial requires c >= 0");
  static std::map<int, QPolynomial> cache;
  static std::mutex guard;
  std::lock_guard lock(guard);
  auto it = cache.find(c);
  if (it == cache.end()) it = cache.emplace(c, build_q_polynomial(c)).first;
  return it->second;
}

BigRational q_eval(int c, long k) {
  if (k < 0) throw std::invalid_argument("q_eval requires k >= 0");
  return BigRational(q_polynomial(c)(k));
}

std::vector<BasisTerm> basis_sequence(int m) {
  if (m < 1) throw std::invalid_argument("basis_sequence requires m >= 1");
  std::vector<BasisTerm> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int degree = 0;; ++degree) {
    for (int b = degree; b >= 0; --b) {
      if ((degree - b) % 2 != 0) continue;
      out.push_back({b, (degree - b) / 2});
      if (static_cast<int>(out.size()) == m) return out;
    }
  }
}

}  // namespace e2sieve
