#include "e2sieve/rational.hpp"

#include <cctype>
#include <deque>
#include <mutex>
#include <stdexcept>

namespace e2sieve {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

BigRational parse_rational(std::string_view text) {
  const std::string s = trim(text);
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("malformed rational: '" + s + "'");
  }
  BigInt p(num[0] == '+' ? num.substr(1) : num, 10);
  BigInt q(den, 10);
  if (q == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  BigRational r(p, q);
  r.canonicalize();
  return r;
}

std::string format_rational(const BigRational& value) { return value.get_str(10); }

bool is_canonical(const BigRational& value) {
  if (sgn(value.get_den()) <= 0) return false;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return g == 1;
}

const BigInt& factorial(unsigned n) {
  // deque keeps references stable while the table grows
  static std::deque<BigInt> table{BigInt(1)};
  static std::mutex guard;
  std::lock_guard lock(guard);
  while (table.size() <= n) {
    table.push_back(table.back() * static_cast<unsigned long>(table.size()));
  }
  return table[n];
}

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace e2sieve
