#include "e2sieve/tuples.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <string>

#include "e2sieve/fixtures.hpp"

namespace e2sieve {

Tuple::Tuple(std::vector<long> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw std::invalid_argument("tuple must be nonempty");
  std::sort(elements_.begin(), elements_.end());
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
    throw std::invalid_argument("tuple elements must be distinct");
  }
  const long base = elements_.front();
  for (long& h : elements_) h -= base;
}

std::vector<long> primes_up_to(long n) {
  std::vector<long> primes;
  if (n < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1);
  for (long i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (long j = i * i; j <= n; j += i) composite[j] = true;
  }
  return primes;
}

Admissibility is_admissible_upto(const Tuple& t, long prime_limit) {
  std::vector<char> hit;
  for (long p : primes_up_to(prime_limit)) {
    hit.assign(static_cast<std::size_t>(p), 0);
    long covered = 0;
    for (long h : t.elements()) {
      char& slot = hit[static_cast<std::size_t>(h % p)];
      if (!slot) {
        slot = 1;
        ++covered;
      }
    }
    if (covered == p) return {false, p};
  }
  return {true, std::nullopt};
}

Admissibility is_admissible(const Tuple& t) { return is_admissible_upto(t, static_cast<long>(t.size())); }

long diameter(const Tuple& t) { return t.elements().back() - t.elements().front(); }

namespace {

bool narrower(const Tuple& a, const Tuple& b) {
  if (diameter(a) != diameter(b)) return diameter(a) < diameter(b);
  return a.elements() < b.elements();
}

std::optional<Tuple> shifted_primes(int k, long& steps) {
  const double x = 4.0 * k * (std::log(4.0 * k) + 2) + 100;
  const std::vector<long> primes = primes_up_to(static_cast<long>(x));
  const auto first_above_k = static_cast<std::size_t>(
      std::upper_bound(primes.begin(), primes.end(), static_cast<long>(k)) - primes.begin());
  std::optional<Tuple> best;
  auto consider = [&](std::vector<long> candidate) {
    --steps;
    Tuple t(std::move(candidate));
    if (!is_admissible(t).admissible) return;
    if (!best || narrower(t, *best)) best = std::move(t);
  };

  // windows of consecutive primes, and Hensley-Richards sets
  // {-p_{m+h}, ..., -p_{m+1}, -1, 1, p_{m+1}, ..., p_{m+h'}}
  const int lo_count = (k - 2) / 2;
  const int hi_count = (k - 2) - lo_count;
  for (std::size_t m = 0; m <= first_above_k + static_cast<std::size_t>(k) && steps > 0; ++m) {
    if (m + static_cast<std::size_t>(k) <= primes.size()) {
      consider(std::vector<long>(primes.begin() + static_cast<long>(m), primes.begin() + static_cast<long>(m) + k));
    }
    if (k >= 2 && m + static_cast<std::size_t>(hi_count) <= primes.size() && steps > 0) {
      std::vector<long> set{-1, 1};
      for (int i = 0; i < lo_count; ++i) set.push_back(-primes[m + static_cast<std::size_t>(i)]);
      for (int i = 0; i < hi_count; ++i) set.push_back(primes[m + static_cast<std::size_t>(i)]);
      consider(std::move(set));
    }
  }
  return best;
}

// One randomized greedy pass over [0, width]: for each prime p <= k, remove
// the residue class with the fewest survivors, never the classes of 0 and
// width. Returns the survivors.
std::vector<long> sieve_pass(int k, long width, const std::vector<long>& primes, std::mt19937_64& rng) {
  std::vector<char> alive(static_cast<std::size_t>(width) + 1, 1);
  std::vector<long> count;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (long p : primes) {
    count.assign(static_cast<std::size_t>(p), 0);
    for (long x = 0; x <= width; ++x) {
      if (alive[x]) ++count[static_cast<std::size_t>(x % p)];
    }
    long fewest = LONG_MAX;
    for (long r = 1; r < p; ++r) {
      if (r != width % p) fewest = std::min(fewest, count[r]);
    }
    if (fewest == LONG_MAX) return {};  // p = 2 with odd width
    std::vector<long> picks;
    for (long r = 1; r < p; ++r) {
      if (r == width % p) continue;
      // occasional slack of one keeps trials from repeating
      if (count[r] <= fewest + (unit(rng) < 0.3 ? 1 : 0)) picks.push_back(r);
    }
    const long r = picks[rng() % picks.size()];
    for (long x = r; x <= width; x += p) alive[x] = 0;
  }
  std::vector<long> survivors;
  for (long x = 0; x <= width && static_cast<int>(survivors.size()) < k; ++x) {
    if (alive[x]) survivors.push_back(x);
  }
  return survivors;
}

}  // namespace

Tuple greedy_search(int k, SearchStrategy strategy, const SearchBudget& budget) {
  if (k < 1) throw std::invalid_argument("greedy_search: k must be positive");
  if (k == 1) return Tuple({0});
  long steps = budget.steps;
  std::optional<Tuple> best = shifted_primes(k, steps);
  if (!best) throw SearchExhausted("no admissible tuple found within the step budget");
  if (strategy == SearchStrategy::shifted_primes) return *best;

  const std::vector<long> primes = primes_up_to(k);
  std::mt19937_64 rng(budget.seed);
  long width = diameter(*best) - 2;
  while (steps > 0 && width > 0) {
    bool found = false;
    for (long trial = 0; trial < budget.trials_per_width && steps > 0; ++trial, --steps) {
      std::vector<long> survivors = sieve_pass(k, width, primes, rng);
      if (static_cast<int>(survivors.size()) < k) continue;
      Tuple t(std::move(survivors));
      if (narrower(t, *best)) best = std::move(t);
      found = true;
      break;
    }
    if (!found) break;
    width = diameter(*best) - 2;
  }
  return *best;
}

Tuple read_tuple(std::istream& in) {
  std::vector<long> elements;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    long value = 0;
    try {
      value = std::stol(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("tuple file: not an integer: " + token);
    }
    if (used != token.size()) throw std::invalid_argument("tuple file: not an integer: " + token);
    if (value < 0) throw std::invalid_argument("tuple file: negative element " + token);
    elements.push_back(value);
  }
  return Tuple(std::move(elements));
}

Tuple read_tuple_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open tuple file " + path.string());
  return read_tuple(in);
}

void write_tuple(std::ostream& out, const Tuple& t) {
  for (std::size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << t.elements()[i];
  out << '\n';
}

std::vector<int> bundled_sizes() { return {3, 4, 5, 6, 7, 10, 16, 23, 25, 37, 49, 102, 225}; }

Tuple load_bundled(int k) {
  const std::vector<int> sizes = bundled_sizes();
  if (std::find(sizes.begin(), sizes.end(), k) == sizes.end()) {
    throw std::invalid_argument("no bundled tuple for k = " + std::to_string(k));
  }
  Tuple t = read_tuple_file(fixture_dir() / "tuples" / ("k" + std::to_string(k) + ".txt"));
  if (static_cast<int>(t.size()) != k) throw std::runtime_error("bundled tuple has the wrong size");
  return t;
}

}  // namespace e2sieve
