#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include "e2sieve/tuples.hpp"

using namespace e2sieve;

TEST_CASE("tuple construction") {
  const Tuple t({11, 5, 7});
  CHECK(t.elements() == std::vector<long>{0, 2, 6});
  CHECK(diameter(t) == 6);
  CHECK(diameter(Tuple({4})) == 0);
  CHECK_THROWS_AS(Tuple({}), std::invalid_argument);
  CHECK_THROWS_AS(Tuple({1, 2, 1}), std::invalid_argument);
}

TEST_CASE("admissibility examples") {
  CHECK(is_admissible(Tuple({0, 2, 6})).admissible);
  CHECK(is_admissible(Tuple({0, 4, 6})).admissible);
  const Admissibility bad = is_admissible(Tuple({0, 2, 4}));
  CHECK_FALSE(bad.admissible);
  CHECK(bad.witness == 3);
  CHECK(is_admissible(Tuple({0, 1})).witness == 2);
  CHECK(is_admissible(Tuple({0, 2, 6, 8})).admissible);
  CHECK(is_admissible(Tuple({0, 2, 6, 8, 12})).admissible);
  CHECK_FALSE(is_admissible(Tuple({0, 2, 6, 8, 10})).admissible);
  CHECK(primes_up_to(20) == std::vector<long>{2, 3, 5, 7, 11, 13, 17, 19});
  CHECK(primes_up_to(1).empty());
}

TEST_CASE("subsets of admissible tuples are admissible") {
  std::mt19937_64 rng(8);
  for (int k : bundled_sizes()) {
    const std::vector<long> e = load_bundled(k).elements();
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<long> sub;
      for (long x : e) {
        if (rng() % 2) sub.push_back(x);
      }
      if (sub.empty()) sub.push_back(e.front());
      CHECK(is_admissible(Tuple(sub)).admissible);
    }
  }
}

TEST_CASE("the |t| prime shortcut agrees with a full check") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<long> width(1, 200);
    const long w = width(rng);
    std::uniform_int_distribution<long> pick(0, w);
    std::vector<long> e{0, w};
    const int extra = static_cast<int>(rng() % 12);
    for (int i = 0; i < extra; ++i) e.push_back(2 * (pick(rng) / 2));
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    const Tuple t(e);
    const Admissibility fast = is_admissible(t), full = is_admissible_upto(t, diameter(t) + 1);
    CHECK(fast.admissible == full.admissible);
    CHECK(fast.witness == full.witness);
  }
}

TEST_CASE("bundled tuples") {
  const std::map<int, long> expected{{3, 6},   {4, 8},   {5, 12},   {6, 16},   {7, 20},   {10, 32},  {16, 60},
                                     {23, 94}, {25, 110}, {37, 168}, {49, 240}, {102, 576}, {225, 1440}};
  CHECK(bundled_sizes().size() == expected.size());
  for (const auto& [k, h] : expected) {
    const Tuple t = load_bundled(k);
    CHECK(t.size() == static_cast<std::size_t>(k));
    CHECK(diameter(t) == h);
    CHECK(is_admissible(t).admissible);
  }
  CHECK_THROWS_AS(load_bundled(8), std::invalid_argument);
}

TEST_CASE("greedy search reaches the bundled widths") {
  for (const auto& [k, h] : std::map<int, long>{{3, 6}, {5, 12}, {10, 32}, {16, 60}, {23, 94}, {25, 110}, {37, 168}}) {
    const Tuple t = greedy_search(k);
    CHECK(t.size() == static_cast<std::size_t>(k));
    CHECK(is_admissible(t).admissible);
    CHECK(diameter(t) <= h);
  }
  const Tuple shifted = greedy_search(10, SearchStrategy::shifted_primes);
  CHECK(is_admissible(shifted).admissible);
  CHECK(shifted.size() == 10);
}

TEST_CASE("tuple files") {
  std::istringstream ok("0 2 6\n8 12\n");
  CHECK(read_tuple(ok) == Tuple({0, 2, 6, 8, 12}));
  for (const char* bad : {"0 2 x", "", "0 1.5", "0 -2 4"}) {
    std::istringstream in(bad);
    CHECK_THROWS_AS(read_tuple(in), std::invalid_argument);
  }
  CHECK_THROWS_AS(read_tuple_file("/nonexistent/tuple.txt"), std::invalid_argument);
  std::ostringstream out;
  write_tuple(out, Tuple({0, 2, 6}));
  std::istringstream back(out.str());
  CHECK(read_tuple(back) == Tuple({0, 2, 6}));
}
