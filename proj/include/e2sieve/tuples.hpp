#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

namespace e2sieve {

// Set of distinct integers stored sorted and shifted to start at 0.
class Tuple {
 public:
  /// Sorts and normalizes; throws std::invalid_argument on an empty input or
  /// repeated elements.
  explicit Tuple(std::vector<long> elements);

  const std::vector<long>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  friend bool operator==(const Tuple&, const Tuple&) = default;

 private:
  std::vector<long> elements_;
};

std::vector<long> primes_up_to(long n);

struct Admissibility {
  bool admissible = false;
  std::optional<long> witness;  // smallest prime whose residue classes are all hit
};

/// Checks the primes p <= |t|; larger primes cannot be covered by |t| residues.
Admissibility is_admissible(const Tuple& t);

/// Same question over every prime p <= prime_limit. Used to cross-check the
/// p <= |t| shortcut.
Admissibility is_admissible_upto(const Tuple& t, long prime_limit);

long diameter(const Tuple& t);

enum class SearchStrategy { shifted_primes, greedy_residue_sieve };

struct SearchBudget {
  long steps = 200000;     // candidate windows or sieve trials
  long trials_per_width = 5000;
  std::uint64_t seed = 1;
};

class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Narrow admissible k-tuple. shifted_primes scans Hensley-Richards windows of
/// primes beyond k; greedy_residue_sieve starts from that width and tightens
/// it with randomized greedy residue elimination, keeping the best tuple found.
/// Throws SearchExhausted if the budget ends before any tuple is found.
Tuple greedy_search(int k, SearchStrategy strategy = SearchStrategy::greedy_residue_sieve,
                    const SearchBudget& budget = {});

/// Whitespace-separated integers, one tuple per stream.
Tuple read_tuple(std::istream& in);
Tuple read_tuple_file(const std::filesystem::path& path);
void write_tuple(std::ostream& out, const Tuple& t);

/// Sizes with a shipped witness tuple.
std::vector<int> bundled_sizes();

/// Shipped witness for k; throws std::invalid_argument for other k.
Tuple load_bundled(int k);

}  // namespace e2sieve
