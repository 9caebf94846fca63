#pragma once

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "e2sieve/forms.hpp"
#include "e2sieve/optimizer.hpp"
#include "e2sieve/oracle.hpp"
#include "e2sieve/tuples.hpp"

namespace e2sieve {

using Json = nlohmann::ordered_json;

// Coefficient vector on disk: {"k", "theta": "p/q", "nu" (optional),
// "terms": [[b, c], ...], "coeffs": ["p/q", ...]}.
struct CoefficientFile {
  int k = 2;
  BigRational theta = 1;
  std::optional<int> nu;
  std::vector<BasisTerm> terms;
  std::vector<BigRational> coeffs;
};

/// Throws std::invalid_argument on malformed records.
CoefficientFile coefficients_from_json(const Json& j);
Json to_json(const CoefficientFile& file);
CoefficientFile load_coefficients(const std::filesystem::path& path);

/// fixture_dir() / "k<k>.json".
CoefficientFile load_fixture_coefficients(int k);

Json to_json(const SieveConfig& config);
Json to_json(std::span<const BasisTerm> terms);
Json to_json(const LogLinearScalar& s);
/// Endpoints as outward-rounded decimal strings with `digits` significant digits.
Json to_json(const Interval& x, int digits = 40);
Json to_json(const Certificate& cert, int digits = 40);
Json to_json(const oracle::Check& check);
Json to_json(const oracle::QuadratureResult& q);
Json to_json(const Tuple& t);

/// k, theta, terms and row-major entries as [q0, q1, q2] rational strings.
Json matrix_dump(const QuadraticForm& form, int k, const BigRational& theta, std::span<const BasisTerm> terms);

struct RunRecord {
  std::string command;
  Json config = Json::object();
  Json inputs = Json::object();
  Json outputs = Json::object();
  std::optional<double> wall_time;  // seconds; absent unless timing was requested
  long precision_bits = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

Json to_json(const RunRecord& record);
RunRecord run_record_from_json(const Json& j);

}  // namespace e2sieve
