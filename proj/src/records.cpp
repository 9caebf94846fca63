#include "e2sieve/records.hpp"

#include <cstdlib>
#include <fstream>

#include "e2sieve/fixtures.hpp"

namespace e2sieve {

std::filesystem::path fixture_dir() {
  if (const char* env = std::getenv("E2SIEVE_FIXTURE_DIR"); env && *env) return env;
  return E2SIEVE_FIXTURE_DIR;
}

namespace {

BigRational rational_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing field ") + key);
  const Json& v = j.at(key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return BigRational(v.get<long>());
  throw std::invalid_argument(std::string("field ") + key + " must be a rational string");
}

}  // namespace

CoefficientFile coefficients_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("coefficient record must be an object");
  CoefficientFile f;
  try {
    f.k = j.at("k").get<int>();
    f.theta = rational_field(j, "theta");
    if (j.contains("nu")) f.nu = j.at("nu").get<int>();
    for (const Json& t : j.at("terms")) {
      if (!t.is_array() || t.size() != 2) throw std::invalid_argument("each term must be [b, c]");
      f.terms.push_back({t[0].get<int>(), t[1].get<int>()});
    }
    for (const Json& c : j.at("coeffs")) f.coeffs.push_back(parse_rational(c.get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed coefficient record: ") + e.what());
  }
  SymmetricPolynomialSpec{f.terms, f.coeffs}.validate();
  return f;
}

Json to_json(const CoefficientFile& f) {
  Json j;
  j["k"] = f.k;
  j["theta"] = format_rational(f.theta);
  if (f.nu) j["nu"] = *f.nu;
  j["terms"] = to_json(std::span<const BasisTerm>(f.terms));
  Json coeffs = Json::array();
  for (const BigRational& c : f.coeffs) coeffs.push_back(format_rational(c));
  j["coeffs"] = std::move(coeffs);
  return j;
}

CoefficientFile load_coefficients(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open coefficient file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
  return coefficients_from_json(j);
}

CoefficientFile load_fixture_coefficients(int k) {
  return load_coefficients(fixture_dir() / ("k" + std::to_string(k) + ".json"));
}

Json to_json(const SieveConfig& c) {
  return Json{{"k", c.k}, {"theta", format_rational(c.theta)}, {"nu", c.nu}, {"nterms", c.nterms}};
}

Json to_json(std::span<const BasisTerm> terms) {
  Json out = Json::array();
  for (const BasisTerm& t : terms) out.push_back(Json::array({t.b, t.c}));
  return out;
}

Json to_json(const LogLinearScalar& s) {
  return Json{{"q0", format_rational(s.q0)}, {"q1", format_rational(s.q1)}, {"q2", format_rational(s.q2)}};
}

Json to_json(const Interval& x, int digits) {
  return Json{{"lower", x.lower_string(digits)},
              {"upper", x.upper_string(digits)},
              {"digits", digits},
              {"precision_bits", static_cast<long>(x.precision())}};
}

Json to_json(const Certificate& cert, int digits) {
  Json a = Json::array();
  for (const BigRational& v : cert.a) a.push_back(format_rational(v));
  Json j;
  j["config"] = to_json(cert.config);
  j["terms"] = to_json(std::span<const BasisTerm>(cert.terms));
  j["a"] = std::move(a);
  j["R"] = to_json(cert.ratio, digits);
  j["D"] = to_json(cert.D);
  j["D_enclosure"] = to_json(cert.D_enclosure, digits);
  j["verdict"] = to_string(cert.verdict);
  j["precision_bits"] = static_cast<long>(cert.precision_bits);
  return j;
}

Json to_json(const oracle::Check& c) {
  return Json{{"name", c.name},   {"estimate", c.estimate},   {"target", c.target},
              {"error", c.error}, {"tolerance", c.tolerance}, {"verdict", c.pass ? "pass" : "fail"}};
}

Json to_json(const oracle::QuadratureResult& q) {
  Json j{{"estimate", q.estimate}, {"error_bound", q.error_bound}, {"samples_or_depth", q.samples_or_depth}};
  j["seed"] = q.seed ? Json(*q.seed) : Json(nullptr);
  return j;
}

Json to_json(const Tuple& t) {
  return Json{{"size", t.size()}, {"diameter", diameter(t)}, {"elements", t.elements()}};
}

Json matrix_dump(const QuadraticForm& form, int k, const BigRational& theta, std::span<const BasisTerm> terms) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < form.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < form.cols(); ++c) {
      const LogLinearScalar& s = form(i, c);
      row.push_back(Json::array({format_rational(s.q0), format_rational(s.q1), format_rational(s.q2)}));
    }
    rows.push_back(std::move(row));
  }
  return Json{{"k", k}, {"theta", format_rational(theta)}, {"terms", to_json(terms)}, {"entries", std::move(rows)}};
}

Json to_json(const RunRecord& r) {
  Json j;
  j["command"] = r.command;
  j["config"] = r.config;
  j["inputs"] = r.inputs;
  j["outputs"] = r.outputs;
  j["wall_time"] = r.wall_time ? Json(*r.wall_time) : Json(nullptr);
  j["precision_bits"] = r.precision_bits;
  j["seed"] = r.seed;
  return j;
}

RunRecord run_record_from_json(const Json& j) {
  RunRecord r;
  try {
    r.command = j.at("command").get<std::string>();
    r.config = j.at("config");
    r.inputs = j.at("inputs");
    r.outputs = j.at("outputs");
    if (!j.at("wall_time").is_null()) r.wall_time = j.at("wall_time").get<double>();
    r.precision_bits = j.at("precision_bits").get<long>();
    r.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed run record: ") + e.what());
  }
  return r;
}

}  // namespace e2sieve
