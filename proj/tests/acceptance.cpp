// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "e2sieve/records.hpp"

using namespace e2sieve;

namespace {

struct Row {
  int k;
  int nu;
  std::string printed;
};

const std::vector<Row> kRows{{10, 3, "3.0353"},         {16, 4, "4.000399"},       {25, 5, "5.0454"},
                             {37, 6, "6.01020"},        {23, 3, "3.00050654254"},  {49, 4, "4.00096634233"},
                             {102, 5, "5.01623513164"}, {225, 6, "6.0098418048817"}};

struct Loaded {
  CoefficientFile file;
  SieveConfig config;
  SieveForms forms;
};

std::map<int, Loaded>& loaded() {
  static std::map<int, Loaded> cache;
  return cache;
}

const Loaded& load(const Row& row) {
  auto it = loaded().find(row.k);
  if (it != loaded().end()) return it->second;
  Loaded l{load_fixture_coefficients(row.k), {}, {}};
  l.config = SieveConfig{row.k, l.file.theta, row.nu, static_cast<int>(l.file.terms.size())};
  l.forms = build_forms(l.config, l.file.terms);
  return loaded().emplace(row.k, std::move(l)).first->second;
}

// printed <= R < printed + one unit in its last digit, as a rational check
bool prefix_match(const Interval& r, const std::string& printed) {
  const auto dot = printed.find('.');
  const std::string digits = printed.substr(0, dot) + printed.substr(dot + 1);
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, printed.size() - dot - 1);
  const BigRational lo(BigInt(digits), scale), hi(BigInt(digits) + 1, scale);
  const Interval lo_i = Interval::from_rational(lo, r.precision()), hi_i = Interval::from_rational(hi, r.precision());
  return mpfr_cmp(r.lower_ptr(), lo_i.upper_ptr()) >= 0 && mpfr_cmp(r.upper_ptr(), hi_i.lower_ptr()) < 0;
}

class Report {
 public:
  void add(int n, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << n << ": " << detail << std::endl;
    all_ &= pass;
  }
  bool all() const { return all_; }

 private:
  bool all_ = true;
};

void criterion1(Report& rep) {
  bool ok = true;
  std::ostringstream detail;
  for (const Row& row : kRows) {
    const Loaded& l = load(row);
    const Certificate cert = certify(l.config, l.file.terms, l.file.coeffs, l.forms);
    const bool prefix = prefix_match(cert.ratio, row.printed);
    const bool close = std::abs(cert.ratio.mid() - std::stod(row.printed)) <= 1e-3;
    if (!(prefix && close)) {
      ok = false;
      detail << " R_" << row.k << "=" << cert.ratio.lower_string(20) << " vs " << row.printed << ";";
    }
  }
  rep.add(1, ok, "table R values match printed prefixes within 1e-3" + detail.str());
}

void criterion2(Report& rep) {
  bool ok = true;
  std::ostringstream detail;
  for (const Row& row : kRows) {
    const Loaded& l = load(row);
    const Certificate c512 = certify(l.config, l.file.terms, l.file.coeffs, l.forms, {512, 512});
    const Certificate c1024 = certify(l.config, l.file.terms, l.file.coeffs, l.forms, {1024, 1024});
    const bool pass = c512.verdict == Verdict::pass && c512.D_enclosure.positive() &&
                      c1024.verdict == Verdict::pass && c1024.D == c512.D;
    if (!pass) {
      ok = false;
      detail << " k=" << row.k << " " << to_string(c512.verdict) << "/" << to_string(c1024.verdict) << ";";
    }
  }
  rep.add(2, ok, "all eight certificates pass at 512 bits and again at 1024" + detail.str());
}

void criterion3(Report& rep) {
  bool ok = true;
  std::ostringstream detail;
  for (auto [k, nu, nterms] : {std::tuple{10, 3, 2}, std::tuple{16, 4, 4}}) {
    const auto start = std::chrono::steady_clock::now();
    const SieveConfig config{k, 1, nu, nterms};
    const OptimizedCertificate out = optimize_and_certify(config, build_forms(config, basis_sequence(nterms)));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = out.certificate.verdict == Verdict::pass && secs <= 60;
    ok &= pass;
    detail << " k=" << k << " R=" << out.certificate.ratio.lower_string(10) << " "
           << to_string(out.certificate.verdict) << " in " << secs << "s;";
  }
  rep.add(3, ok, "optimize pipeline certifies k=10 nu=3 and k=16 nu=4:" + detail.str());
}

void criterion4(Report& rep) {
  auto coeffs = [](std::initializer_list<long> v) { return std::vector<BigInt>(v.begin(), v.end()); };
  bool ok = q_polynomial(1).coefficients == coeffs({0, 2}) && q_polynomial(2).coefficients == coeffs({0, 20, 4}) &&
            q_polynomial(3).coefficients == coeffs({0, 592, 120, 8}) &&
            q_polynomial(4).coefficients == coeffs({0, 33888, 5936, 480, 16});
  const std::vector<int> b{0, 1, 2, 0, 3, 1, 4, 2, 0, 5, 3, 1, 6, 4, 2, 0, 7, 5, 3, 1, 8,
                           6, 4, 2, 0, 9, 7, 5, 3, 1, 10, 8, 6, 4, 2, 0, 11, 9, 7, 5, 3, 1};
  const std::vector<int> c{0, 0, 0, 1, 0, 1, 0, 1, 2, 0, 1, 2, 0, 1, 2, 3, 0, 1, 2, 3, 0,
                           1, 2, 3, 4, 0, 1, 2, 3, 4, 0, 1, 2, 3, 4, 5, 0, 1, 2, 3, 4, 5};
  const std::vector<BasisTerm> seq = basis_sequence(42);
  for (std::size_t i = 0; i < 42; ++i) ok &= seq[i].b == b[i] && seq[i].c == c[i];
  rep.add(4, ok, "Q_1..Q_4 and the 42-entry exponent lists");
}

std::string summarize(const std::vector<oracle::Check>& checks, bool& ok) {
  std::size_t passed = 0;
  std::ostringstream failures;
  for (const oracle::Check& c : checks) {
    if (c.pass) {
      ++passed;
    } else {
      failures << " " << c.name << " (" << c.error << ");";
    }
  }
  ok = passed == checks.size();
  return std::to_string(passed) + "/" + std::to_string(checks.size()) + failures.str();
}

void criterion5(Report& rep) {
  bool ok = false;
  const std::string lemma = summarize(oracle::verify_lemma(2, 1, 3, 1e-6), ok);
  bool binom = true;
  for (long n = 1; n <= 12; ++n) {
    for (long m = 1; m <= n; ++m) binom &= oracle::verify_binomial_identity(n, m);
  }
  rep.add(5, ok && binom, "simplex lemma " + lemma + ", binomial identity n<=12 " + (binom ? "ok" : "broken"));
}

void criterion6(Report& rep) {
  std::vector<oracle::Check> forms, x0;
  for (const BigRational& theta : {BigRational(1), ratio(1, 2)}) {
    for (int k : {2, 3}) {
      for (int b = 0; b <= 1; ++b) {
        for (int c = 0; c <= 1; ++c) {
          for (auto& ch : oracle::verify_forms(k, theta, {b, c})) forms.push_back(std::move(ch));
        }
      }
    }
    for (long m = 1; m <= 3; ++m) {
      for (long n = 0; n <= 3; ++n) {
        for (auto& ch : oracle::verify_x0_integrals(m, n, theta, 1e-4, 128)) x0.push_back(std::move(ch));
      }
    }
  }
  bool forms_ok = false, x0_ok = false;
  const std::string f = summarize(forms, forms_ok), x = summarize(x0, x0_ok);
  rep.add(6, forms_ok && x0_ok, "tilde-form oracle " + f + ", mu/lambda routes " + x);
}

void criterion7(Report& rep) {
  std::mt19937_64 rng(20);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
  bool ok = true;
  std::ostringstream detail;
  for (const Row& row : kRows) {
    const Loaded& l = load(row);
    for (const BigRational& d : leading_principal_minors(rational_matrix(l.forms.I))) {
      if (d <= 0) {
        ok = false;
        detail << " k=" << row.k << " minor not positive;";
        break;
      }
    }
    const BigRational& theta = l.config.theta;
    const LogLinearScalar scale = times_lambda2(theta * theta / 4 * l.config.k);
    const std::size_t n = l.file.terms.size();
    int bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<BigRational> a(n);
      for (auto& x : a) x = ratio(num(rng), den(rng));
      if (std::all_of(a.begin(), a.end(), [](const BigRational& x) { return x == 0; })) a[0] = 1;
      const LogLinearScalar floor = quadratic_value(l.forms.Jtilde, a) - quadratic_value(l.forms.J, a).q0 * scale;
      const Interval v =
          eval_interval(floor, theta, 512) / Interval::from_rational(quadratic_value(l.forms.I, a).q0, 512);
      const bool upper = mpfr_sgn(v.upper_ptr()) > 0;
      const bool lower = theta == 1 || v.lower() >= -1e-20;
      if (!(upper && lower)) ++bad;
    }
    if (bad) {
      ok = false;
      detail << " k=" << row.k << " " << bad << "/100 vectors violate the floor;";
    }
  }
  rep.add(7, ok, "A_I minors positive and floor inequality for 100 vectors per configuration" + detail.str());
}

void criterion8(Report& rep) {
  const std::map<int, long> expected{{3, 6},   {4, 8},   {5, 12},   {6, 16},   {7, 20},   {10, 32},  {16, 60},
                                     {23, 94}, {25, 110}, {37, 168}, {49, 240}, {102, 576}, {225, 1440}};
  bool ok = true;
  std::ostringstream detail;
  for (const auto& [k, h] : expected) {
    const Tuple t = load_bundled(k);
    if (!(t.size() == static_cast<std::size_t>(k) && diameter(t) == h && is_admissible(t).admissible)) {
      ok = false;
      detail << " k=" << k << " bundled tuple wrong;";
    }
  }
  const Tuple found = greedy_search(10);
  const bool search_ok = is_admissible(found).admissible && found.size() == 10 && diameter(found) <= 32;
  detail << " greedy k=10 diameter " << diameter(found);
  rep.add(8, ok && search_ok, "bundled tuples admissible with expected diameters;" + detail.str());
}

}  // namespace

int main() {
  Report rep;
  const std::vector<void (*)(Report&)> criteria{criterion1, criterion2, criterion3, criterion4,
                                                criterion5, criterion6, criterion7, criterion8};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i](rep);
    } catch (const std::exception& e) {
      rep.add(static_cast<int>(i + 1), false, std::string("threw: ") + e.what());
    }
  }
  return rep.all() ? 0 : 1;
}
