// e2sieve: certificates for sieve ratios, integral oracles and admissible tuples.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "e2sieve/records.hpp"

using namespace e2sieve;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitInput = 4;

struct GlobalOptions {
  long precision_bits = 256;
  long max_precision_bits = 1024;
  std::uint64_t seed = 1;
  std::string denominator_bound = "1e21";
  std::string output;
  bool timing = false;
};

// Records go to --output when given, else stdout; the human summary takes
// whichever stream is left.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file " + path);
    }
  }
  std::ostream& records() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  std::ostream& summary() { return file_.is_open() ? std::cout : std::cerr; }

 private:
  std::ofstream file_;
};

BigInt parse_bound(const std::string& text) {
  const auto e = text.find_first_of("eE");
  try {
    if (e == std::string::npos) return BigInt(text);
    BigInt mantissa(text.substr(0, e));
    const long exponent = std::stol(text.substr(e + 1));
    if (exponent < 0) throw std::invalid_argument("negative exponent");
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent));
    return mantissa * scale;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad denominator bound: " + text);
  }
}

CertifyOptions certify_options(const GlobalOptions& g) {
  return {static_cast<mpfr_prec_t>(g.precision_bits), static_cast<mpfr_prec_t>(g.max_precision_bits)};
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return kExitPass;
    case Verdict::fail:
      return kExitFail;
    case Verdict::inconclusive:
      return kExitInconclusive;
  }
  return kExitInconclusive;
}

// worst verdict wins: fail over inconclusive over pass
int merge_exit(int a, int b) {
  if (a == kExitFail || b == kExitFail) return kExitFail;
  return std::max(a, b);
}

class Timer {
 public:
  std::optional<double> elapsed(bool wanted) const {
    if (!wanted) return std::nullopt;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct TableRow {
  int k;
  int nu;
  BigRational theta;
  long h;  // diameter of the bundled tuple
};

const std::vector<TableRow>& table_rows() {
  static const std::vector<TableRow> rows{
      {23, 3, ratio(1, 2), 94},   {10, 3, 1, 32},  {49, 4, ratio(1, 2), 240}, {16, 4, 1, 60},
      {102, 5, ratio(1, 2), 576}, {25, 5, 1, 110}, {225, 6, ratio(1, 2), 1440}, {37, 6, 1, 168}};
  return rows;
}

struct RowResult {
  RunRecord record;
  std::string line;
  int exit = kExitPass;
};

RowResult run_table_row(const TableRow& row, const GlobalOptions& g) {
  const Timer timer;
  const CoefficientFile file = load_fixture_coefficients(row.k);
  SieveConfig config{row.k, file.theta, row.nu, static_cast<int>(file.terms.size())};
  if (file.theta != row.theta) throw std::invalid_argument("fixture theta disagrees with the table row");
  const Certificate cert = certify(config, file.terms, file.coeffs, certify_options(g));

  const Tuple tuple = load_bundled(row.k);
  const Admissibility adm = is_admissible(tuple);
  const bool tuple_ok = adm.admissible && diameter(tuple) == row.h;

  std::ostringstream line;
  const bool unconditional = (row.theta != 1);
  line << "nu=" << row.nu << (unconditional ? " unconditional" : " EH (theta=1)") << ": G~_" << row.nu
       << " <= H(" << row.k << ") = " << diameter(tuple) << "   R_" << row.k << " = " << cert.ratio.lower_string(16)
       << "  [" << to_string(cert.verdict) << ", " << cert.precision_bits << " bits"
       << (tuple_ok ? "" : ", TUPLE CHECK FAILED") << "]";

  RowResult out;
  out.record.command = "table";
  out.record.config = to_json(config);
  out.record.inputs = Json{{"coeffs", "k" + std::to_string(row.k) + ".json"},
                           {"tuple", "tuples/k" + std::to_string(row.k) + ".txt"}};
  Json tuple_json = to_json(tuple);
  tuple_json["admissible"] = adm.admissible;
  tuple_json["expected_diameter"] = row.h;
  out.record.outputs = Json{{"certificate", to_json(cert)}, {"tuple", std::move(tuple_json)}, {"bound", line.str()}};
  out.record.precision_bits = static_cast<long>(cert.precision_bits);
  out.record.seed = g.seed;
  out.record.wall_time = timer.elapsed(g.timing);
  out.line = line.str();
  out.exit = tuple_ok ? exit_code(cert.verdict) : kExitFail;
  return out;
}

int cmd_table(const GlobalOptions& g, Sink& sink) {
  std::vector<std::future<RowResult>> jobs;
  for (const TableRow& row : table_rows()) {
    jobs.push_back(std::async(std::launch::async, run_table_row, row, g));
  }
  int status = kExitPass;
  for (auto& job : jobs) {
    RowResult r = job.get();
    sink.records() << to_json(r.record).dump() << '\n';
    sink.summary() << r.line << '\n';
    status = merge_exit(status, r.exit);
  }
  return status;
}

struct CertifyArgs {
  int k = 0;
  std::string theta = "1";
  int nu = 0;
  std::string coeffs;
  int optimize = 0;
  int digits = 40;
};

int cmd_certify(const CertifyArgs& args, const GlobalOptions& g, Sink& sink) {
  const Timer timer;
  SieveConfig config{args.k, parse_rational(args.theta), args.nu, 1};
  RunRecord record;
  record.command = "certify";
  record.seed = g.seed;
  Certificate cert;
  if (!args.coeffs.empty()) {
    const CoefficientFile file = load_coefficients(args.coeffs);
    if (file.k != args.k || file.theta != config.theta) {
      throw std::invalid_argument("coefficient file k/theta disagree with --k/--theta");
    }
    config.nterms = static_cast<int>(file.terms.size());
    cert = certify(config, file.terms, file.coeffs, certify_options(g));
    record.inputs = Json{{"coeffs", args.coeffs}};
    record.outputs = Json{{"certificate", to_json(cert)}};
  } else {
    config.nterms = args.optimize;
    config.validate();
    const std::vector<BasisTerm> terms = basis_sequence(args.optimize);
    OptimizeOptions opt;
    opt.digits = args.digits;
    opt.denominator_bound = parse_bound(g.denominator_bound);
    if (opt.max_denominator_bound < opt.denominator_bound) opt.max_denominator_bound = opt.denominator_bound;
    opt.certify = certify_options(g);
    const OptimizedCertificate best = optimize_and_certify(config, build_forms(config, terms), opt);
    cert = best.certificate;
    record.inputs = Json{{"optimize", args.optimize}, {"digits", args.digits}};
    std::ostringstream estimate;
    estimate.precision(17);
    estimate << best.ratio_estimate;
    record.outputs = Json{{"certificate", to_json(cert)},
                          {"ratio_estimate", estimate.str()},
                          {"denominator_bound", best.denominator_bound.get_str()}};
  }
  record.config = to_json(config);
  record.precision_bits = static_cast<long>(cert.precision_bits);
  record.wall_time = timer.elapsed(g.timing);
  sink.records() << to_json(record).dump() << '\n';
  sink.summary() << "k=" << config.k << " theta=" << format_rational(config.theta) << " nu=" << config.nu
                 << ": R in [" << cert.ratio.lower_string(16) << ", " << cert.ratio.upper_string(16) << "], D >= "
                 << cert.D_lower(16) << " -> " << to_string(cert.verdict) << " (" << cert.precision_bits
                 << " bits)\n";
  return exit_code(cert.verdict);
}

int emit_checks(const std::string& command, const std::vector<oracle::Check>& checks, const GlobalOptions& g,
                Sink& sink, const Timer& timer) {
  RunRecord record;
  record.command = command;
  record.seed = g.seed;
  record.precision_bits = g.precision_bits;
  Json list = Json::array();
  int failed = 0;
  for (const oracle::Check& c : checks) {
    list.push_back(to_json(c));
    if (!c.pass) {
      ++failed;
      sink.summary() << "FAIL " << c.name << ": estimate " << c.estimate << " target " << c.target << " error "
                     << c.error << " > " << c.tolerance << '\n';
    }
  }
  record.outputs = Json{{"checks", std::move(list)}, {"failed", failed}};
  record.wall_time = timer.elapsed(g.timing);
  sink.records() << to_json(record).dump() << '\n';
  sink.summary() << command << ": " << (checks.size() - static_cast<std::size_t>(failed)) << "/" << checks.size()
                 << " checks pass\n";
  return failed ? kExitFail : kExitPass;
}

int cmd_oracle_lemma(const GlobalOptions& g, Sink& sink) {
  const Timer timer;
  std::vector<oracle::Check> checks = oracle::verify_lemma(2, 1, 3, 1e-6);
  for (long n = 1; n <= 12; ++n) {
    for (long m = 1; m <= n; ++m) {
      const bool ok = oracle::verify_binomial_identity(n, m);
      checks.push_back({"binomial n=" + std::to_string(n) + " m=" + std::to_string(m), ok ? 1.0 : 0.0, 1.0,
                        ok ? 0.0 : 1.0, 0.0, ok});
    }
  }
  return emit_checks("oracle lemma7", checks, g, sink, timer);
}

int cmd_oracle_forms(const GlobalOptions& g, Sink& sink) {
  const Timer timer;
  std::vector<oracle::Check> checks;
  for (const BigRational& theta : {BigRational(1), ratio(1, 2)}) {
    for (int k : {2, 3}) {
      for (int b = 0; b <= 1; ++b) {
        for (int c = 0; c <= 1; ++c) {
          for (oracle::Check& ch : oracle::verify_forms(k, theta, {b, c})) checks.push_back(std::move(ch));
        }
      }
    }
  }
  return emit_checks("oracle forms", checks, g, sink, timer);
}

struct X0Args {
  long m = 0;
  long n = -1;
  std::string theta;
  double eta = 1e-4;
};

int cmd_oracle_x0(const X0Args& args, const GlobalOptions& g, Sink& sink) {
  const Timer timer;
  std::vector<oracle::Check> checks;
  auto run = [&](long m, long n, const BigRational& theta) {
    for (oracle::Check& ch : oracle::verify_x0_integrals(m, n, theta, args.eta, static_cast<int>(g.precision_bits))) {
      ch.name += " m=" + std::to_string(m) + " n=" + std::to_string(n) + " theta=" + format_rational(theta);
      checks.push_back(std::move(ch));
    }
  };
  const std::vector<BigRational> thetas =
      args.theta.empty() ? std::vector<BigRational>{1, ratio(1, 2)} : std::vector<BigRational>{parse_rational(args.theta)};
  const long m_lo = args.m > 0 ? args.m : 1, m_hi = args.m > 0 ? args.m : 3;
  const long n_lo = args.n >= 0 ? args.n : 0, n_hi = args.n >= 0 ? args.n : 3;
  for (const BigRational& theta : thetas) {
    for (long m = m_lo; m <= m_hi; ++m) {
      for (long n = n_lo; n <= n_hi; ++n) run(m, n, theta);
    }
  }
  return emit_checks("oracle x0", checks, g, sink, timer);
}

int cmd_tuple_check(const std::string& path, const GlobalOptions& g, Sink& sink) {
  const Tuple t = read_tuple_file(path);
  const Admissibility adm = is_admissible(t);
  RunRecord record;
  record.command = "tuple check";
  record.seed = g.seed;
  record.inputs = Json{{"file", path}};
  Json out = to_json(t);
  out["admissible"] = adm.admissible;
  out["witness"] = adm.witness ? Json(*adm.witness) : Json(nullptr);
  record.outputs = std::move(out);
  sink.records() << to_json(record).dump() << '\n';
  sink.summary() << path << ": k=" << t.size() << " diameter " << diameter(t)
                 << (adm.admissible ? " admissible" : " not admissible (covers every class mod " +
                                                           std::to_string(*adm.witness) + ")")
                 << '\n';
  return adm.admissible ? kExitPass : kExitFail;
}

int cmd_tuple_search(int k, const std::string& strategy, long budget, const GlobalOptions& g, Sink& sink) {
  const Timer timer;
  SearchBudget b;
  b.seed = g.seed;
  if (budget > 0) b.steps = budget;
  const SearchStrategy s =
      (strategy == "shifted") ? SearchStrategy::shifted_primes : SearchStrategy::greedy_residue_sieve;
  const Tuple t = greedy_search(k, s, b);
  RunRecord record;
  record.command = "tuple search";
  record.seed = g.seed;
  record.config = Json{{"k", k}, {"strategy", strategy}, {"budget", b.steps}};
  record.outputs = to_json(t);
  record.wall_time = timer.elapsed(g.timing);
  sink.records() << to_json(record).dump() << '\n';
  std::ostringstream elems;
  write_tuple(elems, t);
  sink.summary() << "k=" << k << " diameter " << diameter(t) << ": " << elems.str();
  return kExitPass;
}

int cmd_matrix(int k, const std::string& theta_text, int nterms, const std::string& which, Sink& sink) {
  const BigRational theta = parse_rational(theta_text);
  SieveConfig config{k, theta, 1, nterms};
  config.validate();
  const std::vector<BasisTerm> terms = basis_sequence(nterms);
  const SieveForms forms = build_forms(config, terms);
  const QuadraticForm* form = nullptr;
  if (which == "I") form = &forms.I;
  if (which == "J") form = &forms.J;
  if (which == "Ltilde") form = &forms.Ltilde;
  if (which == "Mtilde") form = &forms.Mtilde;
  if (which == "Jtilde") form = &forms.Jtilde;
  if (!form) throw std::invalid_argument("unknown form " + which);
  Json dump = matrix_dump(*form, k, theta, terms);
  dump["form"] = which;
  sink.records() << dump.dump() << '\n';
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified sieve ratios for E2-number gaps, with integral oracles and admissible tuples"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_option("--precision-bits", g.precision_bits, "Starting interval precision")->capture_default_str();
  app.add_option("--max-precision-bits", g.max_precision_bits, "Precision cap for escalation")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomized steps")->capture_default_str();
  app.add_option("--denominator-bound", g.denominator_bound, "Rationalization bound, e.g. 1e21")->capture_default_str();
  app.add_option("--output", g.output, "Write records here instead of stdout");
  app.add_flag("--timing", g.timing, "Record wall time (breaks byte-identical output)");

  auto* table = app.add_subcommand("table", "Recompute the eight bound rows from the bundled fixtures");

  CertifyArgs cargs;
  auto* certify_cmd = app.add_subcommand("certify", "Certify R_k > nu for a coefficient file or an optimized vector");
  certify_cmd->add_option("--k", cargs.k, "Tuple size")->required();
  certify_cmd->add_option("--theta", cargs.theta, "Level of distribution p/q")->capture_default_str();
  certify_cmd->add_option("--nu", cargs.nu, "Threshold")->required();
  auto* source = certify_cmd->add_option_group("source", "Exactly one of --coeffs and --optimize");
  source->add_option("--coeffs", cargs.coeffs, "Coefficient JSON file");
  source->add_option("--optimize", cargs.optimize, "Optimize over this many basis terms");
  source->require_option(1);
  certify_cmd->add_option("--digits", cargs.digits, "Working digits for the eigen solve")->capture_default_str();

  auto* oracle_cmd = app.add_subcommand("oracle", "Numerical checks of the integral identities");
  oracle_cmd->require_subcommand(1);
  auto* lemma = oracle_cmd->add_subcommand("lemma7", "Simplex lemma and binomial identity");
  auto* forms = oracle_cmd->add_subcommand("forms", "I, J and tilde forms against quadrature");
  X0Args xargs;
  auto* x0 = oracle_cmd->add_subcommand("x0", "mu, log and lambda integrals against closed forms");
  x0->add_option("--m", xargs.m, "Single m (default 1..3)");
  x0->add_option("--n", xargs.n, "Single n (default 0..3)");
  x0->add_option("--theta", xargs.theta, "Single theta (default 1 and 1/2)");
  x0->add_option("--eta", xargs.eta, "Cutoff eta")->capture_default_str();

  auto* tuple_cmd = app.add_subcommand("tuple", "Admissible tuples");
  tuple_cmd->require_subcommand(1);
  std::string tuple_path;
  auto* check = tuple_cmd->add_subcommand("check", "Check a tuple file");
  check->add_option("file", tuple_path, "Whitespace-separated integers")->required();
  int search_k = 0;
  std::string strategy = "greedy";
  long budget = 0;
  auto* search = tuple_cmd->add_subcommand("search", "Search for a narrow admissible tuple");
  search->add_option("--k", search_k, "Tuple size")->required();
  search->add_option("--strategy", strategy, "greedy or shifted")
      ->check(CLI::IsMember({"greedy", "shifted"}))
      ->capture_default_str();
  search->add_option("--budget", budget, "Step budget (0 = default)");

  int mk = 2, mterms = 1;
  std::string mtheta = "1", mform = "Jtilde";
  auto* matrix = app.add_subcommand("matrix", "Dump a form's exact entries");
  matrix->add_option("--k", mk)->required();
  matrix->add_option("--theta", mtheta)->capture_default_str();
  matrix->add_option("--nterms", mterms)->required();
  matrix->add_option("--form", mform, "I, J, Ltilde, Mtilde or Jtilde")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    Sink sink(g.output);
    if (*table) return cmd_table(g, sink);
    if (*certify_cmd) return cmd_certify(cargs, g, sink);
    if (*lemma) return cmd_oracle_lemma(g, sink);
    if (*forms) return cmd_oracle_forms(g, sink);
    if (*x0) return cmd_oracle_x0(xargs, g, sink);
    if (*check) return cmd_tuple_check(tuple_path, g, sink);
    if (*search) return cmd_tuple_search(search_k, strategy, budget, g, sink);
    if (*matrix) return cmd_matrix(mk, mtheta, mterms, mform, sink);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const OptimizerError& e) {
    std::cerr << "optimizer: " << e.what() << '\n';
    return kExitInconclusive;
  } catch (const SearchExhausted& e) {
    std::cerr << "search: " << e.what() << '\n';
    return kExitInconclusive;
  }
  return kExitInput;
}
