#include "e2sieve/optimizer.hpp"

#include <map>

namespace e2sieve {

BigRational to_rational(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize a non-finite value");
  return BigRational(x);  // exact binary value
}

BigRational to_rational(const MpReal& x) {
  if (!boost::multiprecision::isfinite(x)) {
    throw std::invalid_argument("cannot rationalize a non-finite value");
  }
  BigRational q;
  mpfr_get_q(q.get_mpq_t(), x.backend().data());
  return q;
}

template <>
double interval_midpoint<double>(const Interval& x) {
  return x.mid();
}

template <>
MpReal interval_midpoint<MpReal>(const Interval& x) {
  MpReal r;
  mpfr_add(r.backend().data(), x.lower_ptr(), x.upper_ptr(), MPFR_RNDN);
  mpfr_div_2ui(r.backend().data(), r.backend().data(), 1, MPFR_RNDN);
  return r;
}

namespace {

template <class Real>
Real entry_midpoint(const LogLinearScalar& s, const BigRational& theta, mpfr_prec_t bits,
                    std::map<mpfr_prec_t, LogConstants>& logs) {
  constexpr mpfr_prec_t kPrecisionCap = 1 << 16;
  for (mpfr_prec_t p = bits + 64;; p *= 2) {
    auto it = logs.find(p);
    if (it == logs.end()) it = logs.emplace(p, log_constants(theta, p)).first;
    const Interval v = eval_interval(s, it->second);
    if (v.tight(bits) || p >= kPrecisionCap) return interval_midpoint<Real>(v);
  }
}

}  // namespace

template <class Real>
DenseMatrix<Real> to_real_matrix(const QuadraticForm& form, const BigRational& theta, mpfr_prec_t bits) {
  std::map<mpfr_prec_t, LogConstants> logs;
  DenseMatrix<Real> out(form.rows(), form.cols());
  for (Eigen::Index i = 0; i < form.rows(); ++i) {
    for (Eigen::Index j = 0; j < form.cols(); ++j) {
      out(i, j) = entry_midpoint<Real>(form(i, j), theta, bits, logs);
    }
  }
  return out;
}

template DenseMatrix<double> to_real_matrix<double>(const QuadraticForm&, const BigRational&, mpfr_prec_t);
template DenseMatrix<MpReal> to_real_matrix<MpReal>(const QuadraticForm&, const BigRational&, mpfr_prec_t);

RayleighMaximum<MpReal> max_rayleigh(const QuadraticForm& a_i, const QuadraticForm& a_jtilde,
                                     const BigRational& theta, int digits) {
  if (digits < 1) throw std::invalid_argument("digits must be positive");
  // guard digits absorb the conditioning of the monomial-type basis
  const int working_digits = 2 * digits + 30;
  DigitsScope scope(static_cast<unsigned>(working_digits));
  const auto bits = static_cast<mpfr_prec_t>(working_digits * 3.33) + 16;
  const DenseMatrix<MpReal> i_real = to_real_matrix<MpReal>(a_i, theta, bits);
  const DenseMatrix<MpReal> j_real = to_real_matrix<MpReal>(a_jtilde, theta, bits);
  const MpReal theta_real = interval_midpoint<MpReal>(Interval::from_rational(theta, bits));
  return max_rayleigh<MpReal>(i_real, j_real, theta_real, digits);
}

BigRational best_convergent(const BigRational& x, const BigInt& bound) {
  if (bound < 1) throw std::invalid_argument("denominator bound must be at least 1");
  BigInt p_prev = 1, q_prev = 0;
  BigInt p = 0, q = 1;
  BigInt num = x.get_num(), den = x.get_den();
  bool first = true;
  while (true) {
    BigInt a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    BigInt p_next = first ? a : BigInt(a * p + p_prev);
    BigInt q_next = first ? BigInt(1) : BigInt(a * q + q_prev);
    if (q_next > bound) break;
    if (!first) {
      p_prev = p;
      q_prev = q;
    }
    p = p_next;
    q = q_next;
    first = false;
    BigInt rem = num - a * den;
    if (rem == 0) break;
    num = den;
    den = rem;
  }
  return ratio(p, q);
}

std::vector<BigRational> rationalize(std::span<const BigRational> v, const BigInt& bound) {
  BigRational scale = 0;
  for (const BigRational& x : v) {
    if (abs(x) > scale) scale = abs(x);
  }
  if (scale == 0) throw std::invalid_argument("cannot rationalize the zero vector");
  std::vector<BigRational> out;
  out.reserve(v.size());
  for (const BigRational& x : v) out.push_back(best_convergent(x / scale, bound));
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Certificate certify(const SieveConfig& config, std::span<const BasisTerm> terms,
                    std::span<const BigRational> a, const SieveForms& forms,
                    const CertifyOptions& options) {
  config.validate();
  if (options.start_precision < 2 || options.max_precision < options.start_precision) {
    throw std::invalid_argument("bad certification precision range");
  }
  // evaluate_ratio validates the vector and the positivity of (theta/2) a^T A_I a
  const RatioEvaluation first = evaluate_ratio(a, config, forms, options.start_precision);

  Certificate cert;
  cert.config = config;
  cert.terms.assign(terms.begin(), terms.end());
  cert.a.assign(a.begin(), a.end());
  cert.D = first.numerator - LogLinearScalar(first.denominator * config.nu);

  for (mpfr_prec_t p = options.start_precision; p <= options.max_precision; p *= 2) {
    cert.precision_bits = p;
    cert.D_enclosure = eval_interval(cert.D, config.theta, p);
    if (cert.D_enclosure.positive()) {
      cert.verdict = Verdict::pass;
    } else if (mpfr_sgn(cert.D_enclosure.upper_ptr()) <= 0) {
      cert.verdict = Verdict::fail;
    } else {
      cert.verdict = Verdict::inconclusive;
      continue;
    }
    break;
  }
  // R is only reported, so it may keep escalating past the verdict precision
  for (mpfr_prec_t p = cert.precision_bits;; p *= 2) {
    cert.ratio = eval_interval(first.numerator, config.theta, p) / Interval::from_rational(first.denominator, p);
    if (cert.ratio.tight(72) || p >= 8 * options.max_precision) break;
  }
  return cert;
}

Certificate certify(const SieveConfig& config, std::span<const BasisTerm> terms,
                    std::span<const BigRational> a, const CertifyOptions& options) {
  return certify(config, terms, a, build_forms(config, terms), options);
}

OptimizedCertificate optimize_and_certify(const SieveConfig& config, const SieveForms& forms,
                                          const OptimizeOptions& options) {
  config.validate();
  const RayleighMaximum<MpReal> best = max_rayleigh(forms.I, forms.Jtilde, config.theta, options.digits);
  const std::vector<BasisTerm> terms = basis_sequence(config.nterms);

  OptimizedCertificate out{Certificate{}, best.ratio.convert_to<double>(), options.denominator_bound};
  for (BigInt bound = options.denominator_bound; bound <= options.max_denominator_bound; bound *= 1000) {
    DigitsScope scope(static_cast<unsigned>(2 * options.digits + 30));
    const std::vector<BigRational> a = rationalize<MpReal>(best.vector, bound);
    out.certificate = certify(config, terms, a, forms, options.certify);
    out.denominator_bound = bound;
    if (out.certificate.verdict == Verdict::pass) break;
  }
  return out;
}

}  // namespace e2sieve
