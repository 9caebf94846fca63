#include "e2sieve/forms.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

namespace e2sieve {

void SieveConfig::validate() const {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (nu < 1) throw std::invalid_argument("nu must be at least 1");
  if (nterms < 1) throw std::invalid_argument("nterms must be at least 1");
  require_theta(theta);
}

namespace {

BigRational fact(long n) { return BigRational(factorial(static_cast<unsigned>(n))); }
BigRational binom(long n, long k) { return BigRational(binomial(n, k)); }

void require_terms(int k, std::span<const BasisTerm> terms) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (terms.empty()) throw std::invalid_argument("basis must be nonempty");
  for (const BasisTerm& t : terms) {
    if (t.b < 0 || t.c < 0) throw std::invalid_argument("negative basis exponent");
  }
}

QuadraticForm zero_form(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  return QuadraticForm::Constant(dim, dim, LogLinearScalar());
}

// Sums over the x0 integrals, memoized per (k, theta). Every tilde entry
// reduces to rational combinations of
//   lambda_sum(n0, d)  = sum_{d1<=d} (-1)^d1 C(d,d1) lambda_{n0+d1} / (n0+d1)
//   mu_sum(m, n0, e)   = sum_{e1<=e} (-1)^e1 C(e,e1) mu_{m,n0+e1}   / (n0+e1)
class TildeAssembler {
 public:
  TildeAssembler(int k, BigRational theta) : k_(k), theta_(std::move(theta)) {}

  RawTildeForms build(std::span<const BasisTerm> terms) {
    const std::size_t n = terms.size();
    RawTildeForms out{zero_form(n), zero_form(n)};
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto [l, m] = entry(terms[i], terms[j]);
        out.ltilde(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::move(l);
        out.mtilde(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::move(m);
      }
    }
    return out;
  }

 private:
  std::pair<LogLinearScalar, LogLinearScalar> entry(const BasisTerm& ti, const BasisTerm& tj) {
    const int bi = ti.b, bj = tj.b, ci = ti.c, cj = tj.c;
    LogLinearScalar l_total, m_total;
    for (int c1 = 0; c1 <= ci; ++c1) {
      for (int c2 = 0; c2 <= cj; ++c2) {
        const int c = c1 + c2;
        const long n0 = k_ - 1 + 2 * c;
        const BigRational prefix =
            binom(ci, c1) * binom(cj, c2) * q_eval(c, k_ - 1) / fact(k_ + 2 * c - 2);
        const int mi = 2 * ci - 2 * c1;  // leftover power of x1 from P2^ci
        const int mj = 2 * cj - 2 * c2;

        const BigRational delta =
            fact(bi) * fact(bj) * fact(mi) * fact(mj) / (fact(bi + mi + 1) * fact(bj + mj + 1));
        const LogLinearScalar lam_part = lambda_sum(n0, bi + bj + mi + mj + 2) * delta;

        LogLinearScalar eps_part;
        const BigRational eps_common = fact(bj) * fact(mj) / fact(bj + mj + 1);
        for (int b1 = 0; b1 <= bi; ++b1) {
          BigRational coeff = binom(bi, b1) * eps_common / (b1 + mi + 1);
          if (b1 % 2 == 1) coeff = -coeff;
          const int e = bi - b1 + bj + mj + 1;
          eps_part += mu_sum(b1 + mi + 1, n0, e) * coeff;
        }

        // zeta terms depend on (b1', b2') only through s = b1' + b2'
        LogLinearScalar zeta_part;
        for (int s = 0; s <= bi + bj; ++s) {
          BigRational coeff = 0;
          for (int b1 = std::max(0, s - bj); b1 <= std::min(bi, s); ++b1) {
            const int b2 = s - b1;
            coeff += binom(bi, b1) * binom(bj, b2) / ((b1 + mi + 1) * (b2 + mj + 1));
          }
          if (coeff == 0) continue;
          if (s % 2 == 1) coeff = -coeff;
          zeta_part += mu_sum(mi + mj + s + 2, n0, bi + bj - s) * coeff;
        }

        l_total += (lam_part - eps_part) * prefix;
        m_total += (lam_part - eps_part * BigRational(2) + zeta_part) * prefix;
      }
    }
    m_total *= theta_ / 2;
    return {std::move(l_total), std::move(m_total)};
  }

  const LogLinearScalar& mu_value(long m, long n) {
    auto key = std::make_pair(m, n);
    auto it = mu_cache_.find(key);
    if (it == mu_cache_.end()) it = mu_cache_.emplace(key, mu(m, n, theta_)).first;
    return it->second;
  }

  const LogLinearScalar& lambda_value(long n) {
    auto it = lambda_cache_.find(n);
    if (it == lambda_cache_.end()) it = lambda_cache_.emplace(n, lambda_n(n, theta_)).first;
    return it->second;
  }

  const LogLinearScalar& lambda_sum(long n0, int d) {
    auto key = std::make_pair(n0, d);
    auto it = lambda_sum_cache_.find(key);
    if (it != lambda_sum_cache_.end()) return it->second;
    LogLinearScalar total;
    for (int d1 = 0; d1 <= d; ++d1) {
      BigRational coeff = ratio(binomial(d, d1), n0 + d1);
      if (d1 % 2 == 1) coeff = -coeff;
      total += lambda_value(n0 + d1) * coeff;
    }
    return lambda_sum_cache_.emplace(key, std::move(total)).first->second;
  }

  const LogLinearScalar& mu_sum(long m, long n0, int e) {
    auto key = std::make_tuple(m, n0, e);
    auto it = mu_sum_cache_.find(key);
    if (it != mu_sum_cache_.end()) return it->second;
    LogLinearScalar total;
    for (int e1 = 0; e1 <= e; ++e1) {
      BigRational coeff = ratio(binomial(e, e1), n0 + e1);
      if (e1 % 2 == 1) coeff = -coeff;
      total += mu_value(m, n0 + e1) * coeff;
    }
    return mu_sum_cache_.emplace(key, std::move(total)).first->second;
  }

  int k_;
  BigRational theta_;
  std::map<std::pair<long, long>, LogLinearScalar> mu_cache_;
  std::map<long, LogLinearScalar> lambda_cache_;
  std::map<std::pair<long, int>, LogLinearScalar> lambda_sum_cache_;
  std::map<std::tuple<long, long, int>, LogLinearScalar> mu_sum_cache_;
};

}  // namespace

QuadraticForm build_I(int k, std::span<const BasisTerm> terms) {
  require_terms(k, terms);
  const std::size_t n = terms.size();
  QuadraticForm out = zero_form(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const int b = terms[i].b + terms[j].b;
      const int c = terms[i].c + terms[j].c;
      const BigRational v = fact(b) * q_eval(c, k) / fact(k + b + 2 * c);
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  return out;
}

QuadraticForm build_J(int k, std::span<const BasisTerm> terms) {
  require_terms(k, terms);
  const std::size_t n = terms.size();
  QuadraticForm out = zero_form(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const int bi = terms[i].b, bj = terms[j].b, ci = terms[i].c, cj = terms[j].c;
      const BigRational denom = fact(k + bi + bj + 2 * ci + 2 * cj + 1);
      BigRational v = 0;
      for (int c1 = 0; c1 <= ci; ++c1) {
        for (int c2 = 0; c2 <= cj; ++c2) {
          const int mi = 2 * ci - 2 * c1, mj = 2 * cj - 2 * c2;
          const BigRational gamma = fact(bi) * fact(bj) * fact(mi) * fact(mj) *
                                    fact(bi + bj + mi + mj + 2) /
                                    (fact(bi + mi + 1) * fact(bj + mj + 1));
          v += binom(ci, c1) * binom(cj, c2) * gamma * q_eval(c1 + c2, k - 1);
        }
      }
      v /= denom;
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  return out;
}

RawTildeForms build_raw_tilde(int k, const BigRational& theta, std::span<const BasisTerm> terms) {
  require_terms(k, terms);
  require_theta(theta);
  TildeAssembler assembler(k, theta);
  return assembler.build(terms);
}

QuadraticForm symmetrize(const QuadraticForm& raw) {
  if (raw.rows() != raw.cols()) throw std::invalid_argument("form must be square");
  QuadraticForm out = raw;
  const BigRational half(1, 2);
  for (Eigen::Index i = 0; i < raw.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < raw.cols(); ++j) {
      LogLinearScalar v = (raw(i, j) + raw(j, i)) * half;
      out(i, j) = v;
      out(j, i) = std::move(v);
    }
  }
  return out;
}

bool is_symmetric(const QuadraticForm& form) {
  if (form.rows() != form.cols()) return false;
  for (Eigen::Index i = 0; i < form.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < form.cols(); ++j) {
      if (!(form(i, j) == form(j, i))) return false;
    }
  }
  return true;
}

QuadraticForm build_Ltilde(int k, const BigRational& theta, std::span<const BasisTerm> terms) {
  return symmetrize(build_raw_tilde(k, theta, terms).ltilde);
}

QuadraticForm build_Mtilde(int k, const BigRational& theta, std::span<const BasisTerm> terms) {
  return symmetrize(build_raw_tilde(k, theta, terms).mtilde);
}

QuadraticForm combine_Jtilde(int k, const BigRational& theta, const QuadraticForm& a_ltilde,
                             const QuadraticForm& a_j, const QuadraticForm& a_mtilde) {
  const BigRational l_scale = -theta * k;
  // Lambda2 = log(2/theta - 1) vanishes at theta = 1, so drop it there exactly
  const BigRational j_scale = (theta == 1) ? BigRational(0) : BigRational(theta * theta / 4 * k);
  const BigRational m_scale = k;
  QuadraticForm out = zero_form(static_cast<std::size_t>(a_j.rows()));
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      if (!a_j(i, j).is_rational()) throw std::domain_error("A_J must be rational");
      out(i, j) = a_ltilde(i, j) * l_scale + times_lambda2(a_j(i, j).q0 * j_scale) +
                  a_mtilde(i, j) * m_scale;
    }
  }
  return out;
}

QuadraticForm build_Jtilde(int k, const BigRational& theta, std::span<const BasisTerm> terms) {
  const RawTildeForms raw = build_raw_tilde(k, theta, terms);
  return combine_Jtilde(k, theta, symmetrize(raw.ltilde), build_J(k, terms), symmetrize(raw.mtilde));
}

SieveForms build_forms(const SieveConfig& config, std::span<const BasisTerm> terms) {
  config.validate();
  if (static_cast<int>(terms.size()) != config.nterms) {
    throw std::invalid_argument("basis length differs from config.nterms");
  }
  SieveForms forms;
  forms.I = build_I(config.k, terms);
  forms.J = build_J(config.k, terms);
  const RawTildeForms raw = build_raw_tilde(config.k, config.theta, terms);
  forms.Ltilde = symmetrize(raw.ltilde);
  forms.Mtilde = symmetrize(raw.mtilde);
  forms.Jtilde = combine_Jtilde(config.k, config.theta, forms.Ltilde, forms.J, forms.Mtilde);
  return forms;
}

LogLinearScalar quadratic_value(const QuadraticForm& form, std::span<const BigRational> a) {
  if (static_cast<Eigen::Index>(a.size()) != form.rows() || form.rows() != form.cols()) {
    throw std::invalid_argument("coefficient vector does not match the form");
  }
  LogLinearScalar total;
  for (Eigen::Index i = 0; i < form.rows(); ++i) {
    if (a[static_cast<std::size_t>(i)] == 0) continue;
    LogLinearScalar row;
    for (Eigen::Index j = 0; j < form.cols(); ++j) {
      if (a[static_cast<std::size_t>(j)] == 0) continue;
      row += form(i, j) * a[static_cast<std::size_t>(j)];
    }
    total += row * a[static_cast<std::size_t>(i)];
  }
  return total;
}

DenseMatrix<BigRational> rational_matrix(const QuadraticForm& form) {
  DenseMatrix<BigRational> out(form.rows(), form.cols());
  for (Eigen::Index i = 0; i < form.rows(); ++i) {
    for (Eigen::Index j = 0; j < form.cols(); ++j) {
      if (!form(i, j).is_rational()) throw std::domain_error("form entry carries a logarithm");
      out(i, j) = form(i, j).q0;
    }
  }
  return out;
}

namespace {

BigRational determinant(DenseMatrix<BigRational> m) {
  const Eigen::Index n = m.rows();
  BigRational det = 1;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      m.row(pivot).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      const BigRational f = m(r, col) / m(col, col);
      for (Eigen::Index c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

}  // namespace

std::vector<BigRational> leading_principal_minors(const DenseMatrix<BigRational>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  const Eigen::Index n = m.rows();
  std::vector<BigRational> minors;
  minors.reserve(static_cast<std::size_t>(n));
  // Unpivoted elimination: the t-th leading minor is the product of the
  // first t pivots as long as none of them vanishes.
  DenseMatrix<BigRational> w = m;
  BigRational running = 1;
  for (Eigen::Index t = 0; t < n; ++t) {
    if (w(t, t) == 0) {
      for (Eigen::Index s = t; s < n; ++s) minors.push_back(determinant(m.topLeftCorner(s + 1, s + 1)));
      return minors;
    }
    running *= w(t, t);
    minors.push_back(running);
    for (Eigen::Index r = t + 1; r < n; ++r) {
      if (w(r, t) == 0) continue;
      const BigRational f = w(r, t) / w(t, t);
      for (Eigen::Index c = t; c < n; ++c) w(r, c) -= f * w(t, c);
    }
  }
  return minors;
}

RatioEvaluation evaluate_ratio(std::span<const BigRational> a, const SieveConfig& config,
                               const SieveForms& forms, mpfr_prec_t precision) {
  if (static_cast<int>(a.size()) != config.nterms) {
    throw std::invalid_argument("coefficient vector length differs from nterms");
  }
  bool nonzero = false;
  for (const BigRational& x : a) nonzero = nonzero || x != 0;
  if (!nonzero) throw std::invalid_argument("coefficient vector is zero");

  const LogLinearScalar i_value = quadratic_value(forms.I, a);
  if (!i_value.is_rational()) throw std::logic_error("A_I carries a logarithm");
  BigRational denominator = config.theta / 2 * i_value.q0;
  if (denominator <= 0) throw std::logic_error("(theta/2) a^T A_I a is not positive");
  LogLinearScalar numerator = quadratic_value(forms.Jtilde, a);
  Interval r = eval_interval(numerator, config.theta, precision) /
               Interval::from_rational(denominator, precision);
  return {std::move(numerator), std::move(denominator), std::move(r)};
}

}  // namespace e2sieve
