#include "e2sieve/interval.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace e2sieve {

namespace {

std::string to_decimal(const __mpfr_struct* x, int digits, mpfr_rnd_t rnd) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, (rnd == MPFR_RNDD) ? "%.*RDe" : "%.*RUe", digits, x);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

}  // namespace

Interval::Interval(mpfr_prec_t precision) : precision_(precision) {
  mpfr_init2(lo_, precision_);
  mpfr_init2(hi_, precision_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) : precision_(other.precision_) {
  mpfr_init2(lo_, precision_);
  mpfr_init2(hi_, precision_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other) {}

Interval& Interval::operator=(const Interval& other) {
  if (this == &other) return *this;
  precision_ = other.precision_;
  mpfr_set_prec(lo_, precision_);
  mpfr_set_prec(hi_, precision_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  if (this != &other) {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    std::swap(precision_, other.precision_);
  }
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::from_rational(const BigRational& q, mpfr_prec_t precision) {
  Interval r(precision);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_bounds(double lower, double upper, mpfr_prec_t precision) {
  if (!(lower <= upper)) throw std::invalid_argument("interval bounds out of order");
  Interval r(precision);
  mpfr_set_d(r.lo_, lower, MPFR_RNDD);
  mpfr_set_d(r.hi_, upper, MPFR_RNDU);
  return r;
}

double Interval::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid() const {
  mpfr_t m;
  mpfr_init2(m, precision_ + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  const double d = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return d;
}

double Interval::width() const {
  mpfr_t w;
  mpfr_init2(w, precision_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  const double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

std::string Interval::lower_string(int digits) const { return to_decimal(lo_, digits, MPFR_RNDD); }
std::string Interval::upper_string(int digits) const { return to_decimal(hi_, digits, MPFR_RNDU); }

bool Interval::contains(double x) const {
  return mpfr_cmp_d(lo_, x) <= 0 && mpfr_cmp_d(hi_, x) >= 0;
}

bool Interval::contains(const BigRational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::overlaps(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.hi_) && mpfr_lessequal_p(other.lo_, hi_);
}

bool Interval::tight(mpfr_prec_t bits) const {
  if (mpfr_equal_p(lo_, hi_)) return true;
  if (mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0) return false;
  mpfr_t w, m;
  mpfr_init2(w, precision_);
  mpfr_init2(m, precision_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  if (mpfr_cmpabs(lo_, hi_) < 0) {
    mpfr_abs(m, lo_, MPFR_RNDD);
  } else {
    mpfr_abs(m, hi_, MPFR_RNDD);
  }
  mpfr_div_2si(m, m, bits, MPFR_RNDD);
  const bool ok = mpfr_lessequal_p(w, m);
  mpfr_clear(w);
  mpfr_clear(m);
  return ok;
}

bool Interval::positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::negative() const { return mpfr_sgn(hi_) < 0; }

Interval Interval::operator-() const {
  Interval r(precision_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval& Interval::operator+=(const Interval& rhs) {
  mpfr_add(lo_, lo_, rhs.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, rhs.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator-=(const Interval& rhs) {
  // rhs may alias *this
  Interval neg = -rhs;
  return *this += neg;
}

Interval& Interval::operator*=(const Interval& rhs) {
  mpfr_t c[4];
  for (auto& x : c) mpfr_init2(x, precision_);
  Interval r(precision_);
  // lower candidates rounded down
  mpfr_mul(c[0], lo_, rhs.lo_, MPFR_RNDD);
  mpfr_mul(c[1], lo_, rhs.hi_, MPFR_RNDD);
  mpfr_mul(c[2], hi_, rhs.lo_, MPFR_RNDD);
  mpfr_mul(c[3], hi_, rhs.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, c[0], c[1], MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, c[2], MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, c[3], MPFR_RNDD);
  mpfr_mul(c[0], lo_, rhs.lo_, MPFR_RNDU);
  mpfr_mul(c[1], lo_, rhs.hi_, MPFR_RNDU);
  mpfr_mul(c[2], hi_, rhs.lo_, MPFR_RNDU);
  mpfr_mul(c[3], hi_, rhs.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, c[0], c[1], MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, c[2], MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, c[3], MPFR_RNDU);
  for (auto& x : c) mpfr_clear(x);
  return *this = std::move(r);
}

Interval& Interval::operator/=(const Interval& rhs) {
  if (mpfr_sgn(rhs.lo_) <= 0 && mpfr_sgn(rhs.hi_) >= 0) {
    throw std::domain_error("interval division by an interval containing zero");
  }
  Interval inv(precision_);
  mpfr_ui_div(inv.lo_, 1, rhs.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, rhs.lo_, MPFR_RNDU);
  return *this *= inv;
}

Interval log(const Interval& x) {
  if (mpfr_sgn(x.lo_) <= 0) throw std::domain_error("log of a non-positive interval");
  Interval r(x.precision_);
  mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval hull(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision_, b.precision_));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

}  // namespace e2sieve
