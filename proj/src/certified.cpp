#include "paradox/certified.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace paradox::certified {

Interval::Interval(mpfr_prec_t precision) {
  mpfr_init2(lo_, precision);
  mpfr_init2(hi_, precision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const mpz_class& value, mpfr_prec_t precision) : Interval(precision) {
  mpfr_set_z(lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, value.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const mpq_class& value, mpfr_prec_t precision) : Interval(precision) {
  mpfr_set_q(lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, value.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& other) : Interval(other.precision()) {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other.precision()) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(Interval other) noexcept {
  swap(*this, other);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

void swap(Interval& a, Interval& b) noexcept {
  mpfr_swap(a.lo_, b.lo_);
  mpfr_swap(a.hi_, b.hi_);
}

mpq_class Interval::lower_rational() const {
  mpq_class r;
  mpfr_get_q(r.get_mpq_t(), lo_);
  return r;
}

mpq_class Interval::upper_rational() const {
  mpq_class r;
  mpfr_get_q(r.get_mpq_t(), hi_);
  return r;
}

int Interval::sign() const {
  if (mpfr_sgn(lo_) > 0) return 1;
  if (mpfr_sgn(hi_) < 0) return -1;
  return 0;
}

double Interval::midpoint() const {
  return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN));
}

std::string Interval::to_string(int digits) const {
  auto render = [digits](mpfr_srcptr x, mpfr_rnd_t rnd) {
    char* buf = nullptr;
    mpfr_asprintf(&buf, rnd == MPFR_RNDD ? "%.*RDe" : "%.*RUe", digits, x);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  };
  return "[" + render(lo_, MPFR_RNDD) + ", " + render(hi_, MPFR_RNDU) + "]";
}

namespace {

mpfr_prec_t joint(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(joint(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(joint(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

namespace {

// Smallest/largest of the four endpoint combinations under op.
template <typename Op>
void corner_bounds(mpfr_ptr lo, mpfr_ptr hi, mpfr_srcptr alo, mpfr_srcptr ahi,
                   mpfr_srcptr blo, mpfr_srcptr bhi, Op op) {
  const mpfr_prec_t p = mpfr_get_prec(lo);
  mpfr_t t;
  mpfr_init2(t, p);
  mpfr_srcptr as[2] = {alo, ahi};
  mpfr_srcptr bs[2] = {blo, bhi};
  bool first = true;
  for (mpfr_srcptr x : as) {
    for (mpfr_srcptr y : bs) {
      op(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, lo)) mpfr_set(lo, t, MPFR_RNDD);
      op(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, hi)) mpfr_set(hi, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
}

}  // namespace

Interval operator*(const Interval& a, const Interval& b) {
  Interval r(joint(a, b));
  corner_bounds(r.lo_, r.hi_, a.lo_, a.hi_, b.lo_, b.hi_, mpfr_mul);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.sign() == 0) throw std::domain_error("interval division by an interval containing zero");
  Interval r(joint(a, b));
  corner_bounds(r.lo_, r.hi_, a.lo_, a.hi_, b.lo_, b.hi_, mpfr_div);
  return r;
}

Interval Interval::log() const {
  if (sign() <= 0) throw std::domain_error("log of a non-positive interval");
  Interval r(precision());
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::exp() const {
  Interval r(precision());
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::abs() const {
  if (sign() >= 0 && mpfr_sgn(lo_) >= 0) return *this;
  if (sign() < 0) return -*this;
  Interval r(precision());
  mpfr_set_zero(r.lo_, 1);
  if (mpfr_cmpabs(lo_, hi_) > 0) {
    mpfr_abs(r.hi_, lo_, MPFR_RNDU);
  } else {
    mpfr_set(r.hi_, hi_, MPFR_RNDU);
  }
  return r;
}

Interval Interval::ln2(mpfr_prec_t precision) {
  Interval r(precision);
  mpfr_const_log2(r.lo_, MPFR_RNDD);
  mpfr_const_log2(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::ln3(mpfr_prec_t precision) {
  return Interval(mpz_class(3), precision).log();
}

Interval log2_over_log3(mpfr_prec_t precision) {
  return Interval::ln2(precision) / Interval::ln3(precision);
}

}  // namespace paradox::certified
