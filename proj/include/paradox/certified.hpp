#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace paradox::certified {

inline constexpr mpfr_prec_t kStartPrecision = 128;
inline constexpr mpfr_prec_t kDefaultPrecisionCap = 1 << 14;

// Closed interval [lower, upper] of MPFR numbers. Every operation rounds the
// lower end down and the upper end up, so the true value stays enclosed.
class Interval {
 public:
  explicit Interval(mpfr_prec_t precision);
  Interval(const mpz_class& value, mpfr_prec_t precision);
  Interval(const mpq_class& value, mpfr_prec_t precision);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(Interval other) noexcept;
  ~Interval();

  friend void swap(Interval& a, Interval& b) noexcept;

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
  mpfr_srcptr lower() const { return lo_; }
  mpfr_srcptr upper() const { return hi_; }
  mpq_class lower_rational() const;
  mpq_class upper_rational() const;

  // +1 if entirely positive, -1 if entirely negative, 0 if it contains zero.
  int sign() const;
  double midpoint() const;
  std::string to_string(int digits = 20) const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  // Throws std::domain_error if b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval operator-() const;

  // Throws std::domain_error unless the interval is strictly positive.
  Interval log() const;
  Interval exp() const;
  Interval abs() const;

  static Interval ln2(mpfr_prec_t precision);
  static Interval ln3(mpfr_prec_t precision);

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

// Enclosure of log 2 / log 3.
Interval log2_over_log3(mpfr_prec_t precision);

}  // namespace paradox::certified
