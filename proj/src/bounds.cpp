#include "paradox/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "bounds_internal.hpp"
#include "paradox/errors.hpp"

namespace paradox {

namespace detail {

LogRatioFloor::LogRatioFloor() : ratio_(certified::log2_over_log3(certified::kStartPrecision)) {}

std::uint64_t LogRatioFloor::operator()(std::uint64_t j) const {
  const certified::Interval scaled =
      certified::Interval(mpz_class(j), certified::kStartPrecision) * ratio_;
  mpz_class lo;
  mpz_class hi;
  mpfr_get_z(lo.get_mpz_t(), scaled.lower(), MPFR_RNDD);
  mpfr_get_z(hi.get_mpz_t(), scaled.upper(), MPFR_RNDD);
  if (lo == hi) return lo.get_ui();
  return floor_log_ratio_exact(j);
}

HarmonicCap::HarmonicCap(mpz_class m)
    : m_(std::move(m)),
      log_growth_(certified::kStartPrecision),
      ln2_(certified::Interval::ln2(certified::kStartPrecision)) {
  if (sgn(m_) <= 0) throw std::invalid_argument("harmonic lower bound must be positive");
  const mpq_class growth(3 * m_ + 1, m_);
  log_growth_ = certified::Interval(growth, certified::kStartPrecision).log();
}

bool HarmonicCap::holds(std::uint64_t j) const {
  if (j < 2) throw std::invalid_argument("harmonic cap needs j >= 2");
  const std::uint64_t q = floor_(j);
  // q * log(3 + 1/m) - j * log 2 >= 0
  const certified::Interval margin =
      certified::Interval(mpz_class(q), certified::kStartPrecision) * log_growth_ -
      certified::Interval(mpz_class(j), certified::kStartPrecision) * ln2_;
  if (margin.sign() > 0) return true;
  if (margin.sign() < 0) return false;
  return holds_exact(j, q);
}

bool HarmonicCap::holds_exact(std::uint64_t j, std::uint64_t q) const {
  mpz_class lhs;
  mpz_pow_ui(lhs.get_mpz_t(), m_.get_mpz_t(), q);
  lhs <<= j;
  mpz_class rhs = 3 * m_ + 1;
  mpz_pow_ui(rhs.get_mpz_t(), rhs.get_mpz_t(), q);
  return lhs <= rhs;
}

}  // namespace detail

RemainderBounds remainder_bounds(std::uint64_t j, std::uint64_t q) {
  if (q > j) throw std::invalid_argument("ones-count exceeds length");
  RemainderBounds b;
  b.j = j;
  b.q = q;
  const mpz_class modulus = pow2(j);
  if (q == 0) {
    b.lower = Dyadic(0, 0);
    b.upper = Dyadic(0, 0);
    b.lower_class = 0;
    b.upper_class = 0;
    return b;
  }
  const mpz_class gap = pow3(q) - pow2(q);
  b.lower = Dyadic(gap, j);
  b.upper = Dyadic(gap, q);
  // -2^{j-q} mod 2^j
  b.upper_class = modulus - pow2(j - q);
  mpz_class inv3;
  mpz_class three_q = pow3(q) % modulus;
  if (!mpz_invert(inv3.get_mpz_t(), three_q.get_mpz_t(), modulus.get_mpz_t())) {
    inv3 = 0;  // only when modulus == 1
  }
  mpz_class cls = (pow2(q) * inv3 - 1) % modulus;
  if (cls < 0) cls += modulus;
  b.lower_class = cls;
  return b;
}

mpq_class mean_remainder(std::uint64_t j) {
  if (j < 1 || j > 22) throw std::invalid_argument("mean remainder supports 1 <= j <= 22");
  const std::uint64_t count = std::uint64_t{1} << j;
  // E_j(n) = num / 2^j with num an integer; sum the numerators.
  mpz_class total = 0;
  unsigned __int128 acc = 0;
  for (std::uint64_t n = 1; n <= count; ++n) {
    std::uint64_t v = n;
    std::uint64_t num = 0;
    for (std::uint64_t k = 0; k < j; ++k) {
      if (v & 1u) {
        num = 3 * num + (std::uint64_t{1} << k);
        v = (3 * v + 1) / 2;
      } else {
        v /= 2;
      }
    }
    acc += num;
  }
  const auto hi = static_cast<std::uint64_t>(acc >> 64);
  const auto lo = static_cast<std::uint64_t>(acc);
  total = mpz_class(hi);
  total <<= 64;
  total += mpz_class(lo);
  mpq_class mean(total, pow2(2 * j));
  mean.canonicalize();
  return mean;
}

HarmonicData harmonic_data(const Trajectory& t) {
  HarmonicData d;
  d.sum_reciprocals = 0;
  for (std::size_t k = 0; k + 1 < t.iterates.size(); ++k) {
    const Natural& m = t.iterates[k];
    if (!mpz_odd_p(m.get_mpz_t())) continue;
    if (d.q == 0 || m < d.min_odd) d.min_odd = m;
    if (d.q == 0 || m > d.max_odd) d.max_odd = m;
    ++d.q;
    d.sum_reciprocals += mpq_class(1, m);
  }
  d.sum_reciprocals.canonicalize();
  if (d.q > 0) {
    d.h = mpq_class(d.q) / d.sum_reciprocals;
    d.h.canonicalize();
  } else {
    d.h = 0;
  }
  return d;
}

ParadoxWitness is_paradoxical(const Trajectory& t) {
  if (t.length() < 1) throw std::invalid_argument("paradox test needs at least one step");
  const LinearForm& f = t.final_form();
  ParadoxWitness w;
  w.coefficient = f.coefficient().canonical();
  w.remainder = f.remainder.canonical();
  w.difference = t.last() - t.start;
  w.paradoxical = f.coefficient_below_one() && t.last() >= t.start;
  return w;
}

namespace {

// (3 + 1/h)^q as an exact rational, with 1/h = sum_reciprocals / q.
mpq_class growth_power(const HarmonicData& d) {
  mpq_class base = 3 + d.sum_reciprocals / mpq_class(d.q);
  base.canonicalize();
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), d.q);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), d.q);
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

EnRatioBounds en_ratio_bounds(const Trajectory& t) {
  const HarmonicData d = harmonic_data(t);
  if (d.q == 0) throw std::invalid_argument("E/n bounds need at least one odd term");
  const LinearForm& f = t.final_form();
  const mpz_class two_e = pow2(f.e);
  const mpz_class three_q = pow3(f.q);

  EnRatioBounds b;
  b.lower = mpq_class(two_e - three_q, two_e);
  b.lower.canonicalize();
  b.ratio = f.remainder.to_rational() / mpq_class(t.start);
  b.ratio.canonicalize();
  b.upper = (growth_power(d) - mpq_class(three_q)) / mpq_class(two_e);
  b.upper.canonicalize();
  b.paradoxical = is_paradoxical(t).paradoxical;
  b.lower_holds = b.lower <= b.ratio;
  b.upper_holds = b.ratio <= b.upper;
  b.holds = b.upper_holds && (!b.paradoxical || b.lower_holds);
  return b;
}

bool ones_ratio_window(const Trajectory& t) {
  const HarmonicData d = harmonic_data(t);
  if (d.q == 0) return false;
  const LinearForm& f = t.final_form();
  if (!f.coefficient_below_one()) return false;
  return mpq_class(pow2(f.e)) <= growth_power(d);
}

std::uint64_t floor_log_ratio_exact(std::uint64_t j) {
  if (j == 0) return 0;
  auto fits = [j](std::uint64_t q) {
    return q == 0 || mpz_sizeinbase(pow3(q).get_mpz_t(), 2) <= j;
  };
  auto q = static_cast<std::uint64_t>(static_cast<double>(j) * 0.6309297535714574);
  while (fits(q + 1)) ++q;
  while (!fits(q)) --q;
  return q;
}

std::uint64_t floor_log_ratio(std::uint64_t j) {
  if (j == 0) return 0;
  static const detail::LogRatioFloor floor;
  return floor(j);
}

bool harmonic_cap_holds(std::uint64_t j, const mpz_class& m) {
  if (j < 2) throw std::invalid_argument("harmonic cap needs j >= 2");
  return detail::HarmonicCap(m).holds(j);
}

std::uint64_t smallest_cap_length(const mpz_class& m, std::uint64_t limit) {
  const detail::HarmonicCap cap(m);
  for (std::uint64_t j = 2; j <= limit; ++j) {
    if (cap.holds(j)) return j;
  }
  throw BudgetExhausted("no j <= " + std::to_string(limit) + " satisfies H(j) >= " + m.get_str());
}

std::uint64_t min_ones_for_paradox(std::uint64_t j, const mpz_class& m) {
  if (sgn(m) <= 0) throw std::invalid_argument("harmonic lower bound must be positive");
  const mpz_class base = 3 * m + 1;
  auto reaches = [&](std::uint64_t q) {  // (3m+1)^q >= 2^j m^q
    mpz_class lhs;
    mpz_pow_ui(lhs.get_mpz_t(), base.get_mpz_t(), q);
    mpz_class rhs;
    mpz_pow_ui(rhs.get_mpz_t(), m.get_mpz_t(), q);
    rhs <<= j;
    return lhs >= rhs;
  };

  // Locate ceil(j log 2 / log(3 + 1/m)) with a certified enclosure.
  const mpq_class growth(base, m);
  for (mpfr_prec_t prec = certified::kStartPrecision; prec <= certified::kDefaultPrecisionCap;
       prec *= 2) {
    const certified::Interval ratio =
        certified::Interval(mpz_class(j), prec) * certified::Interval::ln2(prec) /
        certified::Interval(growth, prec).log();
    mpz_class lo;
    mpz_class hi;
    mpfr_get_z(lo.get_mpz_t(), ratio.lower(), MPFR_RNDU);
    mpfr_get_z(hi.get_mpz_t(), ratio.upper(), MPFR_RNDU);
    const bool small = mpz_sizeinbase(hi.get_mpz_t(), 2) < 40 &&
                       hi.get_ui() * mpz_sizeinbase(base.get_mpz_t(), 2) < (1u << 24);
    if (small) {
      // Settle (or confirm) the boundary with integer powers.
      std::uint64_t q = lo.get_ui();
      while (q > 0 && reaches(q - 1)) --q;
      while (!reaches(q)) ++q;
      return q;
    }
    if (lo == hi) return lo.get_ui();
  }
  throw PrecisionExhausted("cannot isolate the minimal ones-count for j = " + std::to_string(j));
}

double harmonic_cap_value(std::uint64_t j) {
  const std::uint64_t q = floor_log_ratio(j);
  if (q == 0) return 0.0;
  const long double r = static_cast<long double>(j) / static_cast<long double>(q);
  return static_cast<double>(1.0L / (std::pow(2.0L, r) - 3.0L));
}

std::vector<Natural> small_j_classification(std::uint64_t j) {
  static const std::set<std::uint64_t> supported = {2, 3, 4, 6, 7, 9};
  if (!supported.contains(j)) {
    throw std::invalid_argument("small-length classification covers j in {2,3,4,6,7,9}");
  }
  // Any paradoxical Omega_j(n) has an odd term m <= h <= H(j), and its last
  // term follows m within j steps, so n <= T^i(m) for some 1 <= i <= j.
  Natural bound = 0;
  for (mpz_class m = 1; detail::HarmonicCap(m).holds(j); m += 2) {
    Natural cur = m;
    for (std::uint64_t i = 0; i < j; ++i) {
      cur = step(cur, Formalism::Shortcut);
      bound = std::max(bound, cur);
    }
  }
  std::vector<Natural> out;
  for (Natural n = 1; n <= bound; ++n) {
    if (is_paradoxical(trajectory(n, j, Formalism::Shortcut)).paradoxical) out.push_back(n);
  }
  return out;
}

}  // namespace paradox
