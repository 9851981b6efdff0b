#include "paradox/numtheory.hpp"

#include <stdexcept>
#include <string>

#include "paradox/errors.hpp"

namespace paradox {

namespace {

using certified::Interval;

// Partial quotients of log2/log3 that a given enclosure determines.
std::vector<mpz_class> quotients_from_enclosure(const Interval& x, std::size_t wanted) {
  mpq_class a = x.lower_rational();
  mpq_class b = x.upper_rational();
  std::vector<mpz_class> out;
  while (out.size() < wanted) {
    mpz_class fa;
    mpz_class fb;
    mpz_fdiv_q(fa.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    mpz_fdiv_q(fb.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    if (fa != fb) break;
    out.push_back(fa);
    a -= fa;
    b -= fa;
    if (sgn(a) == 0 || sgn(b) == 0) break;
    a = 1 / a;
    b = 1 / b;
  }
  return out;
}

}  // namespace

std::vector<Convergent> convergents(std::size_t count) {
  std::vector<mpz_class> quotients;
  for (mpfr_prec_t prec = certified::kStartPrecision;; prec *= 2) {
    if (prec > (mpfr_prec_t{1} << 24)) throw PrecisionExhausted("continued fraction too deep");
    quotients = quotients_from_enclosure(certified::log2_over_log3(prec), count);
    if (quotients.size() >= count) break;
  }
  std::vector<Convergent> out;
  out.reserve(count);
  mpz_class p_prev2 = 0, q_prev2 = 1;  // p_{-2}, q_{-2}
  mpz_class p_prev1 = 1, q_prev1 = 0;  // p_{-1}, q_{-1}
  for (std::size_t i = 0; i < count; ++i) {
    Convergent c;
    c.index = i;
    c.partial_quotient = quotients[i];
    c.p = quotients[i] * p_prev1 + p_prev2;
    c.q = quotients[i] * q_prev1 + q_prev2;
    p_prev2 = p_prev1;
    q_prev2 = q_prev1;
    p_prev1 = c.p;
    q_prev1 = c.q;
    out.push_back(std::move(c));
  }
  return out;
}

bool pair_within(const ApproxPair& pair, const mpq_class& epsilon) {
  if (sgn(pair.a) < 0 || sgn(pair.b) < 0) return false;
  const mpz_class& u = epsilon.get_num();
  const mpz_class& v = epsilon.get_den();
  if (pair.b < (1 << 22)) {
    const mpz_class three_a = pow3(pair.a.get_ui());
    const mpz_class two_b = pow2(pair.b.get_ui());
    // (v - u) 2^b < v 3^a  and  3^a < 2^b
    return (v - u) * two_b < v * three_a && three_a < two_b;
  }
  for (mpfr_prec_t prec = certified::kStartPrecision; prec <= certified::kDefaultPrecisionCap;
       prec *= 2) {
    const Interval log3a = Interval(pair.a, prec) * Interval::ln3(prec);
    const Interval log2b = Interval(pair.b, prec) * Interval::ln2(prec);
    const Interval upper_gap = log2b - log3a;
    const Interval lower_gap =
        log3a - (log2b + Interval(mpq_class(1 - epsilon), prec).log());
    if (upper_gap.sign() != 0 && lower_gap.sign() != 0) {
      return upper_gap.sign() > 0 && lower_gap.sign() > 0;
    }
  }
  throw PrecisionExhausted("cannot decide approximation pair (" + pair.a.get_str() + ", " +
                           pair.b.get_str() + ")");
}

std::vector<ApproxPair> approx_pairs(const mpq_class& epsilon, std::size_t count) {
  if (sgn(epsilon) <= 0 || epsilon >= 1) {
    throw std::invalid_argument("epsilon must lie strictly between 0 and 1");
  }
  std::vector<ApproxPair> out;
  std::size_t depth = 64;
  std::size_t next_index = 2;
  while (out.size() < count) {
    const std::vector<Convergent> cs = convergents(depth);
    for (; next_index < cs.size() && out.size() < count; next_index += 2) {
      ApproxPair pair{cs[next_index].p, cs[next_index].q};
      if (pair_within(pair, epsilon)) out.push_back(std::move(pair));
    }
    depth *= 2;
  }
  return out;
}

ConstructionReport construct_from_pair(const Natural& n, const ApproxPair& pair,
                                       std::uint64_t budget) {
  if (sgn(n) <= 0) throw std::invalid_argument("start must be positive");
  if (!pair.a.fits_ulong_p() || !pair.b.fits_ulong_p() || sgn(pair.a) <= 0) {
    throw std::invalid_argument("pair exponents out of range");
  }
  const std::uint64_t a = pair.a.get_ui();
  const std::uint64_t b = pair.b.get_ui();

  ConstructionReport r;
  r.start = n;
  r.pair = pair;
  TrajectoryWalker walk(n, Formalism::Shortcut);
  bool stayed_above = true;
  while (walk.form().q < a) {
    if (walk.steps() >= budget) {
      throw BudgetExhausted("q_j(" + n.get_str() + ") did not reach " + std::to_string(a) +
                            " within " + std::to_string(budget) + " steps");
    }
    walk.advance();
    if (walk.iterate() < n) stayed_above = false;
  }
  r.first_reach = walk.steps();
  if (r.first_reach >= b) {
    r.sequence_start = n;
    r.length = r.first_reach;
  } else {
    r.lifted = true;
    r.sequence_start = n << static_cast<mp_bitcnt_t>(b - r.first_reach);
    r.length = b;
  }
  r.witness = is_paradoxical(trajectory(r.sequence_start, r.length, Formalism::Shortcut));
  r.cst_counterexample = !r.lifted && r.witness.paradoxical && n != 1 && stayed_above;
  return r;
}

ConstructionReport divergent_to_paradox(const Natural& n, const ApproxPair& pair,
                                        std::uint64_t budget) {
  if (sgn(n) <= 0) throw std::invalid_argument("start must be positive");
  const mpq_class epsilon(1, 4 * n);
  if (!pair_within(pair, epsilon)) {
    throw std::invalid_argument("pair (" + pair.a.get_str() + ", " + pair.b.get_str() +
                                ") is not within 1/(4n) of 1 for n = " + n.get_str());
  }
  return construct_from_pair(n, pair, budget);
}

bool rhin_gap_ok(std::uint64_t j, std::uint64_t q, mpfr_prec_t precision_cap) {
  const std::uint64_t height = std::max(j, q);
  if (height < 2) throw std::invalid_argument("linear-form gap needs max(j, q) >= 2");
  const mpq_class exponent(133, 10);
  for (mpfr_prec_t prec = certified::kStartPrecision; prec <= precision_cap; prec *= 2) {
    const Interval form = Interval(mpz_class(j), prec) * Interval::ln2(prec) -
                          Interval(mpz_class(q), prec) * Interval::ln3(prec);
    if (form.sign() == 0) continue;
    const Interval threshold =
        (-(Interval(exponent, prec) * Interval(mpz_class(height), prec).log())).exp();
    const Interval margin = form.abs() - threshold;
    if (margin.sign() != 0) return margin.sign() > 0;
  }
  throw PrecisionExhausted("gap for (" + std::to_string(j) + ", " + std::to_string(q) +
                           ") undecided at the precision cap");
}

certified::Interval heuristic_threshold(mpfr_prec_t precision) {
  return Interval(mpz_class(3), precision) * Interval::ln3(precision) /
         Interval::ln2(precision);
}

namespace {

// Sign of 14.3 log j - j/(alpha beta) - log(3 log3 / log2).
int heuristic_sign(std::uint64_t j, const mpq_class& scale) {
  const mpq_class exponent(143, 10);
  for (mpfr_prec_t prec = certified::kStartPrecision; prec <= certified::kDefaultPrecisionCap;
       prec *= 2) {
    const Interval g = Interval(exponent, prec) * Interval(mpz_class(j), prec).log() -
                       Interval(mpq_class(mpq_class(j) / scale), prec) -
                       heuristic_threshold(prec).log();
    if (g.sign() != 0) return g.sign();
  }
  throw PrecisionExhausted("heuristic condition undecided at j = " + std::to_string(j));
}

}  // namespace

std::uint64_t heuristic_j_cap(const mpq_class& alpha, const mpq_class& beta) {
  if (sgn(alpha) <= 0 || sgn(beta) <= 0) {
    throw std::invalid_argument("alpha and beta must be positive");
  }
  const mpq_class scale = alpha * beta;
  // The left side peaks at j = 14.3 alpha beta and decreases afterwards.
  const mpq_class peak = mpq_class(143, 10) * scale;
  mpz_class peak_floor;
  mpz_fdiv_q(peak_floor.get_mpz_t(), peak.get_num_mpz_t(), peak.get_den_mpz_t());
  std::uint64_t lo = std::max<std::uint64_t>(1, peak_floor.get_ui());
  if (heuristic_sign(lo, scale) <= 0) {
    if (heuristic_sign(lo + 1, scale) <= 0) return 0;
    ++lo;
  }
  // Invariant: g(lo) > 0 and lo is past the peak (or one step before it).
  std::uint64_t hi = lo + 1;
  while (heuristic_sign(hi, scale) > 0) {
    lo = hi;
    hi = 2 * hi;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (heuristic_sign(mid, scale) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  try {
    if (s.find('/') != std::string::npos) {
      mpq_class r(s, 10);
      r.canonicalize();
      return r;
    }
    const auto dot = s.find('.');
    if (dot == std::string::npos) return mpq_class(mpz_class(s, 10));
    const std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    mpq_class r(mpz_class(digits, 10), mpz_class(1));
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, s.size() - dot - 1);
    r /= scale;
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a number: " + s);
  }
}

}  // namespace paradox
