#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "paradox/bounds.hpp"
#include "paradox/certified.hpp"
#include "paradox/core.hpp"

namespace paradox {

// p/q, the index-th convergent of log 2 / log 3. Even indices lie below.
struct Convergent {
  mpz_class p;
  mpz_class q;
  std::size_t index = 0;
  mpz_class partial_quotient;  // a_index
  bool below() const { return index % 2 == 0; }
};

// The first `count` convergents. Partial quotients are extracted from a
// certified enclosure of log2/log3 whose precision is raised until every
// requested quotient is determined.
std::vector<Convergent> convergents(std::size_t count);

// 1 - eps < 3^a / 2^b < 1.
struct ApproxPair {
  mpz_class a;  // exponent of 3
  mpz_class b;  // exponent of 2
  friend bool operator==(const ApproxPair&, const ApproxPair&) = default;
};

// Exact integer check while the powers stay small, certified logarithms beyond.
bool pair_within(const ApproxPair& pair, const mpq_class& epsilon);

// The first `count` even-index convergents (index >= 2) that satisfy
// pair_within for epsilon. Requires 0 < epsilon < 1.
std::vector<ApproxPair> approx_pairs(const mpq_class& epsilon, std::size_t count);

struct ConstructionReport {
  Natural start;
  ApproxPair pair;
  std::uint64_t first_reach = 0;  // least j with q_j(start) == a
  bool lifted = false;            // true when first_reach < b
  Natural sequence_start;         // start, or 2^{b-j} * start when lifted
  std::uint64_t length = 0;       // first_reach, or b when lifted
  ParadoxWitness witness;
  // Paradoxical, start != 1 and no iterate up to `length` dropped below start.
  bool cst_counterexample = false;
};

// One step of the divergent-to-paradoxical construction for a given pair,
// without checking that the pair is close enough to 1 for this start.
ConstructionReport construct_from_pair(const Natural& n, const ApproxPair& pair,
                                       std::uint64_t budget);

// As construct_from_pair, after checking 1 - 1/(4n) < 3^a/2^b < 1.
// Throws std::invalid_argument when the pair is outside that set and
// BudgetExhausted when q_j(n) does not reach a within budget steps.
ConstructionReport divergent_to_paradox(const Natural& n, const ApproxPair& pair,
                                        std::uint64_t budget = 1'000'000);

// |j log 2 - q log 3| >= max(j, q)^{-13.3}, decided with certified precision.
// Throws std::invalid_argument when max(j, q) < 2 and PrecisionExhausted when
// the cap is reached without a decision.
bool rhin_gap_ok(std::uint64_t j, std::uint64_t q,
                 mpfr_prec_t precision_cap = certified::kDefaultPrecisionCap);

// Largest j with j^{14.3} exp(-j / (alpha beta)) > 3 log 3 / log 2, or 0 when
// no j qualifies. Requires alpha, beta > 0.
std::uint64_t heuristic_j_cap(const mpq_class& alpha, const mpq_class& beta);

// Enclosure of 3 log 3 / log 2.
certified::Interval heuristic_threshold(mpfr_prec_t precision);

// "42", "2.6", "-0.125" or "13/5" as an exact rational.
mpq_class parse_rational(std::string_view text);

}  // namespace paradox
