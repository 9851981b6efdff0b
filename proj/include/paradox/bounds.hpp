#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "paradox/core.hpp"

namespace paradox {

// Extremal remainders over all n for a given length j and ones-count q.
struct RemainderBounds {
  std::uint64_t j = 0;
  std::uint64_t q = 0;
  Dyadic lower;  // (3^q - 2^q) / 2^j, reached by <1^q 0^{j-q}>
  Dyadic upper;  // (3^q - 2^q) / 2^q, reached by <0^{j-q} 1^q>
  mpz_class lower_class;  // residue mod 2^j attaining the lower bound
  mpz_class upper_class;  // residue mod 2^j attaining the upper bound
};

// Throws std::invalid_argument if q > j. For q == 0 both bounds are 0 and the
// extremal class is 0 mod 2^j.
RemainderBounds remainder_bounds(std::uint64_t j, std::uint64_t q);

// Exact mean of E_j(n) over n = 1..2^j. Requires 1 <= j <= 22.
mpq_class mean_remainder(std::uint64_t j);

// Odd terms among the first j iterates (the last iterate is excluded).
struct HarmonicData {
  std::uint64_t q = 0;
  mpq_class sum_reciprocals;  // sum of 1/m_k
  mpq_class h;                // q / sum_reciprocals; 0 when q == 0
  Natural min_odd;
  Natural max_odd;
};

HarmonicData harmonic_data(const Trajectory& t);

struct ParadoxWitness {
  bool paradoxical = false;
  Dyadic coefficient;
  Dyadic remainder;
  mpz_class difference;  // last - first
};

// C < 1 (as 3^q < 2^e) and last iterate >= first iterate. Requires length >= 1.
ParadoxWitness is_paradoxical(const Trajectory& t);

struct EnRatioBounds {
  mpq_class lower;  // 1 - C
  mpq_class ratio;  // E / n
  mpq_class upper;  // ((3 + 1/h)^q - 3^q) / 2^e
  bool paradoxical = false;
  bool lower_holds = false;
  bool upper_holds = false;
  // Upper bound always; lower bound only when the sequence is paradoxical.
  bool holds = false;
};

// Throws std::invalid_argument when the trajectory has no odd term before
// its last iterate.
EnRatioBounds en_ratio_bounds(const Trajectory& t);

// 2^e <= (3 + 1/h)^q and 3^q < 2^e, both cross-multiplied into integers.
bool ones_ratio_window(const Trajectory& t);

// Largest q with 3^q <= 2^j.
std::uint64_t floor_log_ratio(std::uint64_t j);
// Same value from bit lengths of 3^q alone; slower, kept as the reference route.
std::uint64_t floor_log_ratio_exact(std::uint64_t j);

// H(j) >= m, i.e. 2^j * m^q <= (3m + 1)^q with q = floor_log_ratio(j).
// Throws std::invalid_argument for j < 2.
bool harmonic_cap_holds(std::uint64_t j, const mpz_class& m);

// Smallest j > 1 with harmonic_cap_holds(j, m). Throws BudgetExhausted past limit.
std::uint64_t smallest_cap_length(const mpz_class& m, std::uint64_t limit = 50'000'000);

// Smallest q with (3m + 1)^q >= 2^j * m^q.
std::uint64_t min_ones_for_paradox(std::uint64_t j, const mpz_class& m);

// Presentation-only value of H(j) = 1 / (2^{j/q} - 3).
double harmonic_cap_value(std::uint64_t j);

// Every n with Omega_j(n) paradoxical, for j in {2, 3, 4, 6, 7, 9}.
std::vector<Natural> small_j_classification(std::uint64_t j);

}  // namespace paradox
