#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "paradox/core.hpp"

namespace paradox {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;
inline constexpr std::uint64_t kDefaultBlockSize = std::uint64_t{1} << 16;

// A step count, or nullopt for "infinite" (no such step within the budget).
using StepCount = std::optional<std::uint64_t>;

// Least j with T^j(n) < n. Returns nullopt for n = 1; throws BudgetExhausted
// for n >= 2 if the budget runs out.
StepCount stopping_time(const Natural& n, std::uint64_t budget = kDefaultBudget);

// Least j with 3^{q_j(n)} < 2^j.
StepCount coeff_stopping_time(const Natural& n, std::uint64_t budget = kDefaultBudget);

struct DelayInfo {
  std::uint64_t steps = 0;  // iterations to reach 1
  std::uint64_t odd = 0;    // odd iterates among them
};

// Throws BudgetExhausted when 1 is not reached within budget steps.
DelayInfo delay_info(const Natural& n, Formalism f, std::uint64_t budget = kDefaultBudget);
std::uint64_t delay(const Natural& n, Formalism f, std::uint64_t budget = kDefaultBudget);

// Largest iterate on the way to 1, n included.
Natural max_excursion(const Natural& n, Formalism f = Formalism::Shortcut,
                      std::uint64_t budget = kDefaultBudget);

struct ParadoxHit {
  Natural n;
  std::uint64_t j = 0;  // map applications
  std::uint64_t q = 0;  // odd steps
  std::uint64_t e = 0;  // halvings (== j for the shortcut map)
  Dyadic coefficient;   // 3^q / 2^e
  Dyadic remainder;     // canonical
  mpz_class d;          // last - n
  bool start_odd = false;
  bool end_odd = false;
  Formalism formalism = Formalism::Shortcut;

  Natural last() const { return n + d; }
  friend bool operator==(const ParadoxHit&, const ParadoxHit&) = default;
};

// Builds the hit record for a known (n, j, q, e, last) tuple.
ParadoxHit make_hit(const Natural& n, std::uint64_t j, std::uint64_t q, std::uint64_t e,
                    const Natural& last, Formalism f);

inline constexpr const char* kHitCsvHeader =
    "n,j,q,C_num,C_den,E_num,E_den,d,start_odd,end_odd,formalism";
std::string to_csv_row(const ParadoxHit& hit);
// Throws DataError on malformed rows.
ParadoxHit parse_csv_row(const std::string& row);

struct SearchOptions {
  Formalism formalism = Formalism::Shortcut;
  unsigned threads = 1;
  std::uint64_t block_size = kDefaultBlockSize;
  std::uint64_t budget = kDefaultBudget;
  // Progress is persisted here after every completed block and resumed from
  // it when the file already exists.
  std::optional<std::filesystem::path> checkpoint;
  // Stop once this many blocks of the range are committed (interruption drill).
  std::optional<std::uint64_t> stop_after_blocks;
};

struct SearchResult {
  std::vector<ParadoxHit> hits;  // sorted by (n, j)
  bool complete = false;
  std::uint64_t next_start = 0;  // first start value not yet covered
};

// Every paradoxical prefix Omega_j(n) for n in [lo, hi]; each walk ends when
// the iterate reaches 1. Requires 3 <= lo <= hi.
SearchResult enumerate_paradoxes(std::uint64_t lo, std::uint64_t hi,
                                 const SearchOptions& options = {});

// Walks a single start value; shared by the search and the tests.
std::vector<ParadoxHit> paradoxes_from(const Natural& n, Formalism f,
                                       std::uint64_t budget = kDefaultBudget);

struct CensusRow {
  std::uint64_t j = 0;  // halvings; for the classic map the even-step count
  std::uint64_t q = 0;
  std::uint64_t count = 0;
  std::uint64_t count_odd = 0;  // odd start and odd end
  Natural n_min, n_max;
  Dyadic e_min, e_max;
  mpz_class d_min, d_max;
};

struct CensusSummary {
  std::uint64_t total = 0;
  std::uint64_t near_cycles = 0;  // d == 1
  std::uint64_t even_even = 0;
  std::uint64_t distinct_starts = 0;
  // Every sequence passes through 11 when its row has j == 8 and through 103 otherwise.
  std::uint64_t landmark_misses = 0;
  Natural n_min, n_max;
  mpz_class d_max;
  Natural d_max_start;
};

struct Census {
  Formalism formalism = Formalism::Shortcut;
  std::vector<CensusRow> rows;  // sorted by (j, q)
  CensusSummary summary;

  // Human-readable table; C is truncated to 3 decimals, E to `decimals`.
  std::string to_table(int decimals = 2) const;
};

Census census(const std::vector<ParadoxHit>& hits);

struct CstReport {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t checked = 0;
  std::vector<std::uint64_t> counterexamples;
  std::uint64_t max_gap = 0;  // max of t(n) - tau(n)
};

// Requires 2 <= lo.
CstReport verify_cst(std::uint64_t lo, std::uint64_t hi, std::uint64_t budget = kDefaultBudget);

// Truncates toward zero to `digits` decimals.
std::string truncate_decimal(const mpq_class& value, int digits);

}  // namespace paradox
