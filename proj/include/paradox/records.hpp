#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "paradox/core.hpp"
#include "paradox/search.hpp"

namespace paradox {

enum class RecordKind {
  DelayT,         // steps of T to reach 1
  DelayCol,       // steps of Col to reach 1
  MaxExcursionT,  // largest T iterate
};

std::string_view to_string(RecordKind kind);
RecordKind parse_record_kind(std::string_view name);

struct RecordEntry {
  Natural n;
  Natural value;
  friend bool operator==(const RecordEntry&, const RecordEntry&) = default;
};

// Every n in [1, n_hi] whose value beats all smaller integers, in order.
// Delays reuse the delay of the first smaller iterate; maximum excursions
// only finish walks whose climb before the first descent sets a record.
std::vector<RecordEntry> compute_records(std::uint64_t n_hi, RecordKind kind,
                                         std::uint64_t budget = kDefaultBudget);

// A record table read from the two-column text format ("n value" per line,
// '#' comments, both columns strictly increasing).
class RecordTable {
 public:
  RecordTable(RecordKind kind, std::vector<RecordEntry> entries, std::string source = {});

  // Throws DataError with the offending line number.
  static RecordTable parse(std::istream& in, RecordKind kind, std::string source = "<stream>");
  static RecordTable read(const std::filesystem::path& path, RecordKind kind);

  RecordKind kind() const { return kind_; }
  const std::vector<RecordEntry>& entries() const { return entries_; }
  const std::string& source() const { return source_; }

  // Smallest record holder whose value is >= threshold (> when strict), or
  // nullptr when the table does not reach that far.
  const RecordEntry* first_reaching(const Natural& threshold, bool strict = false) const;
  // Throws DataError when the table is empty.
  const RecordEntry& highest() const;

 private:
  RecordKind kind_;
  std::vector<RecordEntry> entries_;
  std::string source_;
};

struct PrefixReport {
  std::uint64_t checked_up_to = 0;
  std::size_t matched = 0;  // entries with n <= checked_up_to
};

// Compares the table entries with n <= n_hi against freshly computed records
// and throws DataError on any disagreement.
PrefixReport cross_check_prefix(const RecordTable& table, const std::vector<RecordEntry>& computed,
                                std::uint64_t n_hi);

struct IngestedRecords {
  RecordTable table;
  PrefixReport report;
};

// Reads a reference table and verifies its prefix up to verify_up_to.
IngestedRecords ingest_reference_records(const std::filesystem::path& path, RecordKind kind,
                                         std::uint64_t verify_up_to,
                                         std::uint64_t budget = kDefaultBudget);

// Location of the bundled reference tables.
std::filesystem::path data_directory();

// The argument limiting the length of a paradoxical sequence with a large
// start, recomputed step by step from the record tables.
struct LengthBoundChain {
  Natural n0;
  Natural m0;  // smallest m with M_T(m) >= n0
  std::uint64_t j0 = 0;  // smallest j > 1 with H(j) >= m0
  std::uint64_t q0 = 0;  // fewest odd terms a paradox of length j0 needs when h >= m0
  std::uint64_t sum = 0;  // j0 + q0, a lower bound for d_Col
  RecordEntry top_delay;  // highest Col delay record in the table
  bool sum_exceeds_top = false;
  Natural n1;  // start of that record
  Natural m1;  // smallest m with M_T(m) > n1
  std::uint64_t j1 = 0;  // smallest j > 1 with H(j) >= m1
};

// Throws DataError when a lookup runs past the end of a table.
LengthBoundChain length_bound_chain(const RecordTable& max_excursion, const RecordTable& delay_col,
                                    const Natural& n0 = Natural(1'000'000'000));

}  // namespace paradox
