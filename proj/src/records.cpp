#include "paradox/records.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "paradox/bounds.hpp"
#include "paradox/errors.hpp"
#include "walk_internal.hpp"

namespace paradox {

using detail::u128;

std::string_view to_string(RecordKind kind) {
  switch (kind) {
    case RecordKind::DelayT:
      return "delay-t";
    case RecordKind::DelayCol:
      return "delay-col";
    case RecordKind::MaxExcursionT:
      return "maxexc-t";
  }
  return "?";
}

RecordKind parse_record_kind(std::string_view name) {
  if (name == "delay-t") return RecordKind::DelayT;
  if (name == "delay-col") return RecordKind::DelayCol;
  if (name == "maxexc-t") return RecordKind::MaxExcursionT;
  throw std::invalid_argument("unknown record kind '" + std::string(name) +
                              "' (expected delay-t, delay-col or maxexc-t)");
}

namespace {

// Entries in the memo table; larger ranges walk down into it.
constexpr std::uint64_t kMemoCap = std::uint64_t{1} << 28;

std::vector<RecordEntry> delay_records(std::uint64_t n_hi, Formalism f, std::uint64_t budget) {
  std::vector<RecordEntry> out;
  if (n_hi == 0) return out;
  const std::uint64_t memo_size = std::min(n_hi, kMemoCap) + 1;
  std::vector<std::uint32_t> memo(memo_size, 0);
  std::uint64_t best = 0;
  out.push_back({Natural(1), Natural(0)});
  for (std::uint64_t n = 2; n <= n_hi; ++n) {
    const std::uint64_t floor = std::min(n, memo_size);
    u128 v = n;
    std::uint64_t steps = 0;
    bool overflow = false;
    while (v >= floor) {
      if (steps >= budget) {
        throw BudgetExhausted("delay of " + std::to_string(n) + " not found within " +
                              std::to_string(budget) + " steps");
      }
      if (detail::is_odd(v)) {
        if (v > detail::kU128OddLimit) {
          overflow = true;
          break;
        }
        v = 3 * v + 1;
        if (f == Formalism::Shortcut) v >>= 1;
      } else {
        v >>= 1;
      }
      ++steps;
    }
    std::uint64_t d = 0;
    if (overflow) {
      d = delay(Natural(n), f, budget);
    } else {
      d = steps + memo[static_cast<std::uint64_t>(v)];
    }
    if (n < memo_size) memo[n] = static_cast<std::uint32_t>(d);
    if (d > best) {
      best = d;
      out.push_back({Natural(n), Natural(d)});
    }
  }
  return out;
}

std::vector<RecordEntry> excursion_records(std::uint64_t n_hi, std::uint64_t budget) {
  std::vector<RecordEntry> out;
  if (n_hi == 0) return out;
  out.push_back({Natural(1), Natural(1)});
  u128 best = 1;
  bool saturated = false;
  Natural big_best;
  for (std::uint64_t n = 2; n <= n_hi; ++n) {
    // Climb until the first iterate below n. If that climb beats the record,
    // it is the whole maximum: everything after the descent stays within the
    // excursion of a smaller start.
    u128 v = n;
    u128 peak = n;
    std::uint64_t steps = 0;
    bool overflow = false;
    while (v >= n) {
      if (steps++ >= budget) {
        throw BudgetExhausted("stopping time of " + std::to_string(n) + " not found within " +
                              std::to_string(budget) + " steps");
      }
      if (detail::is_odd(v)) {
        if (v > detail::kU128OddLimit) {
          overflow = true;
          break;
        }
        v = (3 * v + 1) >> 1;
        peak = std::max(peak, v);
      } else {
        v >>= 1;
      }
    }
    if (overflow) {
      // The climb left 128 bits, so it beats every record held in 128 bits;
      // once records live past that range only such climbs can compete.
      const Natural m = max_excursion(Natural(n), Formalism::Shortcut, budget);
      if (!saturated || m > big_best) {
        out.push_back({Natural(n), m});
        big_best = m;
        saturated = true;
      }
      continue;
    }
    if (saturated) continue;
    if (peak > best) {
      best = peak;
      out.push_back({Natural(n), detail::to_natural(peak)});
    }
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<RecordEntry> compute_records(std::uint64_t n_hi, RecordKind kind,
                                         std::uint64_t budget) {
  switch (kind) {
    case RecordKind::DelayT:
      return delay_records(n_hi, Formalism::Shortcut, budget);
    case RecordKind::DelayCol:
      return delay_records(n_hi, Formalism::Classic, budget);
    case RecordKind::MaxExcursionT:
      return excursion_records(n_hi, budget);
  }
  throw std::invalid_argument("unknown record kind");
}

RecordTable::RecordTable(RecordKind kind, std::vector<RecordEntry> entries, std::string source)
    : kind_(kind), entries_(std::move(entries)), source_(std::move(source)) {
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (!(entries_[i - 1].n < entries_[i].n) || !(entries_[i - 1].value < entries_[i].value)) {
      throw DataError("record table entries must increase strictly in both columns");
    }
  }
}

RecordTable RecordTable::parse(std::istream& in, RecordKind kind, std::string source) {
  std::vector<RecordEntry> entries;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty() || text[0] == '#') continue;
    std::istringstream fields(text);
    std::string a, b, extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      throw DataError("expected two columns 'n value'", line);
    }
    RecordEntry entry;
    if (entry.n.set_str(a, 10) != 0 || sgn(entry.n) <= 0) {
      throw DataError("bad start value '" + a + "'", line);
    }
    if (entry.value.set_str(b, 10) != 0 || sgn(entry.value) < 0) {
      throw DataError("bad record value '" + b + "'", line);
    }
    if (!entries.empty()) {
      if (!(entries.back().n < entry.n)) throw DataError("start values must increase", line);
      if (!(entries.back().value < entry.value)) {
        throw DataError("record values must increase", line);
      }
    }
    entries.push_back(std::move(entry));
  }
  return RecordTable(kind, std::move(entries), std::move(source));
}

RecordTable RecordTable::read(const std::filesystem::path& path, RecordKind kind) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open record table " + path.string());
  return parse(in, kind, path.string());
}

const RecordEntry* RecordTable::first_reaching(const Natural& threshold, bool strict) const {
  for (const RecordEntry& e : entries_) {
    if (strict ? e.value > threshold : e.value >= threshold) return &e;
  }
  return nullptr;
}

const RecordEntry& RecordTable::highest() const {
  if (entries_.empty()) throw DataError("record table " + source_ + " is empty");
  return entries_.back();
}

PrefixReport cross_check_prefix(const RecordTable& table, const std::vector<RecordEntry>& computed,
                                std::uint64_t n_hi) {
  PrefixReport report;
  report.checked_up_to = n_hi;
  const Natural limit(n_hi);
  std::size_t i = 0;
  const auto& ref = table.entries();
  for (; i < ref.size() && ref[i].n <= limit; ++i) {
    if (i >= computed.size() || !(computed[i] == ref[i])) {
      std::ostringstream msg;
      msg << to_string(table.kind()) << " table " << table.source() << " disagrees at entry "
          << i + 1 << ": file has (" << ref[i].n.get_str() << ", " << ref[i].value.get_str()
          << ")";
      if (i < computed.size()) {
        msg << ", computed (" << computed[i].n.get_str() << ", "
            << computed[i].value.get_str() << ")";
      } else {
        msg << ", computed list ends";
      }
      throw DataError(msg.str());
    }
  }
  std::size_t computed_in_range = 0;
  for (const RecordEntry& e : computed) {
    if (e.n <= limit) ++computed_in_range;
  }
  if (computed_in_range != i) {
    throw DataError(std::string(to_string(table.kind())) + " table " + table.source() +
                    " is missing record " + computed[i].n.get_str() + " below " +
                    limit.get_str());
  }
  report.matched = i;
  return report;
}

IngestedRecords ingest_reference_records(const std::filesystem::path& path, RecordKind kind,
                                         std::uint64_t verify_up_to, std::uint64_t budget) {
  RecordTable table = RecordTable::read(path, kind);
  const std::vector<RecordEntry> computed = compute_records(verify_up_to, kind, budget);
  PrefixReport report = cross_check_prefix(table, computed, verify_up_to);
  return {std::move(table), report};
}

std::filesystem::path data_directory() { return std::filesystem::path(PARADOX_DATA_DIR); }

LengthBoundChain length_bound_chain(const RecordTable& max_excursion,
                                    const RecordTable& delay_col, const Natural& n0) {
  if (max_excursion.kind() != RecordKind::MaxExcursionT ||
      delay_col.kind() != RecordKind::DelayCol) {
    throw std::invalid_argument("bound chain needs a maxexc-t and a delay-col table");
  }
  LengthBoundChain c;
  c.n0 = n0;
  const RecordEntry* m0 = max_excursion.first_reaching(n0);
  if (!m0) throw DataError("maximum excursion table does not reach " + n0.get_str());
  c.m0 = m0->n;
  c.j0 = smallest_cap_length(c.m0);
  c.q0 = min_ones_for_paradox(c.j0, c.m0);
  c.sum = c.j0 + c.q0;
  c.top_delay = delay_col.highest();
  c.sum_exceeds_top = Natural(c.sum) > c.top_delay.value;
  c.n1 = c.top_delay.n;
  const RecordEntry* m1 = max_excursion.first_reaching(c.n1, true);
  if (!m1) throw DataError("maximum excursion table does not exceed " + c.n1.get_str());
  c.m1 = m1->n;
  c.j1 = smallest_cap_length(c.m1);
  return c;
}

}  // namespace paradox
