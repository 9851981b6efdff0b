#include "paradox/search.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <iomanip>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "paradox/bounds.hpp"
#include "paradox/checkpoint.hpp"
#include "paradox/errors.hpp"
#include "walk_internal.hpp"

namespace paradox {

namespace detail {

namespace {

std::vector<std::int64_t> build_max_odd_table(std::uint64_t size) {
  std::vector<std::int64_t> table(size, -1);
  // bitlen(3^q) <= e  <=>  3^q < 2^e  (3^q is never a power of two for q > 0)
  mpz_class power = 1;
  std::int64_t q = 0;
  std::uint64_t e = 1;
  for (;;) {
    const mpz_class next = power * 3;
    const std::uint64_t bits = mpz_sizeinbase(next.get_mpz_t(), 2);
    for (; e < size && e < bits; ++e) table[e] = q;
    if (e >= size) break;
    power = next;
    ++q;
  }
  return table;
}

}  // namespace

std::int64_t max_odd_below(std::uint64_t e) {
  static const std::vector<std::int64_t> table = build_max_odd_table(std::uint64_t{1} << 14);
  if (e < table.size()) return table[e];
  return static_cast<std::int64_t>(floor_log_ratio(e));
}

}  // namespace detail

using detail::u128;

namespace {

void require_positive(const Natural& n) {
  if (sgn(n) <= 0) throw std::invalid_argument("start value must be positive");
}

[[noreturn]] void budget_error(const std::string& what, const Natural& n, std::uint64_t budget) {
  throw BudgetExhausted(what + " of " + n.get_str() + " not found within " +
                        std::to_string(budget) + " steps");
}

}  // namespace

StepCount stopping_time(const Natural& n, std::uint64_t budget) {
  require_positive(n);
  // T(1) = 2 and T(2) = 1, so no iterate ever drops below 1.
  if (n == 1) return std::nullopt;
  Natural v = n;
  for (std::uint64_t j = 1; j <= budget; ++j) {
    v = step(v, Formalism::Shortcut);
    if (v < n) return j;
  }
  budget_error("stopping time", n, budget);
}

StepCount coeff_stopping_time(const Natural& n, std::uint64_t budget) {
  require_positive(n);
  Natural v = n;
  std::uint64_t q = 0;
  for (std::uint64_t j = 1; j <= budget; ++j) {
    if (detail::is_odd(v)) ++q;
    v = step(v, Formalism::Shortcut);
    if (static_cast<std::int64_t>(q) <= detail::max_odd_below(j)) return j;
  }
  budget_error("coefficient stopping time", n, budget);
}

DelayInfo delay_info(const Natural& n, Formalism f, std::uint64_t budget) {
  require_positive(n);
  DelayInfo info;
  Natural v = n;
  while (v != 1) {
    if (info.steps >= budget) budget_error("delay", n, budget);
    if (detail::is_odd(v)) ++info.odd;
    v = step(v, f);
    ++info.steps;
  }
  return info;
}

std::uint64_t delay(const Natural& n, Formalism f, std::uint64_t budget) {
  return delay_info(n, f, budget).steps;
}

Natural max_excursion(const Natural& n, Formalism f, std::uint64_t budget) {
  require_positive(n);
  Natural v = n;
  Natural best = n;
  std::uint64_t steps = 0;
  while (v != 1) {
    if (steps++ >= budget) budget_error("maximum excursion", n, budget);
    v = step(v, f);
    if (v > best) best = v;
  }
  return best;
}

ParadoxHit make_hit(const Natural& n, std::uint64_t j, std::uint64_t q, std::uint64_t e,
                    const Natural& last, Formalism f) {
  ParadoxHit hit;
  hit.n = n;
  hit.j = j;
  hit.q = q;
  hit.e = e;
  const mpz_class three_q = pow3(q);
  hit.coefficient = Dyadic(three_q, e);
  hit.remainder = Dyadic(mpz_class((last << static_cast<mp_bitcnt_t>(e)) - three_q * n), e)
                      .canonical();
  hit.d = last - n;
  hit.start_odd = detail::is_odd(n);
  hit.end_odd = detail::is_odd(last);
  hit.formalism = f;
  return hit;
}

std::string to_csv_row(const ParadoxHit& hit) {
  std::ostringstream out;
  out << hit.n.get_str() << ',' << hit.j << ',' << hit.q << ','
      << hit.coefficient.num().get_str() << ',' << hit.coefficient.denominator().get_str()
      << ',' << hit.remainder.num().get_str() << ','
      << hit.remainder.denominator().get_str() << ',' << hit.d.get_str() << ','
      << (hit.start_odd ? 1 : 0) << ',' << (hit.end_odd ? 1 : 0) << ','
      << to_string(hit.formalism);
  return out.str();
}

namespace {

mpz_class parse_integer_field(const std::string& field, const char* name) {
  mpz_class v;
  if (field.empty() || v.set_str(field, 10) != 0) {
    throw DataError(std::string("bad ") + name + " field '" + field + "'");
  }
  return v;
}

std::uint64_t parse_count_field(const std::string& field, const char* name) {
  const mpz_class v = parse_integer_field(field, name);
  if (sgn(v) < 0 || !v.fits_ulong_p()) throw DataError(std::string(name) + " out of range");
  return v.get_ui();
}

// Exponent of a positive power of two, or throws.
std::uint64_t log2_exact(const mpz_class& v, const char* name) {
  if (sgn(v) <= 0 || mpz_popcount(v.get_mpz_t()) != 1) {
    throw DataError(std::string(name) + " is not a power of two");
  }
  return mpz_sizeinbase(v.get_mpz_t(), 2) - 1;
}

bool parse_bit(const std::string& field, const char* name) {
  if (field == "0") return false;
  if (field == "1") return true;
  throw DataError(std::string("bad ") + name + " field '" + field + "'");
}

}  // namespace

ParadoxHit parse_csv_row(const std::string& row) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : row) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  if (fields.size() != 11) {
    throw DataError("expected 11 fields, got " + std::to_string(fields.size()));
  }
  const mpz_class n = parse_integer_field(fields[0], "n");
  if (sgn(n) <= 0) throw DataError("n must be positive");
  const std::uint64_t j = parse_count_field(fields[1], "j");
  const std::uint64_t q = parse_count_field(fields[2], "q");
  if (parse_integer_field(fields[3], "C_num") != pow3(q)) throw DataError("C_num is not 3^q");
  const std::uint64_t e = log2_exact(parse_integer_field(fields[4], "C_den"), "C_den");
  const mpz_class e_num = parse_integer_field(fields[5], "E_num");
  const std::uint64_t e_exp = log2_exact(parse_integer_field(fields[6], "E_den"), "E_den");
  const mpz_class d = parse_integer_field(fields[7], "d");
  const bool start_odd = parse_bit(fields[8], "start_odd");
  const bool end_odd = parse_bit(fields[9], "end_odd");
  Formalism f;
  try {
    f = parse_formalism(fields[10]);
  } catch (const std::invalid_argument& err) {
    throw DataError(err.what());
  }
  if (sgn(d) < 0) throw DataError("d must be non-negative");

  ParadoxHit hit = make_hit(n, j, q, e, n + d, f);
  if (!(hit.remainder == Dyadic(e_num, e_exp)) || hit.start_odd != start_odd ||
      hit.end_odd != end_odd) {
    throw DataError("row is not self-consistent (d != C n + E - n or parity flags differ)");
  }
  return hit;
}

std::vector<ParadoxHit> paradoxes_from(const Natural& n, Formalism f, std::uint64_t budget) {
  require_positive(n);
  std::vector<ParadoxHit> out;
  detail::WalkPos pos;
  Natural big;
  bool need_big = true;
  if (n.fits_ulong_p()) {
    u128 v = n.get_ui();
    const u128 start = v;
    const detail::WalkEnd end =
        detail::walk_paradoxes(v, start, pos, f, budget, [&](const detail::WalkPos& p, u128 x) {
          out.push_back(make_hit(n, p.steps, p.q, p.e, detail::to_natural(x), f));
        });
    if (end == detail::WalkEnd::Budget) budget_error("delay", n, budget);
    need_big = end == detail::WalkEnd::Overflow;
    if (need_big) big = detail::to_natural(v);
  } else {
    big = n;
  }
  if (need_big) {
    const detail::WalkEnd end = detail::walk_paradoxes(
        big, n, pos, f, budget, [&](const detail::WalkPos& p, const Natural& x) {
          out.push_back(make_hit(n, p.steps, p.q, p.e, x, f));
        });
    if (end == detail::WalkEnd::Budget) budget_error("delay", n, budget);
  }
  return out;
}

namespace {

bool hit_order(const ParadoxHit& a, const ParadoxHit& b) {
  if (a.n != b.n) return a.n < b.n;
  return a.j < b.j;
}

std::vector<ParadoxHit> scan_block(std::uint64_t first, std::uint64_t last, Formalism f,
                                   std::uint64_t budget) {
  std::vector<ParadoxHit> out;
  for (std::uint64_t n = first;; ++n) {
    std::vector<ParadoxHit> hits = paradoxes_from(Natural(n), f, budget);
    out.insert(out.end(), std::make_move_iterator(hits.begin()),
               std::make_move_iterator(hits.end()));
    if (n == last) break;
  }
  return out;
}

}  // namespace

SearchResult enumerate_paradoxes(std::uint64_t lo, std::uint64_t hi,
                                 const SearchOptions& options) {
  if (lo < 3 || lo > hi) throw std::invalid_argument("search range must satisfy 3 <= lo <= hi");
  if (hi == std::numeric_limits<std::uint64_t>::max()) {
    throw std::invalid_argument("search range upper bound too large");
  }
  if (options.threads == 0) throw std::invalid_argument("thread count must be positive");
  if (options.block_size == 0) throw std::invalid_argument("block size must be positive");

  const std::uint64_t block = options.block_size;
  const std::uint64_t total_blocks = (hi - lo) / block + 1;
  const auto block_first = [&](std::uint64_t k) { return lo + k * block; };
  const auto block_last = [&](std::uint64_t k) {
    const std::uint64_t first = block_first(k);
    return hi - first < block - 1 ? hi : first + block - 1;
  };
  const auto cursor_after = [&](std::uint64_t committed) {
    return committed >= total_blocks ? hi + 1 : block_first(committed);
  };

  SearchCheckpoint state;
  state.lo = lo;
  state.hi = hi;
  state.formalism = options.formalism;
  state.block_size = block;
  state.budget = options.budget;
  state.config_hash = search_config_hash(lo, hi, options.formalism, block, options.budget);
  state.cursor = lo;

  std::uint64_t frontier = 0;
  if (options.checkpoint && std::filesystem::exists(*options.checkpoint)) {
    SearchCheckpoint saved = read_checkpoint(*options.checkpoint);
    if (saved.config_hash != state.config_hash) {
      throw DataError("checkpoint " + options.checkpoint->string() +
                      " belongs to a different search configuration");
    }
    if (saved.cursor < lo || saved.cursor > hi + 1 ||
        (saved.cursor <= hi && (saved.cursor - lo) % block != 0)) {
      throw DataError("checkpoint cursor is not on a block boundary");
    }
    frontier = saved.cursor > hi ? total_blocks : (saved.cursor - lo) / block;
    state.hits = std::move(saved.hits);
    state.cursor = saved.cursor;
  }

  std::uint64_t stop_at = total_blocks;
  if (options.stop_after_blocks) stop_at = std::min(stop_at, *options.stop_after_blocks);

  if (frontier < stop_at) {
    std::mutex mutex;
    std::condition_variable ready;
    std::map<std::uint64_t, std::vector<ParadoxHit>> finished;
    std::atomic<std::uint64_t> next_block{frontier};
    std::atomic<bool> abort{false};
    std::exception_ptr failure;

    // Workers stay within a bounded window past the frontier.
    const std::uint64_t window = 4ull * options.threads + 4;
    std::uint64_t committed = frontier;

    auto worker = [&] {
      for (;;) {
        const std::uint64_t k = next_block.fetch_add(1);
        if (k >= stop_at || abort.load()) return;
        {
          std::unique_lock lock(mutex);
          ready.wait(lock, [&] { return abort.load() || k < committed + window; });
          if (abort.load()) return;
        }
        try {
          std::vector<ParadoxHit> hits =
              scan_block(block_first(k), block_last(k), options.formalism, options.budget);
          std::lock_guard lock(mutex);
          finished.emplace(k, std::move(hits));
        } catch (...) {
          std::lock_guard lock(mutex);
          if (!failure) failure = std::current_exception();
          abort = true;
        }
        ready.notify_all();
      }
    };

    std::vector<std::thread> pool;
    const std::uint64_t workers = std::min<std::uint64_t>(options.threads, stop_at - frontier);
    pool.reserve(workers);
    for (std::uint64_t i = 0; i < workers; ++i) pool.emplace_back(worker);

    try {
      while (committed < stop_at) {
        std::vector<ParadoxHit> hits;
        {
          std::unique_lock lock(mutex);
          ready.wait(lock, [&] { return abort.load() || finished.count(committed) > 0; });
          if (abort.load()) break;
          hits = std::move(finished[committed]);
          finished.erase(committed);
        }
        state.hits.insert(state.hits.end(), std::make_move_iterator(hits.begin()),
                          std::make_move_iterator(hits.end()));
        state.cursor = cursor_after(committed + 1);
        if (options.checkpoint) write_checkpoint(*options.checkpoint, state);
        {
          std::lock_guard lock(mutex);
          ++committed;
        }
        ready.notify_all();
      }
    } catch (...) {
      std::lock_guard lock(mutex);
      if (!failure) failure = std::current_exception();
      abort = true;
    }
    abort = abort.load() || committed < stop_at;
    ready.notify_all();
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    frontier = committed;
  }

  SearchResult result;
  result.hits = std::move(state.hits);
  std::stable_sort(result.hits.begin(), result.hits.end(), hit_order);
  result.complete = frontier >= total_blocks;
  result.next_start = cursor_after(frontier);
  return result;
}

std::string truncate_decimal(const mpq_class& value, int digits) {
  if (digits < 0) throw std::invalid_argument("digit count must be non-negative");
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const mpq_class magnitude = abs(value) * scale;
  mpz_class scaled;
  mpz_tdiv_q(scaled.get_mpz_t(), magnitude.get_num_mpz_t(), magnitude.get_den_mpz_t());
  mpz_class whole;
  mpz_class frac;
  mpz_tdiv_qr(whole.get_mpz_t(), frac.get_mpz_t(), scaled.get_mpz_t(), scale.get_mpz_t());
  std::string out = (sgn(value) < 0 && sgn(scaled) != 0) ? "-" : "";
  out += whole.get_str();
  if (digits > 0) {
    std::string f = frac.get_str();
    out += '.';
    out += std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
  }
  return out;
}

namespace {

// Does the prefix of hit's trajectory pass through `landmark`?
bool visits(const ParadoxHit& hit, const Natural& landmark) {
  Natural v = hit.n;
  for (std::uint64_t k = 0;; ++k) {
    if (v == landmark) return true;
    if (k == hit.j) return false;
    v = step(v, hit.formalism);
  }
}

}  // namespace

Census census(const std::vector<ParadoxHit>& hits) {
  Census out;
  if (!hits.empty()) out.formalism = hits.front().formalism;
  std::map<std::pair<std::uint64_t, std::uint64_t>, CensusRow> rows;
  std::set<Natural> starts;
  CensusSummary& s = out.summary;
  bool first = true;
  for (const ParadoxHit& h : hits) {
    if (h.formalism != out.formalism) {
      throw std::invalid_argument("census needs hits from a single formalism");
    }
    auto [it, inserted] = rows.try_emplace({h.e, h.q});
    CensusRow& r = it->second;
    if (inserted) {
      r.j = h.e;
      r.q = h.q;
      r.n_min = r.n_max = h.n;
      r.e_min = r.e_max = h.remainder;
      r.d_min = r.d_max = h.d;
    } else {
      r.n_min = std::min(r.n_min, h.n);
      r.n_max = std::max(r.n_max, h.n);
      if (h.remainder < r.e_min) r.e_min = h.remainder;
      if (r.e_max < h.remainder) r.e_max = h.remainder;
      r.d_min = std::min(r.d_min, h.d);
      r.d_max = std::max(r.d_max, h.d);
    }
    ++r.count;
    if (h.start_odd && h.end_odd) ++r.count_odd;

    ++s.total;
    if (h.d == 1) ++s.near_cycles;
    if (!h.start_odd && !h.end_odd) ++s.even_even;
    starts.insert(h.n);
    if (!visits(h, Natural(h.e == 8 ? 11 : 103))) ++s.landmark_misses;
    if (first) {
      s.n_min = s.n_max = h.n;
      s.d_max = h.d;
      s.d_max_start = h.n;
      first = false;
    } else {
      s.n_min = std::min(s.n_min, h.n);
      s.n_max = std::max(s.n_max, h.n);
      if (h.d > s.d_max || (h.d == s.d_max && h.n < s.d_max_start)) {
        s.d_max = h.d;
        s.d_max_start = h.n;
      }
    }
  }
  s.distinct_starts = starts.size();
  for (auto& [key, row] : rows) out.rows.push_back(std::move(row));
  return out;
}

std::string Census::to_table(int decimals) const {
  std::ostringstream out;
  const bool classic = formalism == Formalism::Classic;
  out << "# formalism " << paradox::to_string(formalism)
      << "; C truncated to 3 decimals, E truncated to " << decimals << " decimals\n";
  out << std::setw(5) << (classic ? "e" : "j") << std::setw(5) << "q" << std::setw(8) << "C"
      << std::setw(7) << "N" << std::setw(7) << "N_odd" << std::setw(16) << "n range"
      << std::setw(22) << "E range" << std::setw(14) << "d range" << '\n';
  for (const CensusRow& r : rows) {
    const mpq_class c(pow3(r.q), pow2(r.j));
    out << std::setw(5) << r.j << std::setw(5) << r.q << std::setw(8)
        << truncate_decimal(c, 3) << std::setw(7) << r.count << std::setw(7) << r.count_odd
        << std::setw(16) << (r.n_min.get_str() + " - " + r.n_max.get_str()) << std::setw(22)
        << (truncate_decimal(r.e_min.to_rational(), decimals) + " - " +
            truncate_decimal(r.e_max.to_rational(), decimals))
        << std::setw(14) << (r.d_min.get_str() + " - " + r.d_max.get_str()) << '\n';
  }
  const CensusSummary& s = summary;
  out << "total hits: " << s.total << '\n'
      << "near-cycles (d = 1): " << s.near_cycles << '\n'
      << "even start and even end: " << s.even_even << '\n'
      << "distinct starts: " << s.distinct_starts << '\n';
  if (s.total > 0) {
    out << "start range: " << s.n_min.get_str() << " - " << s.n_max.get_str() << '\n'
        << "largest d: " << s.d_max.get_str() << " (start " << s.d_max_start.get_str()
        << ", end " << mpz_class(s.d_max_start + s.d_max).get_str() << ")\n";
  }
  out << "landmark misses: " << s.landmark_misses << '\n';
  return out.str();
}

namespace {

// Both stopping times in one walk. Returns false if the 128-bit walk would
// overflow, in which case the caller uses the unbounded versions.
bool cst_pair_fast(std::uint64_t n, std::uint64_t budget, std::uint64_t& t, std::uint64_t& tau) {
  u128 v = n;
  std::uint64_t q = 0;
  bool have_tau = false;
  for (std::uint64_t j = 1; j <= budget; ++j) {
    if (detail::is_odd(v)) {
      if (v > detail::kU128OddLimit) return false;
      v = (3 * v + 1) >> 1;
      ++q;
    } else {
      v >>= 1;
    }
    if (!have_tau && static_cast<std::int64_t>(q) <= detail::max_odd_below(j)) {
      tau = j;
      have_tau = true;
    }
    if (v < n) {
      t = j;
      // When T^j(n) < n the coefficient is already below one.
      return have_tau;
    }
  }
  budget_error("stopping time", Natural(n), budget);
}

}  // namespace

CstReport verify_cst(std::uint64_t lo, std::uint64_t hi, std::uint64_t budget) {
  if (lo < 2) throw std::invalid_argument("CST range must start at 2 or above");
  CstReport report;
  report.lo = lo;
  report.hi = hi;
  if (lo > hi) return report;
  for (std::uint64_t n = lo;; ++n) {
    std::uint64_t t = 0;
    std::uint64_t tau = 0;
    if (!cst_pair_fast(n, budget, t, tau)) {
      const Natural big(n);
      t = *stopping_time(big, budget);
      tau = *coeff_stopping_time(big, budget);
    }
    ++report.checked;
    if (t != tau) report.counterexamples.push_back(n);
    if (t > tau) report.max_gap = std::max(report.max_gap, t - tau);
    if (n == hi) break;
  }
  return report;
}

}  // namespace paradox
