#include "paradox/repro.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "paradox/bounds.hpp"
#include "paradox/errors.hpp"
#include "paradox/numtheory.hpp"
#include "paradox/poset.hpp"
#include "paradox/records.hpp"

namespace paradox {

std::string render_search_output(const std::vector<ParadoxHit>& hits) {
  std::ostringstream out;
  out << kHitCsvHeader << '\n';
  for (const ParadoxHit& h : hits) out << to_csv_row(h) << '\n';
  out << census(hits).to_table();
  return out.str();
}

namespace {

// Collects named checks for one criterion.
class Checks {
 public:
  template <typename A, typename B>
  void equal(const std::string& what, const A& got, const B& expected) {
    std::ostringstream line;
    const bool ok = got == expected;
    line << (ok ? "ok   " : "FAIL ") << what << ": " << show(got);
    if (!ok) line << " (expected " << show(expected) << ")";
    add(ok, line.str());
  }

  void truth(const std::string& what, bool ok, const std::string& note = {}) {
    add(ok, std::string(ok ? "ok   " : "FAIL ") + what + (note.empty() ? "" : ": " + note));
  }

  bool passed() const { return passed_; }
  std::vector<std::string> take() { return std::move(lines_); }

 private:
  template <typename T>
  static std::string show(const T& v) {
    if constexpr (std::is_same_v<T, mpz_class>) {
      return v.get_str();
    } else {
      std::ostringstream s;
      s << v;
      return s.str();
    }
  }

  void add(bool ok, std::string line) {
    passed_ = passed_ && ok;
    lines_.push_back(std::move(line));
  }

  bool passed_ = true;
  std::vector<std::string> lines_;
};

mpq_class quarter(std::uint64_t j) {
  mpq_class r(j, 4);
  r.canonicalize();
  return r;
}

struct ExpectedRow {
  std::uint64_t j, q, count, count_odd, n_min, n_max, d_min, d_max;
};

// Census rows of the shortcut search over [3, 10^6].
const std::vector<ExpectedRow> kShortcutRows = {
    {8, 5, 5, 0, 7, 25, 1, 2},           {27, 17, 50, 12, 164, 885, 1, 26},
    {46, 29, 231, 56, 91, 4611, 1, 188}, {54, 34, 2, 0, 432, 864, 1, 2},
    {65, 41, 244, 62, 73, 4547, 7, 292}, {73, 46, 56, 18, 487, 4614, 1, 63},
    {92, 58, 5, 0, 3567, 4551, 65, 125},
};

std::string pair_list(const std::set<std::pair<std::uint64_t, std::uint64_t>>& pairs) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [j, q] : pairs) {
    out << (first ? "" : " ") << '(' << j << ',' << q << ')';
    first = false;
  }
  return out.str();
}

// Reachability under the adjacent-swap relation, breadth first.
std::set<ParityVector> up_closure(const ParityVector& v) {
  std::set<ParityVector> seen{v};
  std::vector<ParityVector> frontier{v};
  while (!frontier.empty()) {
    std::vector<ParityVector> next;
    for (const ParityVector& x : frontier) {
      for (ParityVector& y : covers(x)) {
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

using HitKey = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t, std::string>;

// No early exit, no fixed-width arithmetic: every prefix length is tested.
// Prefixes that already passed through 1 are not counted; under Col the
// trivial cycle revisits 4, which would otherwise add endless hits for n = 3, 4.
std::set<HitKey> naive_hits(std::uint64_t n_hi, std::uint64_t j_hi, Formalism f) {
  std::set<HitKey> out;
  for (std::uint64_t n = 3; n <= n_hi; ++n) {
    mpz_class v = n;
    mpz_class three_q = 1;
    mpz_class two_e = 1;
    std::uint64_t q = 0;
    std::uint64_t e = 0;
    bool through_one = false;
    for (std::uint64_t j = 1; j <= j_hi; ++j) {
      through_one = through_one || v == 1;
      if (mpz_odd_p(v.get_mpz_t())) {
        v = 3 * v + 1;
        three_q *= 3;
        ++q;
        if (f == Formalism::Shortcut) {
          v /= 2;
          two_e *= 2;
          ++e;
        }
      } else {
        v /= 2;
        two_e *= 2;
        ++e;
      }
      if (three_q < two_e && v >= n && !through_one) out.emplace(n, j, q, e, v.get_str());
    }
  }
  return out;
}

}  // namespace

struct ReproSuite::State {
  ReproOptions options;
  std::optional<SearchResult> shortcut;
  std::optional<SearchResult> classic;

  const SearchResult& search(Formalism f) {
    std::optional<SearchResult>& slot = f == Formalism::Shortcut ? shortcut : classic;
    if (!slot) {
      SearchOptions o;
      o.formalism = f;
      o.threads = options.threads;
      slot = enumerate_paradoxes(3, 1'000'000, o);
    }
    return *slot;
  }

  void census_rows(Checks& c);
  void summary_stats(Checks& c);
  void classic_census(Checks& c);
  void null_window(Checks& c);
  void cst(Checks& c);
  void bound_chain(Checks& c);
  void record_prefixes(Checks& c);
  void properties(Checks& c);
  void diophantine(Checks& c);
  void determinism(Checks& c);
};

ReproSuite::ReproSuite(ReproOptions options) : state_(std::make_unique<State>()) {
  if (options.data_dir.empty()) options.data_dir = data_directory();
  if (options.scratch_dir.empty()) options.scratch_dir = std::filesystem::temp_directory_path();
  state_->options = std::move(options);
}

ReproSuite::~ReproSuite() = default;

std::string ReproSuite::criterion_name(int id) {
  switch (id) {
    case 1: return "shortcut census over [3, 10^6]";
    case 2: return "shortcut summary statistics";
    case 3: return "classic census over [3, 10^6]";
    case 4: return "no hits from 4615 upward";
    case 5: return "stopping time equals coefficient stopping time";
    case 6: return "length bound chain from record tables";
    case 7: return "record table prefixes";
    case 8: return "property suites";
    case 9: return "diophantine values";
    case 10: return "determinism across threads and resume";
    default: throw std::invalid_argument("no criterion " + std::to_string(id));
  }
}

CriterionResult ReproSuite::run(int id) {
  CriterionResult r;
  r.id = id;
  r.name = criterion_name(id);
  const auto start = std::chrono::steady_clock::now();
  Checks c;
  State& s = *state_;
  try {
    switch (id) {
      case 1: s.census_rows(c); break;
      case 2: s.summary_stats(c); break;
      case 3: s.classic_census(c); break;
      case 4: s.null_window(c); break;
      case 5: s.cst(c); break;
      case 6: s.bound_chain(c); break;
      case 7: s.record_prefixes(c); break;
      case 8: s.properties(c); break;
      case 9: s.diophantine(c); break;
      case 10: s.determinism(c); break;
    }
  } catch (const std::exception& e) {
    c.truth("completed without error", false, e.what());
  }
  r.passed = c.passed();
  r.details = c.take();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> ReproSuite::run_all(
    const std::function<void(const CriterionResult&)>& each) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) {
    out.push_back(run(id));
    if (each) each(out.back());
  }
  return out;
}

void ReproSuite::State::census_rows(Checks& c) {
  const SearchResult& r = search(Formalism::Shortcut);
  c.truth("search complete", r.complete);
  const Census cs = census(r.hits);
  c.equal("total hits", cs.summary.total, std::uint64_t{593});
  c.equal("row count", cs.rows.size(), kShortcutRows.size());
  for (std::size_t i = 0; i < std::min(cs.rows.size(), kShortcutRows.size()); ++i) {
    const CensusRow& got = cs.rows[i];
    const ExpectedRow& want = kShortcutRows[i];
    std::ostringstream g, w;
    g << got.j << ',' << got.q << " N=" << got.count << " N_odd=" << got.count_odd << " n "
      << got.n_min.get_str() << '-' << got.n_max.get_str() << " d " << got.d_min.get_str()
      << '-' << got.d_max.get_str();
    w << want.j << ',' << want.q << " N=" << want.count << " N_odd=" << want.count_odd << " n "
      << want.n_min << '-' << want.n_max << " d " << want.d_min << '-' << want.d_max;
    c.equal("row " + std::to_string(i + 1), g.str(), w.str());
  }
  const Natural lo = r.hits.empty() ? Natural(0) : cs.summary.n_min;
  c.truth("starts within [7, 4614]", lo == 7 && cs.summary.n_max == 4614,
          lo.get_str() + " - " + cs.summary.n_max.get_str());
}

void ReproSuite::State::summary_stats(Checks& c) {
  const Census cs = census(search(Formalism::Shortcut).hits);
  c.equal("near-cycles (d = 1)", cs.summary.near_cycles, std::uint64_t{20});
  c.equal("even start, even end", cs.summary.even_even, std::uint64_t{138});
  c.equal("distinct starts", cs.summary.distinct_starts, std::uint64_t{550});
  c.equal("hits missing 11 (j = 8) or 103 (otherwise)", cs.summary.landmark_misses,
          std::uint64_t{0});
}

void ReproSuite::State::classic_census(Checks& c) {
  const SearchResult& r = search(Formalism::Classic);
  c.truth("search complete", r.complete);
  const Census cs = census(r.hits);
  c.equal("total hits", cs.summary.total, std::uint64_t{1541});
  c.truth("starts within [7, 9229]", cs.summary.n_min == 7 && cs.summary.n_max == 9229,
          cs.summary.n_min.get_str() + " - " + cs.summary.n_max.get_str());
  std::set<std::pair<std::uint64_t, std::uint64_t>> got;
  for (const CensusRow& row : cs.rows) got.emplace(row.j, row.q);
  std::set<std::pair<std::uint64_t, std::uint64_t>> want{{16, 10}, {130, 82}};
  for (const ExpectedRow& row : kShortcutRows) want.emplace(row.j, row.q);
  c.equal("(e, q) pairs", pair_list(got), pair_list(want));
  c.equal("near-cycles (d = 1)", cs.summary.near_cycles, std::uint64_t{36});
  c.equal("largest d", cs.summary.d_max, mpz_class(584));
  c.equal("start of largest d", cs.summary.d_max_start, mpz_class(8648));
  c.equal("end of largest d", mpz_class(cs.summary.d_max_start + cs.summary.d_max),
          mpz_class(9232));
}

void ReproSuite::State::null_window(Checks& c) {
  SearchOptions o;
  o.threads = options.threads;
  const SearchResult r = enumerate_paradoxes(4615, options.null_window_hi, o);
  c.truth("search complete", r.complete);
  c.equal("hits in [4615, " + std::to_string(options.null_window_hi) + "]", r.hits.size(),
          std::size_t{0});
}

void ReproSuite::State::cst(Checks& c) {
  const CstReport r = verify_cst(2, options.cst_hi);
  c.equal("starts checked", r.checked, options.cst_hi - 1);
  c.equal("counterexamples", r.counterexamples.size(), std::size_t{0});
  c.equal("largest t - tau", r.max_gap, std::uint64_t{0});
}

void ReproSuite::State::bound_chain(Checks& c) {
  const RecordTable maxexc =
      RecordTable::read(options.data_dir / "maxexc_t.txt", RecordKind::MaxExcursionT);
  const RecordTable delays =
      RecordTable::read(options.data_dir / "delay_col.txt", RecordKind::DelayCol);
  const LengthBoundChain chain = length_bound_chain(maxexc, delays);
  c.equal("m0", chain.m0, mpz_class(113383));
  c.equal("j0", chain.j0, std::uint64_t{1539});
  c.equal("q0", chain.q0, std::uint64_t{971});
  c.equal("j0 + q0", chain.sum, std::uint64_t{2510});
  c.equal("highest Col delay record", chain.top_delay.value, mpz_class(2456));
  c.truth("j0 + q0 exceeds that delay", chain.sum_exceeds_top);
  c.equal("m1", chain.m1, mpz_class("23035537407"));
  c.equal("j1", chain.j1, std::uint64_t{301994});
}

void ReproSuite::State::record_prefixes(Checks& c) {
  const std::uint64_t hi = options.record_prefix_hi;
  for (RecordKind kind : {RecordKind::MaxExcursionT, RecordKind::DelayCol}) {
    const std::string file = kind == RecordKind::MaxExcursionT ? "maxexc_t.txt" : "delay_col.txt";
    try {
      const IngestedRecords in = ingest_reference_records(options.data_dir / file, kind, hi);
      c.truth(std::string(to_string(kind)) + " prefix up to " + std::to_string(hi), true,
              std::to_string(in.report.matched) + " entries match");
    } catch (const DataError& e) {
      c.truth(std::string(to_string(kind)) + " prefix up to " + std::to_string(hi), false,
              e.what());
    }
  }
  const Natural n0(1'000'000'000);
  const Natural m0_excursion = max_excursion(Natural(113383));
  c.truth("M_T(113383) >= 10^9", m0_excursion >= n0, m0_excursion.get_str());
  std::uint64_t first_above = 0;
  for (std::uint64_t m = 1; m < 113383 && first_above == 0; ++m) {
    if (max_excursion(Natural(m)) >= n0) first_above = m;
  }
  c.truth("M_T(m) < 10^9 for every m < 113383", first_above == 0,
          first_above ? "fails at " + std::to_string(first_above) : "");
}

void ReproSuite::State::properties(Checks& c) {
  // Linear form identity on random starts, lengths and maps.
  {
    std::mt19937_64 rng(options.seed);
    std::uint64_t bad = 0;
    for (std::uint64_t i = 0; i < options.linear_form_samples; ++i) {
      const unsigned bits = 1 + static_cast<unsigned>(rng() % 128);
      mpz_class n = rng();
      n <<= 64;
      n += rng();
      n >>= 128 - bits;
      if (n == 0) n = 1;
      const std::uint64_t j = rng() % 301;
      const Formalism f = (rng() & 1) ? Formalism::Classic : Formalism::Shortcut;
      const Trajectory t = trajectory(n, j, f);
      Natural v = n;
      for (std::uint64_t k = 0; k < j; ++k) v = step(v, f);
      const std::size_t mid = static_cast<std::size_t>(rng() % (j + 1));
      if (!(v == t.last()) || !t.final_form().holds_for(n, t.last()) ||
          !t.forms[mid].holds_for(n, t.iterates[mid])) {
        ++bad;
      }
    }
    c.equal("linear form failures over " + std::to_string(options.linear_form_samples) +
                " samples",
            bad, std::uint64_t{0});
  }
  // Remainder order along the majorization order.
  {
    std::uint64_t violations = 0;
    for (std::size_t j = 1; j <= 10; ++j) {
      violations += check_remainder_monotonicity(j).violations.size();
    }
    c.equal("monotonicity violations, j <= 10", violations, std::uint64_t{0});
  }
  // Extremal remainders and their residue classes.
  {
    std::uint64_t failures = 0;
    for (std::uint64_t j = 1; j <= 14; ++j) {
      std::vector<RemainderBounds> rb;
      for (std::uint64_t q = 0; q <= j; ++q) rb.push_back(remainder_bounds(j, q));
      const mpz_class modulus = pow2(j);
      for (std::uint64_t n = 1; n <= (std::uint64_t{1} << j); ++n) {
        const Trajectory t = trajectory(Natural(n), j, Formalism::Shortcut);
        const LinearForm& form = t.final_form();
        const RemainderBounds& b = rb[form.q];
        const Dyadic& e = form.remainder;
        const mpz_class residue = mpz_class(n) % modulus;
        if (e < b.lower || b.upper < e) ++failures;
        if ((e == b.upper) != (residue == b.upper_class % modulus)) ++failures;
        if ((e == b.lower) != (residue == b.lower_class % modulus)) ++failures;
      }
    }
    c.equal("remainder bound failures, j <= 14", failures, std::uint64_t{0});
  }
  {
    std::uint64_t wrong = 0;
    for (std::uint64_t j = 1; j <= 18; ++j) {
      if (mean_remainder(j) != quarter(j)) ++wrong;
    }
    c.equal("mean remainder differs from j/4, j <= 18", wrong, std::uint64_t{0});
  }
  // Closure of the swap relation against the prefix-sum order.
  {
    std::uint64_t mismatches = 0;
    for (std::size_t j = 1; j <= 10; ++j) {
      for (std::size_t q = 0; q <= j; ++q) {
        const HasseDiagram d = hasse(j, q);
        for (const ParityVector& v : d.nodes) {
          const std::set<ParityVector> up = up_closure(v);
          for (const ParityVector& w : d.nodes) {
            const PosetRelation rel = compare(v, w);
            const bool below = rel == PosetRelation::Less || rel == PosetRelation::Equal;
            if (below != (up.count(w) > 0)) ++mismatches;
          }
        }
      }
    }
    c.equal("closure vs prefix-sum mismatches, j <= 10", mismatches, std::uint64_t{0});
  }
  // E/n bounds and the ones-ratio window on every hit.
  for (Formalism f : {Formalism::Shortcut, Formalism::Classic}) {
    std::uint64_t failures = 0;
    const SearchResult& r = search(f);
    for (const ParadoxHit& h : r.hits) {
      const Trajectory t = trajectory(h.n, h.j, f);
      const EnRatioBounds b = en_ratio_bounds(t);
      if (!b.paradoxical || !b.holds || !ones_ratio_window(t)) ++failures;
    }
    c.equal(std::string("E/n bound or window failures on ") + std::string(to_string(f)) +
                " hits (" + std::to_string(r.hits.size()) + ")",
            failures, std::uint64_t{0});
  }
  // Unpruned double loop against the search.
  for (Formalism f : {Formalism::Shortcut, Formalism::Classic}) {
    const std::set<HitKey> expected = naive_hits(5000, 100, f);
    SearchOptions o;
    o.formalism = f;
    o.threads = options.threads;
    std::set<HitKey> got;
    for (const ParadoxHit& h : enumerate_paradoxes(3, 5000, o).hits) {
      if (h.j <= 100) got.emplace(h.n.get_ui(), h.j, h.q, h.e, h.last().get_str());
    }
    c.truth(std::string("naive search agrees on ") + std::string(to_string(f)) +
                " (n <= 5000, j <= 100)",
            got == expected,
            std::to_string(got.size()) + " vs " + std::to_string(expected.size()) + " hits");
  }
}

void ReproSuite::State::diophantine(Checks& c) {
  const std::vector<Convergent> cs = convergents(7);
  std::ostringstream list;
  for (const Convergent& k : cs) list << k.p.get_str() << '/' << k.q.get_str() << ' ';
  c.equal("first convergents", list.str(), std::string("0/1 1/1 1/2 2/3 5/8 12/19 41/65 "));
  c.equal("heuristic cap for alpha = 42, beta = 3",
          heuristic_j_cap(mpq_class(42), mpq_class(3)), std::uint64_t{17396});
  for (const ExpectedRow& row : kShortcutRows) {
    c.truth("gap bound at (" + std::to_string(row.j) + ", " + std::to_string(row.q) + ")",
            rhin_gap_ok(row.j, row.q));
  }
}

void ReproSuite::State::determinism(Checks& c) {
  for (Formalism f : {Formalism::Shortcut, Formalism::Classic}) {
    const std::string name(to_string(f));
    const std::string reference = render_search_output(search(f).hits);
    for (unsigned threads : {1u, 4u, 8u}) {
      if (threads == options.threads) continue;
      SearchOptions o;
      o.formalism = f;
      o.threads = threads;
      const bool same = render_search_output(enumerate_paradoxes(3, 1'000'000, o).hits) ==
                        reference;
      c.truth(name + " output identical at " + std::to_string(threads) + " threads", same);
    }
    const std::filesystem::path cp =
        options.scratch_dir / ("paradox-resume-" + name + "-" +
                               std::to_string(std::chrono::steady_clock::now()
                                                  .time_since_epoch()
                                                  .count()) +
                               ".ckpt");
    std::filesystem::remove(cp);
    SearchOptions o;
    o.formalism = f;
    o.threads = options.threads;
    o.checkpoint = cp;
    o.stop_after_blocks = 5;
    const SearchResult partial = enumerate_paradoxes(3, 1'000'000, o);
    c.truth(name + " interrupted run stops early", !partial.complete && std::filesystem::exists(cp),
            "next start " + std::to_string(partial.next_start));
    o.stop_after_blocks.reset();
    const SearchResult resumed = enumerate_paradoxes(3, 1'000'000, o);
    c.truth(name + " resumed output identical", resumed.complete &&
                                                    render_search_output(resumed.hits) == reference);
    std::filesystem::remove(cp);
  }
}

}  // namespace paradox
