// Command-line front end: searches, CST checks, poset export, bounds, record
// tables and the reproduction scoreboard.

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "paradox/bounds.hpp"
#include "paradox/errors.hpp"
#include "paradox/numtheory.hpp"
#include "paradox/poset.hpp"
#include "paradox/records.hpp"
#include "paradox/repro.hpp"
#include "paradox/search.hpp"

using namespace paradox;

namespace {

// Accepts plain integers, "a^b" and "aeb".
std::uint64_t parse_count(const std::string& text) {
  const auto power = [&](std::size_t at, std::uint64_t base_override) -> std::uint64_t {
    const mpz_class base = base_override ? mpz_class(base_override)
                                         : mpz_class(text.substr(0, at), 10);
    const mpz_class exp(text.substr(at + 1), 10);
    if (!exp.fits_ulong_p()) throw std::invalid_argument("exponent too large");
    mpz_class v;
    mpz_pow_ui(v.get_mpz_t(), base.get_mpz_t(), exp.get_ui());
    if (!v.fits_ulong_p()) throw std::invalid_argument("value too large: " + text);
    return v.get_ui();
  };
  try {
    if (const auto caret = text.find('^'); caret != std::string::npos) return power(caret, 0);
    if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
      const mpz_class mant(text.substr(0, e), 10);
      const std::uint64_t scale = power(e, 10);
      const mpz_class v = mant * mpz_class(scale);
      if (!v.fits_ulong_p()) throw std::invalid_argument("value too large: " + text);
      return v.get_ui();
    }
    const mpz_class v(text, 10);
    if (sgn(v) < 0 || !v.fits_ulong_p()) throw std::invalid_argument("out of range: " + text);
    return v.get_ui();
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a count: '" + text + "'");
  }
}

mpq_class quarter(std::uint64_t j) {
  mpq_class r(j, 4);
  r.canonicalize();
  return r;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw std::invalid_argument("range must look like A..B");
  const std::uint64_t a = parse_count(text.substr(0, dots));
  const std::uint64_t b = parse_count(text.substr(dots + 2));
  if (a > b) throw std::invalid_argument("range start exceeds its end");
  return {a, b};
}

std::string timestamp_line() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream out;
  out << "# generated " << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out.flush()) throw std::runtime_error("failed writing " + path);
}

struct SearchArgs {
  std::string range;
  std::string formalism = "shortcut";
  unsigned threads = 1;
  std::uint64_t budget = kDefaultBudget;
  std::string out;
  std::string census_out;
  std::string checkpoint;
  bool no_timestamp = false;
  std::uint64_t stop_after = 0;
};

int cmd_search(const SearchArgs& a) {
  const auto [lo, hi] = parse_range(a.range);
  SearchOptions o;
  o.formalism = parse_formalism(a.formalism);
  o.threads = a.threads;
  o.budget = a.budget;
  if (!a.checkpoint.empty()) o.checkpoint = a.checkpoint;
  if (a.stop_after) o.stop_after_blocks = a.stop_after;
  const SearchResult r = enumerate_paradoxes(lo, hi, o);
  const Census cs = census(r.hits);

  std::ostringstream csv;
  if (!a.no_timestamp) csv << timestamp_line() << '\n';
  csv << kHitCsvHeader << '\n';
  for (const ParadoxHit& h : r.hits) csv << to_csv_row(h) << '\n';
  std::string table = cs.to_table();
  if (!a.no_timestamp) table = timestamp_line() + "\n" + table;

  if (!a.out.empty()) {
    write_file(a.out, csv.str());
    write_file(a.census_out.empty() ? a.out + ".census.txt" : a.census_out, table);
  } else if (!a.census_out.empty()) {
    write_file(a.census_out, table);
  }
  if (!r.complete) {
    std::cout << "stopped early; resume from " << r.next_start << " with the same checkpoint\n";
  }
  std::cout << r.hits.size() << " hits\n"
            << "near-cycles: " << cs.summary.near_cycles << '\n'
            << "distinct starts: " << cs.summary.distinct_starts << '\n';
  if (a.out.empty()) std::cout << table;
  return 0;
}

int cmd_cst(const std::string& range, std::uint64_t budget) {
  const auto [lo, hi] = parse_range(range);
  const CstReport r = verify_cst(lo, hi, budget);
  std::cout << "checked: " << r.checked << '\n'
            << "counterexamples: " << r.counterexamples.size() << '\n'
            << "max t - tau: " << r.max_gap << '\n';
  for (std::uint64_t n : r.counterexamples) std::cout << "counterexample: " << n << '\n';
  return r.counterexamples.empty() ? 0 : 1;
}

int cmd_poset(std::size_t j, std::size_t q, const std::string& out) {
  const HasseDiagram d = hasse(j, q);
  if (!out.empty()) {
    write_file(out, d.to_dot());
  } else {
    std::cout << d.to_dot();
  }
  std::cout << "nodes: " << d.nodes.size() << '\n'
            << "edges: " << d.edges.size() << '\n'
            << "minimal: " << d.sources().size() << '\n'
            << "maximal: " << d.sinks().size() << '\n';
  return 0;
}

int bounds_chain(const std::string& refs) {
  const std::filesystem::path dir = refs.empty() ? data_directory() : std::filesystem::path(refs);
  const RecordTable maxexc = RecordTable::read(dir / "maxexc_t.txt", RecordKind::MaxExcursionT);
  const RecordTable delays = RecordTable::read(dir / "delay_col.txt", RecordKind::DelayCol);
  const LengthBoundChain c = length_bound_chain(maxexc, delays);
  const auto row = [](const std::string& name, const std::string& got, const std::string& want) {
    std::cout << std::left << std::setw(26) << name << std::setw(24) << got
              << "expected " << want << (got == want ? "" : "  MISMATCH") << '\n';
  };
  row("n0", c.n0.get_str(), "1000000000");
  row("m0", c.m0.get_str(), "113383");
  row("j0", std::to_string(c.j0), "1539");
  row("q0", std::to_string(c.q0), "971");
  row("j0 + q0", std::to_string(c.sum), "2510");
  row("highest Col delay", c.top_delay.value.get_str(), "2456");
  row("n1", c.n1.get_str(), "> 2.8e19");
  row("m1", c.m1.get_str(), "23035537407");
  row("j1", std::to_string(c.j1), "301994");
  return c.m0 == 113383 && c.j0 == 1539 && c.q0 == 971 && c.m1 == mpz_class("23035537407") &&
                 c.j1 == 301994 && c.sum_exceeds_top
             ? 0
             : 1;
}

int bounds_heuristic(const std::string& alpha, const std::string& beta) {
  const std::uint64_t cap = heuristic_j_cap(parse_rational(alpha), parse_rational(beta));
  if (cap == 0) {
    std::cout << "no length satisfies the heuristic condition\n";
  } else {
    std::cout << "cap: " << cap << " (j < " << cap + 1 << ")\n";
  }
  return 0;
}

int bounds_convergents(std::size_t k) {
  for (const Convergent& c : convergents(k)) {
    std::cout << c.index << "  a=" << c.partial_quotient.get_str() << "  " << c.p.get_str()
              << '/' << c.q.get_str() << (c.below() ? "  below" : "  above") << '\n';
  }
  return 0;
}

int bounds_rhin(std::uint64_t j, std::uint64_t q, unsigned precision_cap) {
  const bool ok = rhin_gap_ok(j, q, precision_cap);
  std::cout << "|" << j << " log2 - " << q << " log3| >= max(j, q)^-13.3: "
            << (ok ? "yes" : "no") << '\n';
  return ok ? 0 : 1;
}

int bounds_mean(std::uint64_t j) {
  const mpq_class m = mean_remainder(j);
  std::cout << "mean remainder over n = 1.." << (std::uint64_t{1} << j) << ": " << m.get_str()
            << " (expected " << quarter(j).get_str() << ")\n";
  return m == quarter(j) ? 0 : 1;
}

int bounds_extremes(std::uint64_t j, std::uint64_t q) {
  const RemainderBounds b = remainder_bounds(j, q);
  std::cout << "lower: " << b.lower.to_string() << "  at n = " << b.lower_class.get_str()
            << " mod 2^" << j << '\n'
            << "upper: " << b.upper.to_string() << "  at n = " << b.upper_class.get_str()
            << " mod 2^" << j << '\n';
  return 0;
}

int cmd_records(const std::string& kind_name, const std::string& limit, const std::string& refs) {
  const RecordKind kind = parse_record_kind(kind_name);
  const std::uint64_t n_hi = parse_count(limit);
  const std::vector<RecordEntry> rec = compute_records(n_hi, kind);
  for (const RecordEntry& e : rec) std::cout << e.n.get_str() << ' ' << e.value.get_str() << '\n';
  if (!refs.empty()) {
    const RecordTable table = RecordTable::read(refs, kind);
    const PrefixReport r = cross_check_prefix(table, rec, n_hi);
    std::cout << "# reference prefix matches: " << r.matched << " entries up to " << n_hi
              << '\n';
  }
  return 0;
}

int cmd_check(unsigned threads, const std::string& null_hi, const std::string& refs) {
  ReproOptions o;
  o.threads = threads;
  o.null_window_hi = parse_count(null_hi);
  if (!refs.empty()) o.data_dir = refs;
  ReproSuite suite(o);
  int failed = 0;
  suite.run_all([&](const CriterionResult& r) {
    std::cout << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << "  ("
              << std::fixed << std::setprecision(1) << r.seconds << " s)\n";
    for (const std::string& line : r.details) std::cout << "        " << line << '\n';
    if (!r.passed) ++failed;
  });
  std::cout << (ReproSuite::kCriteria - failed) << "/" << ReproSuite::kCriteria << " passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Paradoxical Collatz sequences: search, verification and bounds"};
  app.require_subcommand(1);
  int status = 0;

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "enumerate paradoxical sequences over a range");
  search->add_option("--range", sa.range, "start values A..B (A >= 3)")->required();
  search->add_option("--formalism", sa.formalism, "shortcut or classic")
      ->check(CLI::IsMember({"shortcut", "classic"}));
  search->add_option("--threads", sa.threads, "worker threads")->check(CLI::PositiveNumber);
  search->add_option("--budget", sa.budget, "step budget per start")->check(CLI::PositiveNumber);
  search->add_option("--out", sa.out, "hit CSV path");
  search->add_option("--census", sa.census_out, "census table path (default <out>.census.txt)");
  search->add_option("--checkpoint", sa.checkpoint, "checkpoint file, resumed if present");
  search->add_flag("--no-timestamp", sa.no_timestamp, "omit the timestamp comment line");
  search->add_option("--stop-after-blocks", sa.stop_after)->group("");
  search->callback([&] { status = cmd_search(sa); });

  std::string cst_range;
  std::uint64_t cst_budget = kDefaultBudget;
  auto* cst = app.add_subcommand("cst", "check t(n) = tau(n) over a range");
  cst->add_option("--range", cst_range, "A..B with A >= 2")->required();
  cst->add_option("--budget", cst_budget, "step budget per start");
  cst->callback([&] { status = cmd_cst(cst_range, cst_budget); });

  std::size_t pj = 0, pq = 0;
  std::string poset_out;
  auto* poset = app.add_subcommand("poset", "export the Hasse diagram of length j, weight q");
  poset->add_option("j", pj)->required();
  poset->add_option("q", pq)->required();
  poset->add_option("--out", poset_out, "DOT output path (stdout when omitted)");
  poset->callback([&] { status = cmd_poset(pj, pq, poset_out); });

  auto* bounds = app.add_subcommand("bounds", "bound computations");
  bounds->require_subcommand(1);
  std::string refs;
  auto* chain = bounds->add_subcommand("chain", "length bound chain from the record tables");
  chain->add_option("--refs", refs, "directory holding maxexc_t.txt and delay_col.txt");
  chain->callback([&] { status = bounds_chain(refs); });
  std::string alpha, beta;
  auto* heur = bounds->add_subcommand("heuristic", "largest j meeting the heuristic condition");
  heur->add_option("alpha", alpha)->required();
  heur->add_option("beta", beta)->required();
  heur->callback([&] { status = bounds_heuristic(alpha, beta); });
  std::size_t conv_k = 0;
  auto* conv = bounds->add_subcommand("convergents", "convergents of log2/log3");
  conv->add_option("k", conv_k)->required();
  conv->callback([&] { status = bounds_convergents(conv_k); });
  std::uint64_t rj = 0, rq = 0;
  unsigned precision_cap = certified::kDefaultPrecisionCap;
  auto* rhin = bounds->add_subcommand("rhin", "linear form gap |j log2 - q log3|");
  rhin->add_option("j", rj)->required();
  rhin->add_option("q", rq)->required();
  rhin->add_option("--precision-cap", precision_cap, "bits");
  rhin->callback([&] { status = bounds_rhin(rj, rq, precision_cap); });
  std::uint64_t mj = 0;
  auto* mean = bounds->add_subcommand("mean", "exact mean remainder");
  mean->add_option("j", mj)->required();
  mean->callback([&] { status = bounds_mean(mj); });
  std::uint64_t ej = 0, eq = 0;
  auto* ext = bounds->add_subcommand("extremes", "extremal remainders and their classes");
  ext->add_option("j", ej)->required();
  ext->add_option("q", eq)->required();
  ext->callback([&] { status = bounds_extremes(ej, eq); });

  std::string kind = "maxexc-t", limit = "1000000", record_refs;
  auto* records = app.add_subcommand("records", "compute record holders");
  records->add_option("--kind", kind, "delay-t, delay-col or maxexc-t");
  records->add_option("--limit", limit, "largest start scanned");
  records->add_option("--refs", record_refs, "reference table to cross-check");
  records->callback([&] { status = cmd_records(kind, limit, record_refs); });

  bool full_check = false;
  unsigned check_threads = 1;
  std::string null_hi = "10^7", check_refs;
  auto* check = app.add_subcommand("check", "reproduction scoreboard");
  check->add_flag("--paper-check", full_check, "run every reproduction criterion");
  check->add_option("--threads", check_threads)->check(CLI::PositiveNumber);
  check->add_option("--null-hi", null_hi, "end of the empty-window search");
  check->add_option("--refs", check_refs, "directory of reference tables");
  check->callback([&] {
    if (!full_check) throw CLI::ValidationError("check", "nothing to do without --paper-check");
    status = cmd_check(check_threads, null_hi, check_refs);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return 3;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "undecided: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return status;
}
