#include <doctest.h>

#include <filesystem>
#include <map>
#include <set>
#include <tuple>

#include "paradox/bounds.hpp"
#include "paradox/errors.hpp"
#include "paradox/search.hpp"

using namespace paradox;

namespace {

struct NaiveHit {
  std::uint64_t n, j, q, e;
  mpz_class last;
  bool operator<(const NaiveHit& o) const { return std::tie(n, j) < std::tie(o.n, o.j); }
};

// Brute-force enumeration with plain mpz arithmetic: every prefix with
// last >= n and 3^q < 2^e, walking until the iterate reaches 1.
std::vector<NaiveHit> naive_hits(std::uint64_t lo, std::uint64_t hi, Formalism f) {
  std::vector<NaiveHit> out;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    mpz_class v = n, three = 1, two = 1;
    std::uint64_t q = 0, e = 0, j = 0;
    while (v != 1) {
      if (mpz_odd_p(v.get_mpz_t())) {
        v = 3 * v + 1;
        three *= 3;
        ++q;
        if (f == Formalism::Shortcut) {
          v /= 2;
          two *= 2;
          ++e;
        }
      } else {
        v /= 2;
        two *= 2;
        ++e;
      }
      ++j;
      if (v >= n && three < two) out.push_back({n, j, q, e, v});
    }
  }
  return out;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "paradox_test_search";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::filesystem::remove(path);
  return path;
}

}  // namespace

TEST_CASE("stopping times") {
  CHECK(stopping_time(7) == 7u);
  CHECK(stopping_time(2) == 1u);
  CHECK(stopping_time(27) == 59u);
  CHECK_FALSE(stopping_time(1).has_value());
  CHECK(coeff_stopping_time(1) == 2u);
  for (std::uint64_t n = 2; n <= 200; n += 2) CHECK(coeff_stopping_time(n) == 1u);
  CHECK_THROWS_AS(stopping_time(27, 10), BudgetExhausted);
}

TEST_CASE("coefficient stopping time never exceeds the stopping time") {
  for (std::uint64_t n = 2; n <= 20000; ++n) {
    REQUIRE(*coeff_stopping_time(n) <= *stopping_time(n));
  }
}

TEST_CASE("delays and excursions") {
  CHECK(delay(1, Formalism::Shortcut) == 0);
  CHECK(delay(7, Formalism::Shortcut) == 11);
  CHECK(delay(7, Formalism::Classic) == 16);
  CHECK(delay(27, Formalism::Classic) == 111);
  for (std::uint64_t n = 2; n <= 10000; ++n) {
    const DelayInfo t = delay_info(n, Formalism::Shortcut);
    const DelayInfo c = delay_info(n, Formalism::Classic);
    REQUIRE(c.steps - t.steps == t.odd);
    REQUIRE(c.odd == t.odd);
  }
  CHECK(max_excursion(27) == 4616);
  CHECK(max_excursion(27, Formalism::Classic) == 9232);
  for (unsigned k = 0; k < 70; ++k) CHECK(max_excursion(pow2(k)) == pow2(k));
  CHECK_THROWS_AS(max_excursion(0), std::invalid_argument);
  CHECK_THROWS_AS(delay(27, Formalism::Shortcut, 5), BudgetExhausted);
}

TEST_CASE("hits from a single start") {
  const std::vector<ParadoxHit> hits = paradoxes_from(859, Formalism::Shortcut);
  REQUIRE(hits.size() == 3);
  const std::vector<std::pair<std::uint64_t, int>> want{{46, 890}, {65, 911}, {73, 866}};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(hits[i].j == want[i].first);
    CHECK(hits[i].last() == want[i].second);
    CHECK(hits[i].e == hits[i].j);
  }
  const std::vector<ParadoxHit> seven = paradoxes_from(7, Formalism::Shortcut);
  REQUIRE_FALSE(seven.empty());
  CHECK(seven.front().j == 8);
  CHECK(seven.front().d == 1);
  CHECK(seven.front().coefficient == Dyadic(243, 8));
  CHECK(seven.front().remainder == Dyadic(347, 8));
  CHECK(paradoxes_from(1, Formalism::Shortcut).empty());
}

TEST_CASE("search agrees with brute force") {
  for (Formalism f : {Formalism::Shortcut, Formalism::Classic}) {
    const SearchResult r = enumerate_paradoxes(3, 6000, {.formalism = f, .block_size = 777});
    CHECK(r.complete);
    CHECK(r.next_start == 6001);
    const std::vector<NaiveHit> oracle = naive_hits(3, 6000, f);
    REQUIRE(r.hits.size() == oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      const ParadoxHit& h = r.hits[i];
      REQUIRE(h.n == oracle[i].n);
      REQUIRE(h.j == oracle[i].j);
      REQUIRE(h.q == oracle[i].q);
      REQUIRE(h.e == oracle[i].e);
      REQUIRE(h.last() == oracle[i].last);
      REQUIRE(h.formalism == f);
    }
  }
}

TEST_CASE("every hit is re-verified from its trajectory") {
  const SearchResult r = enumerate_paradoxes(3, 20000);
  for (const ParadoxHit& h : r.hits) {
    const Trajectory t = trajectory(h.n, h.j, h.formalism);
    const ParadoxWitness w = is_paradoxical(t);
    REQUIRE(w.paradoxical);
    REQUIRE(w.coefficient == h.coefficient);
    REQUIRE(w.remainder == h.remainder);
    REQUIRE(w.difference == h.d);
    REQUIRE(t.final_form().holds_for(h.n, h.last()));
    REQUIRE(h.start_odd == mpz_odd_p(h.n.get_mpz_t()));
    REQUIRE(h.end_odd == mpz_odd_p(h.last().get_mpz_t()));
  }
}

TEST_CASE("odd-to-odd hits coincide across the two maps") {
  using Key = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>;  // n, last, q
  std::map<Formalism, std::set<Key>> keys;
  for (Formalism f : {Formalism::Shortcut, Formalism::Classic}) {
    for (const ParadoxHit& h : enumerate_paradoxes(3, 50000, {.formalism = f}).hits) {
      if (h.start_odd && h.end_odd) keys[f].insert({h.n.get_ui(), h.last().get_ui(), h.q});
    }
  }
  CHECK_FALSE(keys[Formalism::Shortcut].empty());
  CHECK(keys[Formalism::Shortcut] == keys[Formalism::Classic]);
}

TEST_CASE("csv rows round trip") {
  for (Formalism f : {Formalism::Shortcut, Formalism::Classic}) {
    for (const ParadoxHit& h : enumerate_paradoxes(3, 3000, {.formalism = f}).hits) {
      REQUIRE(parse_csv_row(to_csv_row(h)) == h);
    }
  }
  const ParadoxHit seven = paradoxes_from(7, Formalism::Shortcut).front();
  CHECK(to_csv_row(seven) == "7,8,5,243,256,347,256,1,1,0,shortcut");
}

TEST_CASE("malformed csv rows are rejected") {
  const char* bad[] = {
      "",
      "7,8,5,243,256,347,256,1,1,0",            // missing field
      "7,8,5,243,256,347,256,1,1,0,shortcut,x",  // extra field
      "7,8,5,244,256,347,256,1,1,0,shortcut",    // C_num is not 3^q
      "7,8,5,243,255,347,256,1,1,0,shortcut",    // C_den not a power of two
      "7,8,5,243,256,347,256,2,1,0,shortcut",    // d inconsistent
      "7,8,5,243,256,347,256,1,yes,0,shortcut",     // bad flag
      "7,8,5,243,256,347,256,1,1,0,syracuse",    // bad formalism
      "x,8,5,243,256,347,256,1,1,0,shortcut",    // bad number
  };
  for (const char* row : bad) {
    CAPTURE(row);
    CHECK_THROWS_AS(parse_csv_row(row), DataError);
  }
}

TEST_CASE("output does not depend on threads or block size") {
  const SearchResult one = enumerate_paradoxes(3, 40000, {.threads = 1, .block_size = 4096});
  for (unsigned threads : {2u, 3u, 8u}) {
    for (std::uint64_t block : {1000u, 65536u}) {
      const SearchResult other =
          enumerate_paradoxes(3, 40000, {.threads = threads, .block_size = block});
      REQUIRE(other.hits == one.hits);
    }
  }
}

TEST_CASE("interrupted search resumes from its checkpoint") {
  const auto path = scratch("resume.ckpt");
  SearchOptions opts{.formalism = Formalism::Classic, .threads = 2, .block_size = 2000};
  const SearchResult full = enumerate_paradoxes(3, 30000, opts);

  opts.checkpoint = path;
  opts.stop_after_blocks = 4;
  const SearchResult partial = enumerate_paradoxes(3, 30000, opts);
  CHECK_FALSE(partial.complete);
  CHECK(partial.next_start == 3 + 4 * 2000);
  CHECK(std::filesystem::exists(path));

  opts.stop_after_blocks.reset();
  const SearchResult resumed = enumerate_paradoxes(3, 30000, opts);
  CHECK(resumed.complete);
  CHECK(resumed.hits == full.hits);

  // A checkpoint from a different configuration is refused.
  SearchOptions other = opts;
  other.block_size = 1000;
  CHECK_THROWS_AS(enumerate_paradoxes(3, 30000, other), DataError);
}

TEST_CASE("search argument validation") {
  CHECK_THROWS_AS(enumerate_paradoxes(2, 10), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_paradoxes(10, 9), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_paradoxes(3, 10, {.threads = 0}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_paradoxes(3, 10, {.block_size = 0}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_paradoxes(3, UINT64_MAX), std::invalid_argument);
  CHECK(enumerate_paradoxes(3, 3).hits.empty());
}

TEST_CASE("decimal truncation") {
  CHECK(truncate_decimal(mpq_class(1, 3), 3) == "0.333");
  CHECK(truncate_decimal(mpq_class(2, 3), 3) == "0.666");
  CHECK(truncate_decimal(mpq_class(-1, 3), 2) == "-0.33");
  CHECK(truncate_decimal(mpq_class(-1, 1000), 2) == "0.00");
  CHECK(truncate_decimal(mpq_class(5), 2) == "5.00");
  CHECK(truncate_decimal(mpq_class(347, 256), 0) == "1");
  CHECK(truncate_decimal(mpq_class(243, 256), 3) == "0.949");
  CHECK_THROWS_AS(truncate_decimal(1, -1), std::invalid_argument);
}

TEST_CASE("census of a small range") {
  const Census c = census(enumerate_paradoxes(3, 20000).hits);
  CHECK(c.formalism == Formalism::Shortcut);
  std::uint64_t total = 0;
  for (const CensusRow& row : c.rows) {
    total += row.count;
    CHECK(row.count_odd <= row.count);
    CHECK(row.n_min <= row.n_max);
    CHECK(row.e_min <= row.e_max);
    CHECK(row.q == floor_log_ratio(row.j));
  }
  CHECK(total == c.summary.total);
  CHECK(c.summary.landmark_misses == 0);
  CHECK(c.rows.front().j == 8);
  CHECK(c.summary.n_min == 7);
  const std::string table = c.to_table();
  CHECK(table.find("C truncated to 3 decimals") != std::string::npos);
  CHECK(table.find("near-cycles (d = 1):") != std::string::npos);
  CHECK(census({}).summary.total == 0);
}

TEST_CASE("stopping-time coincidence") {
  const CstReport small = verify_cst(2, 4614);
  CHECK(small.checked == 4613);
  CHECK(small.counterexamples.empty());
  const CstReport r = verify_cst(2, 250000);
  CHECK(r.counterexamples.empty());
  CHECK(r.checked == 249999);
  // Independent check on a slice with the plain functions.
  std::uint64_t gap = 0;
  for (std::uint64_t n = 2; n <= 4614; ++n) {
    const std::uint64_t t = *stopping_time(n), tau = *coeff_stopping_time(n);
    REQUIRE(t == tau);
    gap = std::max(gap, t - tau);
  }
  CHECK(small.max_gap == gap);
  CHECK_THROWS_AS(verify_cst(1, 10), std::invalid_argument);
}
