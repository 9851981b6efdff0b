#include <doctest.h>

#include <sstream>

#include "paradox/bounds.hpp"
#include "paradox/errors.hpp"
#include "paradox/records.hpp"

using namespace paradox;

namespace {

// Direct scan: walk every start to 1 and keep the strict improvements.
std::vector<RecordEntry> brute_records(std::uint64_t n_hi, RecordKind kind) {
  std::vector<RecordEntry> out;
  mpz_class best = -1;
  for (std::uint64_t n = 1; n <= n_hi; ++n) {
    mpz_class v = n, peak = n;
    std::uint64_t steps = 0;
    while (v != 1) {
      if (mpz_odd_p(v.get_mpz_t())) {
        v = 3 * v + 1;
        if (kind != RecordKind::DelayCol) v /= 2;
      } else {
        v /= 2;
      }
      ++steps;
      if (v > peak) peak = v;
    }
    const mpz_class value = kind == RecordKind::MaxExcursionT ? peak : mpz_class(steps);
    if (value > best) {
      best = value;
      out.push_back({Natural(n), value});
    }
  }
  return out;
}

RecordTable table_from(const std::string& text, RecordKind kind) {
  std::istringstream in(text);
  return RecordTable::parse(in, kind);
}

std::size_t parse_error_line(const std::string& text) {
  try {
    table_from(text, RecordKind::DelayCol);
  } catch (const DataError& e) {
    return e.line();
  }
  FAIL("no DataError raised");
  return 0;
}

}  // namespace

TEST_CASE("record kinds by name") {
  for (RecordKind k : {RecordKind::DelayT, RecordKind::DelayCol, RecordKind::MaxExcursionT}) {
    CHECK(parse_record_kind(to_string(k)) == k);
  }
  CHECK(to_string(RecordKind::MaxExcursionT) == "maxexc-t");
  CHECK_THROWS_AS(parse_record_kind("delay"), std::invalid_argument);
}

TEST_CASE("computed records match a direct scan") {
  for (RecordKind k : {RecordKind::DelayT, RecordKind::DelayCol, RecordKind::MaxExcursionT}) {
    CAPTURE(to_string(k));
    CHECK(compute_records(300000, k) == brute_records(300000, k));
  }
}

TEST_CASE("known record holders") {
  const auto exc = compute_records(1000, RecordKind::MaxExcursionT);
  const std::vector<int> starts{1, 2, 3, 7, 15, 27, 255, 447, 639, 703};
  REQUIRE(exc.size() == starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i) CHECK(exc[i].n == starts[i]);
  CHECK(exc[5].value == 4616);

  const auto col = compute_records(1000, RecordKind::DelayCol);
  bool has27 = false;
  for (std::size_t i = 0; i < col.size(); ++i) {
    if (col[i].n == 27) {
      has27 = true;
      CHECK(col[i].value == 111);
    }
    if (i > 0) CHECK(col[i - 1].value < col[i].value);
  }
  CHECK(has27);
  CHECK(compute_records(0, RecordKind::DelayT).empty());
}

TEST_CASE("record tables parse and reject bad input") {
  const RecordTable t = table_from("# header\n1 0\n\n2 1\n  3 7  \n", RecordKind::DelayCol);
  CHECK(t.entries().size() == 3);
  CHECK(t.highest().n == 3);

  CHECK(parse_error_line("1 0\n2\n") == 2);
  CHECK(parse_error_line("1 0\n2 1 5\n") == 2);
  CHECK(parse_error_line("1 0\nx 1\n") == 2);
  CHECK(parse_error_line("1 0\n0 1\n") == 2);
  CHECK(parse_error_line("1 0\n2 -1\n") == 2);
  CHECK(parse_error_line("1 0\n3 7\n2 8\n") == 3);
  CHECK(parse_error_line("1 0\n3 7\n# ok\n4 7\n") == 4);

  CHECK_THROWS_AS(RecordTable(RecordKind::DelayT, {{2, 1}, {1, 2}}), DataError);
  CHECK_THROWS_AS(RecordTable(RecordKind::DelayT, {}).highest(), DataError);
  CHECK_THROWS_AS(RecordTable::read("/nonexistent/table.txt", RecordKind::DelayT), DataError);
}

TEST_CASE("threshold lookups") {
  const RecordTable t = table_from("1 1\n3 8\n7 26\n27 4616\n", RecordKind::MaxExcursionT);
  CHECK(t.first_reaching(8)->n == 3);
  CHECK(t.first_reaching(8, true)->n == 7);
  CHECK(t.first_reaching(0)->n == 1);
  CHECK(t.first_reaching(4616)->n == 27);
  CHECK(t.first_reaching(4616, true) == nullptr);
}

TEST_CASE("prefix cross-check") {
  const auto computed = compute_records(10000, RecordKind::DelayCol);
  std::ostringstream good;
  for (const RecordEntry& e : computed) good << e.n.get_str() << ' ' << e.value.get_str() << '\n';
  good << "100000000 999\n";
  const RecordTable ok = table_from(good.str(), RecordKind::DelayCol);
  const PrefixReport r = cross_check_prefix(ok, computed, 10000);
  CHECK(r.matched == computed.size());
  CHECK(r.checked_up_to == 10000);

  std::vector<RecordEntry> altered = computed;
  altered[5].value += 1;
  CHECK_THROWS_AS(cross_check_prefix(RecordTable(RecordKind::DelayCol, altered), computed, 10000),
                  DataError);

  std::vector<RecordEntry> gap = computed;
  gap.erase(gap.begin() + 4);
  CHECK_THROWS_AS(cross_check_prefix(RecordTable(RecordKind::DelayCol, gap), computed, 10000),
                  DataError);

  std::vector<RecordEntry> shortened(computed.begin(), computed.end() - 2);
  CHECK_THROWS_AS(
      cross_check_prefix(RecordTable(RecordKind::DelayCol, shortened), computed, 10000),
      DataError);
}

TEST_CASE("bundled tables agree with fresh computation") {
  const IngestedRecords exc = ingest_reference_records(data_directory() / "maxexc_t.txt",
                                                       RecordKind::MaxExcursionT, 200000);
  CHECK(exc.report.matched == 22);  // holders up to 159487
  const IngestedRecords col = ingest_reference_records(data_directory() / "delay_col.txt",
                                                       RecordKind::DelayCol, 200000);
  CHECK(col.report.matched > 30);
  CHECK(col.table.entries().size() > col.report.matched);
}

TEST_CASE("length-bound chain on synthetic tables") {
  const RecordTable exc = RecordTable::read(data_directory() / "maxexc_t.txt",
                                            RecordKind::MaxExcursionT);
  const RecordTable col = table_from("1 0\n7 16\n27 111\n", RecordKind::DelayCol);
  const LengthBoundChain c = length_bound_chain(exc, col);
  CHECK(c.n0 == 1000000000);
  CHECK(c.m0 == 113383);
  CHECK(c.j0 == 1539);
  CHECK(c.q0 == 971);
  CHECK(c.sum == 2510);
  CHECK(c.top_delay.value == 111);
  CHECK(c.sum_exceeds_top);
  CHECK(c.n1 == 27);
  CHECK(c.m1 == 15);  // maximum 80; the holder 7 only reaches 26
  CHECK(c.j1 == smallest_cap_length(15));

  const RecordTable long_delay = table_from("1 0\n5 3000\n", RecordKind::DelayCol);
  const LengthBoundChain d = length_bound_chain(exc, long_delay);
  CHECK_FALSE(d.sum_exceeds_top);
  CHECK(d.m1 == 3);

  const RecordTable short_exc = table_from("1 1\n3 8\n7 26\n", RecordKind::MaxExcursionT);
  CHECK_THROWS_AS(length_bound_chain(short_exc, col), DataError);
}

TEST_CASE("length-bound chain on the bundled tables") {
  const RecordTable exc = RecordTable::read(data_directory() / "maxexc_t.txt",
                                            RecordKind::MaxExcursionT);
  const RecordTable col = RecordTable::read(data_directory() / "delay_col.txt",
                                            RecordKind::DelayCol);
  const LengthBoundChain c = length_bound_chain(exc, col);
  CHECK(c.sum == 2510);
  CHECK(c.n1 == col.highest().n);
  CHECK(c.m1 == exc.first_reaching(c.n1, true)->n);
}
