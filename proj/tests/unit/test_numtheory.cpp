#include <doctest.h>

#include "paradox/errors.hpp"
#include "paradox/numtheory.hpp"

using namespace paradox;

namespace {

// Partial quotients of log 2 / log 3 from power comparisons only. With
// x = log U / log V (U, V > 1 rational), a = max{a : V^a <= U} and the next
// complete quotient is log V / log(U / V^a).
std::vector<mpz_class> exact_quotients(std::size_t count) {
  std::vector<mpz_class> out;
  // a_0 = 0 since 3 > 2; the first complete quotient is log 3 / log 2.
  out.push_back(0);
  mpq_class u = 3, v = 2;
  while (out.size() < count) {
    std::uint64_t a = 0;
    mpq_class power = 1;
    while (power * v <= u) {
      power *= v;
      ++a;
    }
    out.push_back(a);
    const mpq_class rest = u / power;
    u = v;
    v = rest;
  }
  return out;
}

}  // namespace

TEST_CASE("first convergents") {
  const std::vector<Convergent> cs = convergents(7);
  const std::vector<std::pair<int, int>> want{{0, 1}, {1, 1}, {1, 2}, {2, 3},
                                              {5, 8}, {12, 19}, {41, 65}};
  REQUIRE(cs.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(cs[i].p == want[i].first);
    CHECK(cs[i].q == want[i].second);
    CHECK(cs[i].index == i);
  }
}

TEST_CASE("partial quotients agree with the power-comparison oracle") {
  const std::vector<mpz_class> oracle = exact_quotients(14);
  const std::vector<Convergent> cs = convergents(14);
  for (std::size_t i = 0; i < oracle.size(); ++i) CHECK(cs[i].partial_quotient == oracle[i]);
  const std::vector<int> known{0, 1, 1, 1, 2, 2, 3, 1, 5, 2, 23, 2, 2, 1};
  for (std::size_t i = 0; i < known.size(); ++i) CHECK(oracle[i] == known[i]);
}

TEST_CASE("convergent structure") {
  const std::vector<Convergent> cs = convergents(40);
  for (std::size_t i = 2; i < cs.size(); ++i) {
    CHECK(cs[i].p == cs[i].partial_quotient * cs[i - 1].p + cs[i - 2].p);
    CHECK(cs[i].q == cs[i].partial_quotient * cs[i - 1].q + cs[i - 2].q);
  }
  for (const Convergent& c : cs) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), c.p.get_mpz_t(), c.q.get_mpz_t());
    CHECK(g == 1);
  }
  // Below / above the ratio, decided as 3^p versus 2^q.
  for (std::size_t i = 0; i < cs.size() && cs[i].q < 100000; ++i) {
    const bool below = pow3(cs[i].p.get_ui()) < pow2(cs[i].q.get_ui());
    CHECK(below == cs[i].below());
  }
  // |x - p/q| < 1/q^2 from a certified enclosure.
  const certified::Interval x = certified::log2_over_log3(1024);
  for (const Convergent& c : cs) {
    const mpq_class pq(c.p, c.q);
    const mpq_class bound(1, c.q * c.q);
    CHECK(x.upper_rational() - pq < bound);
    CHECK(pq - x.lower_rational() < bound);
  }
}

TEST_CASE("approximation pairs") {
  CHECK(pair_within({1, 2}, mpq_class(1, 2)));
  CHECK_FALSE(pair_within({1, 2}, mpq_class(1, 4)));
  CHECK(pair_within({5, 8}, mpq_class(1, 4)));
  CHECK_FALSE(pair_within({2, 3}, mpq_class(1, 2)));  // 9/8 > 1

  const std::vector<ApproxPair> first = approx_pairs(mpq_class(1, 4), 1);
  REQUIRE(first.size() == 1);
  CHECK(first[0] == ApproxPair{5, 8});

  const mpq_class eps(1, 1000);
  const std::vector<ApproxPair> pairs = approx_pairs(eps, 6);
  REQUIRE(pairs.size() == 6);
  for (const ApproxPair& p : pairs) {
    CHECK(p.b >= p.a + 1);
    if (p.b < 5000) {
      const mpz_class three = pow3(p.a.get_ui()), two = pow2(p.b.get_ui());
      CHECK(three < two);
      CHECK((1 - eps) * mpq_class(two) < mpq_class(three));
    }
  }
  CHECK_THROWS_AS(approx_pairs(mpq_class(0), 1), std::invalid_argument);
  CHECK_THROWS_AS(approx_pairs(mpq_class(1), 1), std::invalid_argument);
}

TEST_CASE("large pairs go through certified logarithms") {
  const std::vector<Convergent> cs = convergents(30);
  for (std::size_t i = 20; i < 30; i += 2) {
    const ApproxPair p{cs[i].p, cs[i].q};
    CHECK(pair_within(p, mpq_class(1, 1000)));
  }
}

TEST_CASE("construction on the trivial cycle") {
  const ConstructionReport r = divergent_to_paradox(1, {5, 8});
  CHECK(r.first_reach == 9);
  CHECK_FALSE(r.lifted);
  CHECK(r.sequence_start == 1);
  CHECK(r.length == 9);
  CHECK(r.witness.paradoxical);
  CHECK(r.witness.coefficient == Dyadic(243, 9));
  CHECK(r.witness.difference == 1);  // ends at 2
  CHECK_FALSE(r.cst_counterexample);
}

TEST_CASE("construction lifts when the odd count arrives early") {
  const ConstructionReport r = construct_from_pair(1, {1, 2}, 1000);
  CHECK(r.first_reach == 1);
  CHECK(r.lifted);
  CHECK(r.sequence_start == 2);
  CHECK(r.length == 2);
  CHECK(r.witness.paradoxical);
  CHECK(is_paradoxical(trajectory(2, 2, Formalism::Shortcut)).paradoxical);
  CHECK_THROWS_AS(divergent_to_paradox(1, {1, 2}), std::invalid_argument);
}

TEST_CASE("construction as a mechanism for other starts") {
  const ConstructionReport r = divergent_to_paradox(3, {5, 8});
  const ParadoxWitness again =
      is_paradoxical(trajectory(r.sequence_start, r.length, Formalism::Shortcut));
  CHECK(again.paradoxical == r.witness.paradoxical);
  CHECK_THROWS_AS(construct_from_pair(3, {200, 317}, 50), BudgetExhausted);
}

TEST_CASE("linear form gap") {
  CHECK(rhin_gap_ok(8, 5));
  for (auto [j, q] : std::vector<std::pair<int, int>>{
           {8, 5}, {27, 17}, {46, 29}, {54, 34}, {65, 41}, {73, 46}, {92, 58}}) {
    CHECK(rhin_gap_ok(j, q));
  }
  CHECK_THROWS_AS(rhin_gap_ok(1, 1), std::invalid_argument);
}

TEST_CASE("heuristic cap") {
  CHECK(heuristic_j_cap(42, 3) == 17396);
  const std::uint64_t smaller = heuristic_j_cap(37, mpq_class(13, 5));
  CHECK(smaller > 0);
  CHECK(smaller < 17396);
  std::uint64_t previous = 0;
  for (int ab : {1, 2, 5, 20, 60, 126, 300}) {
    const std::uint64_t cap = heuristic_j_cap(ab, 1);
    CHECK(cap >= previous);
    previous = cap;
  }
  const certified::Interval t = heuristic_threshold(128);
  CHECK(t.lower_rational() > mpq_class(4754, 1000));
  CHECK(t.upper_rational() < mpq_class(4755, 1000));
  CHECK_THROWS_AS(heuristic_j_cap(0, 3), std::invalid_argument);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("42") == 42);
  CHECK(parse_rational("2.6") == mpq_class(13, 5));
  CHECK(parse_rational("13/5") == mpq_class(13, 5));
  CHECK(parse_rational("-0.125") == mpq_class(-1, 8));
  CHECK(parse_rational("007") == 7);
  CHECK(parse_rational("010/4") == mpq_class(5, 2));
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}
