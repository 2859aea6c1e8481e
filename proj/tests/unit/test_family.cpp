#include <algorithm>

#include "doctest.h"
#include "semispread/family.hpp"
#include "support.hpp"

using namespace semispread;

namespace {

GLFFamily build(int P, int I) {
  FamilyOptions o;
  o.functions = P;
  o.rounds = I;
  o.eps = geometric_schedule(Rational(1, 2), I);
  return build_family(o);
}

std::vector<std::vector<int>> nonempty_subsets(int P) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << P); ++mask) {
    std::vector<int> M;
    for (int p = 1; p <= P; ++p) {
      if (mask & (1u << (p - 1))) M.push_back(p);
    }
    out.push_back(M);
  }
  return out;
}

/// Integral of the pointwise max of all w_p up to N_i, by segment walk.
Rational max_integral_oracle(const GLFFamily& f, std::size_t i) {
  std::vector<int> all;
  for (int p = 1; p <= f.functions; ++p) all.push_back(p);
  return testing::integral_oracle(sup_weights(f, all), f.N(i));
}

void check_bookkeeping(const GLFFamily& f) {
  REQUIRE(f.K.size() == f.rounds.size() + 1);
  CHECK(f.K[0] == 2);
  for (std::size_t i = 1; i <= f.rounds.size(); ++i) {
    const auto& r = f.rounds[i - 1];
    CHECK(f.K[i] >= 3 * f.K[i - 1]);
    CHECK(f.K[i] == max_integral_oracle(f, i));
    CHECK(r.K_prev == f.K[i - 1]);
    CHECK(r.N_start == f.N(i - 1));
    CHECK(f.N(i) > f.N(i - 1));
    CHECK(f.N(i) - f.N(i - 1) >= r.q * f.K[i - 1] / r.eps);
    CHECK(r.high_mass() >= r.q * r.K_prev);
    CHECK(r.low_mass() <= 1);
    REQUIRE_FALSE(r.high.empty());
    CHECK(r.high.back().end == r.N_end);
    CHECK(r.low <= r.high.back().value);
    CHECK(r.low > 0);
    for (const auto& s : r.high) CHECK(s.value <= r.eps);
    CHECK(r.low <= r.eps);
  }
}

}  // namespace

TEST_CASE("pair enumeration") {
  PairEnumeration e;
  const auto pairs = e.prefix(3, 6);
  const std::vector<std::pair<int, int>> expected{{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}};
  CHECK(pairs == expected);
  PairEnumeration late{5};
  const auto shifted = late.prefix(3, 4);
  const std::vector<std::pair<int, int>> expected_late{{1, 5}, {2, 5}, {3, 5}, {1, 6}};
  CHECK(shifted == expected_late);
}

TEST_CASE("geometric schedule") {
  const auto eps = geometric_schedule(Rational(1, 2), 3);
  CHECK(eps == std::vector<Rational>{Rational(1, 2), Rational(1, 4), Rational(1, 8)});
}

TEST_CASE("option validation") {
  FamilyOptions o;
  o.functions = 1;
  o.eps = geometric_schedule(Rational(1, 2), 1);
  CHECK_THROWS_AS(build_family(o), GlfError);
  o.functions = 2;
  o.eps = {Rational(1, 2), Rational(1, 2)};
  o.rounds = 2;
  CHECK_THROWS_AS(build_family(o), GlfError);
  o.eps = {Rational(1, 2)};
  CHECK_THROWS_AS(build_family(o), GlfError);
}

TEST_CASE("one round with two functions") {
  const auto f = build(2, 1);
  REQUIRE(f.rounds.size() == 1);
  const auto& r = f.rounds[0];
  CHECK(r.p == 1);
  CHECK(r.q == 2);
  CHECK(r.high_mass() >= 4);
  CHECK(r.low_mass() <= 1);
  CHECK(f.K[1] >= 6);
  check_bookkeeping(f);
}

TEST_CASE("two rounds with two functions") {
  const auto f = build(2, 2);
  check_bookkeeping(f);
  const auto& r2 = f.rounds[1];
  CHECK(r2.low <= r2.high.back().value);
  for (int p = 1; p <= 2; ++p) {
    const auto v = f.weight(p).values();
    CHECK(std::is_sorted(v.rbegin(), v.rend()));
  }
  // sups over {1} and {1, 2} differ exactly on the rounds selecting 2
  const auto a = sup_weights(f, {1});
  const auto b = sup_weights(f, {1, 2});
  CHECK(pointwise_leq(a, b));
  for (std::size_t i = 1; i <= f.rounds.size(); ++i) {
    const auto& r = f.rounds[i - 1];
    const Rational mid = (r.N_start + r.high.front().end) / 2;
    if (r.p == 2) {
      CHECK(a.value_at(mid) < b.value_at(mid));
    } else {
      CHECK(a.value_at(mid) == b.value_at(mid));
    }
  }
  CHECK(sup_weights(f, {2}) == f.weight(2));
}

TEST_CASE("sup weights") {
  const auto f = build(3, 3);
  CHECK_THROWS_AS(sup_weights(f, {}), GlfError);
  CHECK_THROWS_AS(sup_weights(f, {4}), GlfError);
  const auto all = sup_weights(f, {1, 2, 3});
  for (const auto& r : f.rounds) {
    for (const auto& s : r.high) CHECK(all.value_at(s.end) == s.value);
  }
  for (const auto& M : nonempty_subsets(3)) {
    const auto w = sup_weights(f, M);
    for (int p : M) CHECK(pointwise_leq(f.weight(p), w));
  }
}

TEST_CASE("every weight and every sup is certified") {
  const auto f = build(3, 4);
  check_bookkeeping(f);
  for (const auto& M : nonempty_subsets(3)) {
    INFO("subset size " << M.size());
    CHECK(certify_glf(sup_weights(f, M)).verdict == Verdict::Certified);
  }
  CHECK(f.certified_subsets.size() == 7);
}

TEST_CASE("bookkeeping holds across sizes") {
  for (int P = 2; P <= 4; ++P) {
    for (int I = 1; I <= 4; ++I) {
      INFO("P=" << P << " I=" << I);
      check_bookkeeping(build(P, I));
    }
  }
}

TEST_CASE("ratio reports") {
  const auto f = build(2, 4);
  CHECK_THROWS_AS(ratio_report(f, {1}, 1), GlfError);
  const auto rep = ratio_report(f, {2}, 1);
  REQUIRE_FALSE(rep.rows.empty());
  CHECK(rep.bounds_ok);
  Rational best(0);
  for (const auto& row : rep.rows) {
    CHECK(f.rounds[row.round - 1].p == 1);
    CHECK(row.ratio == row.S_p / row.S_M);
    CHECK(row.S_p >= row.q * row.K_prev);
    CHECK(row.S_M <= row.K_prev + 1);
    CHECK(row.ratio >= row.bound);
    CHECK(row.bound == row.q * row.K_prev / (row.K_prev + 1));
    const auto sp = sup_weights(f, {1});
    CHECK(row.S_p == testing::integral_oracle(sp, row.N));
    if (row.ratio > best) best = row.ratio;
  }
  CHECK(rep.max_ratio == best);

  try {
    ratio_report(build(3, 1), {1}, 3);
    FAIL("expected NoQualifyingRounds");
  } catch (const GlfError& e) {
    CHECK(e.kind() == GlfError::Kind::NoQualifyingRounds);
  }
}

TEST_CASE("subset-only certification keeps sups good") {
  FamilyOptions o;
  o.functions = 4;
  o.rounds = 6;
  o.eps = geometric_schedule(Rational(1, 2), 6);
  o.subsets = {{1, 2}, {2, 3, 4}};
  o.add_singletons = false;
  const auto f = build_family(o);
  check_bookkeeping(f);
  for (const auto& M : f.certified_subsets) {
    CHECK(certify_glf(sup_weights(f, M)).verdict == Verdict::Certified);
  }
  for (int p = 1; p <= 4; ++p) {
    const auto v = f.weight(p).values();
    CHECK(std::is_sorted(v.rbegin(), v.rend()));
  }
}

TEST_CASE("ratio growth for two functions") {
  const auto three = ratio_report(build(2, 3), {2}, 1);
  REQUIRE(three.rows.size() == 2);
  CHECK(three.strictly_increasing);
  CHECK(three.rows[1].ratio > three.rows[0].ratio);

  // Rounds 1 and 2 both select function 1, so S_M is still small at round 2
  // and the round 4 ratio comes out lower. The per-round bound keeps holding.
  const auto five = ratio_report(build(2, 5), {2}, 1);
  REQUIRE(five.rows.size() == 3);
  CHECK(five.bounds_ok);
  CHECK_FALSE(five.strictly_increasing);
  CHECK(five.rows[2].ratio < five.rows[1].ratio);
  CHECK(five.rows[2].ratio > five.rows[0].ratio);
}
