#include <algorithm>
#include <map>

#include "doctest.h"
#include "semispread/lorentz.hpp"
#include "semispread/spdw.hpp"
#include "support.hpp"

using namespace semispread;

namespace {

/// Brute-force order isomorphism test over all permutations.
bool isomorphic(const JoinTable& a, const JoinTable& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::size_t> perm(a.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < perm.size() && ok; ++i) {
      for (std::size_t j = 0; j < perm.size() && ok; ++j) ok = a.leq(i, j) == b.leq(perm[i], perm[j]);
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::size_t index(const ModelReport& m, const std::string& id) { return m.lattice.index_of(id); }

}  // namespace

TEST_CASE("corpus sizes") {
  CHECK(generate_corpus(1).size() == 1);
  const auto two = generate_corpus(2);
  REQUIRE(two.size() == 2);
  CHECK(two[1].size() == 2);
  CHECK(two[1].less(0, 1) != two[1].less(1, 0));
  const auto all = generate_corpus(6);
  std::map<std::size_t, int> by_size;
  for (const auto& t : all) ++by_size[t.size()];
  CHECK(by_size[1] == 1);
  CHECK(by_size[2] == 1);
  CHECK(by_size[3] == 2);
  CHECK(by_size[4] == 5);
  CHECK(by_size[5] == 15);
  CHECK(by_size[6] == 53);
  CHECK_THROWS_AS(generate_corpus(7), SpdwError);
}

TEST_CASE("corpus of three contains the chain and the diamond") {
  const auto three = generate_corpus(3);
  CHECK(std::any_of(three.begin(), three.end(), [](const JoinTable& t) { return isomorphic(t, testing::load("chain3.json")); }));
  CHECK(std::any_of(three.begin(), three.end(), [](const JoinTable& t) { return isomorphic(t, testing::load("diamond.json")); }));
}

TEST_CASE("corpus members are pairwise non-isomorphic join-semilattices") {
  const auto c = generate_corpus(4);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t a = 0; a < c[i].size(); ++a) {
      for (std::size_t b = 0; b < c[i].size(); ++b) CHECK(c[i].join(a, b) == testing::join_oracle(c[i], a, b));
    }
    for (std::size_t j = i + 1; j < c.size(); ++j) CHECK_FALSE(isomorphic(c[i], c[j]));
  }
}

TEST_CASE("random semilattices") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto t = random_join_semilattice(seed, 12);
    CHECK(t.size() >= 1);
    CHECK(t.size() <= 12);
    for (std::size_t a = 0; a < t.size(); ++a) {
      for (std::size_t b = 0; b < t.size(); ++b) REQUIRE(t.join(a, b) == testing::join_oracle(t, a, b));
    }
    const auto again = random_join_semilattice(seed, 12);
    CHECK(again.ids() == t.ids());
    CHECK(to_spec(again).le == to_spec(t).le);
  }
  CHECK_THROWS_AS(random_join_semilattice(1, 0), SpdwError);
}

TEST_CASE("singleton model") {
  const auto m = build_model(testing::load("singleton.json"), {});
  CHECK(m.V == std::vector<std::uint32_t>{0, 1});
  CHECK(m.family.functions == 2);
  CHECK(m.subsets[0] == std::vector<int>{1, 2});
  CHECK(m.weights[0] == sup_weights(m.family, {1, 2}));
  const auto r = verify_order_iso(m, Rational(5), 1);
  CHECK(r.passed);
  REQUIRE(r.pairs.size() == 1);
  CHECK(r.pairs[0].verdict == PairVerdict::Domination);
}

TEST_CASE("too few rounds") {
  ModelOptions o;
  o.rounds = 3;
  try {
    build_model(testing::load("chain2.json"), o);
    FAIL("expected InsufficientRounds");
  } catch (const SpdwError& e) {
    CHECK(e.kind() == SpdwError::Kind::InsufficientRounds);
  }
}

TEST_CASE("chain model") {
  const auto m = build_model(testing::load("chain2.json"), {});
  const auto a = index(m, "a"), b = index(m, "b");
  CHECK(m.V == std::vector<std::uint32_t>{0, 1, 2, 3});
  CHECK(m.subsets[a] == std::vector<int>{1, 2, 4});
  CHECK(m.subsets[b] == std::vector<int>{1, 2, 3, 4});
  CHECK(pointwise_leq(m.weights[a], m.weights[b]));
  CHECK(m.theta_table[a][b] == PairVerdict::Domination);
  CHECK(m.theta_table[b][a] == PairVerdict::Incomparable);
  for (const auto& w : m.weights) CHECK(certify_glf(w).verdict == Verdict::Certified);
}

TEST_CASE("diamond model and order report") {
  const auto m = build_model(testing::load("diamond.json"), {});
  const auto t = index(m, "t"), x = index(m, "x"), y = index(m, "y");
  CHECK(m.weights[x] != m.weights[y]);
  CHECK(m.weights[x] != m.weights[t]);
  CHECK_FALSE(pointwise_leq(m.weights[x], m.weights[y]));
  CHECK_FALSE(pointwise_leq(m.weights[y], m.weights[x]));
  for (std::size_t e = 0; e < 3; ++e) CHECK(m.weights[e] == sup_weights(m.family, m.subsets[e]));

  const auto r = verify_order_iso(m, Rational(5), 42);
  CHECK(r.passed);
  CHECK(r.weights_certified);
  CHECK(r.weights_distinct);
  for (const auto& pr : r.pairs) {
    INFO(m.lattice.id(pr.e1) << " vs " << m.lattice.id(pr.e2) << ": " << pr.note);
    CHECK(pr.matches);
    CHECK(pr.leq == m.lattice.leq(pr.e1, pr.e2));
    CHECK((pr.verdict == PairVerdict::Domination) == pr.leq);
  }
  const auto& xt = r.pairs[x * 3 + t];
  REQUIRE(xt.domination);
  CHECK(xt.domination->pointwise);
  CHECK(xt.domination->norm_trials == 100);
  const auto& xy = r.pairs[x * 3 + y];
  REQUIRE(xy.incomparability);
  CHECK(xy.incomparability->v == 4);
  CHECK(xy.incomparability->threshold_met);
  CHECK(xy.incomparability->ratios.max_ratio >= 5);
  CHECK(xy.incomparability->ratios.bounds_ok);
  const auto& yx = r.pairs[y * 3 + x];
  REQUIRE(yx.incomparability);
  CHECK(yx.incomparability->v == 2);

  // the witness ratio equals a direct prefix-sum quotient
  const auto& row = xy.incomparability->ratios.rows.back();
  const int p = xy.incomparability->p;
  CHECK(row.ratio == testing::integral_oracle(m.family.weight(p), row.N) /
                         testing::integral_oracle(m.weights[y], row.N));
}

TEST_CASE("unreachable threshold is reported, not thrown") {
  const auto m = build_model(testing::load("chain2.json"), {});
  const auto r = verify_order_iso(m, Rational(1000000000), 3);
  CHECK_FALSE(r.passed);
  bool noted = false;
  for (const auto& pr : r.pairs) {
    if (pr.verdict == PairVerdict::Undecided) noted = pr.note.find("ThresholdNotMet") != std::string::npos;
  }
  CHECK(noted);
  CHECK_THROWS_AS(verify_order_iso(m, Rational(1, 2), 3), SpdwError);
}

TEST_CASE("dominated pairs hold on random norms") {
  const auto m = build_model(testing::load("chain3.json"), {});
  RandomVectors gen(8);
  for (std::size_t e1 = 0; e1 < m.lattice.size(); ++e1) {
    for (std::size_t e2 = 0; e2 < m.lattice.size(); ++e2) {
      if (!m.lattice.leq(e1, e2)) continue;
      const auto s1 = sample_weights(m.weights[e1], 128), s2 = sample_weights(m.weights[e2], 128);
      for (int k = 0; k < 100; ++k) {
        const auto a = gen.next(128);
        CHECK(lorentz_norm(a, s1) <= lorentz_norm(a, s2));
      }
    }
  }
}
