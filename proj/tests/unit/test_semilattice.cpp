#include <random>

#include "doctest.h"
#include "semispread/spdw.hpp"
#include "support.hpp"

using namespace semispread;

namespace {

LatticeError::Kind error_kind(const std::string& text) {
  try {
    validate_join_semilattice(parse_lattice_spec(text));
  } catch (const LatticeError& e) {
    return e.kind();
  }
  FAIL("expected a LatticeError");
  return LatticeError::Kind::InternalInvariantFailure;
}

std::vector<std::string> ids_of(const JoinTable& t, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(t.id(i));
  return out;
}

std::vector<JoinTable> sample_lattices() {
  std::vector<JoinTable> out = generate_corpus(5);
  for (std::uint64_t seed = 1; seed <= 60; ++seed) out.push_back(random_join_semilattice(seed, 12));
  return out;
}

}  // namespace

TEST_CASE("parsing keeps generators verbatim") {
  const auto one = parse_lattice_spec(R"({"elements":["a"],"le":[]})");
  CHECK(one.elements == std::vector<std::string>{"a"});
  CHECK(one.le.empty());
  const auto chain = parse_lattice_spec(R"({"elements":["a","b"],"le":[["a","b"]]})");
  REQUIRE(chain.le.size() == 1);
  CHECK(chain.le[0] == std::make_pair(std::string("a"), std::string("b")));
}

TEST_CASE("document errors") {
  CHECK(error_kind(R"({"elements":["a","a"],"le":[]})") == LatticeError::Kind::DuplicateId);
  CHECK(error_kind(R"({"elements":["a"],"le":[["a","z"]]})") == LatticeError::Kind::UnknownIdInPair);
  CHECK(error_kind(R"({"elements":[],"le":[]})") == LatticeError::Kind::MalformedDocument);
  CHECK(error_kind(R"([1,2])") == LatticeError::Kind::MalformedDocument);
  CHECK(error_kind(R"({"elements":["a","b"],"le":[["a"]]})") == LatticeError::Kind::MalformedDocument);
  CHECK(error_kind("{not json") == LatticeError::Kind::MalformedDocument);
  CHECK(error_kind(testing::slurp(testing::data_file("cycle.json"))) == LatticeError::Kind::NotAPartialOrder);
}

TEST_CASE("antichain names the pair without a join") {
  try {
    testing::load("antichain.json");
    FAIL("antichain accepted");
  } catch (const LatticeError& e) {
    CHECK(e.kind() == LatticeError::Kind::NotAJoinSemilattice);
    CHECK(e.first() == "x");
    CHECK(e.second() == "y");
  }
}

TEST_CASE("joins of the small examples") {
  const auto chain = testing::load("chain2.json");
  const auto a = chain.index_of("a"), b = chain.index_of("b");
  CHECK(chain.join(a, b) == b);
  CHECK(chain.join(a, a) == a);

  const auto d = testing::load("diamond.json");
  CHECK(d.join(d.index_of("x"), d.index_of("y")) == d.index_of("t"));
}

TEST_CASE("layers") {
  const auto c3 = testing::load("chain3.json");
  const auto l3 = layer_decomposition(c3);
  REQUIRE(l3.depth() == 3);
  CHECK(ids_of(c3, l3.layers[0]) == std::vector<std::string>{"c"});
  CHECK(ids_of(c3, l3.layers[1]) == std::vector<std::string>{"b"});
  CHECK(ids_of(c3, l3.layers[2]) == std::vector<std::string>{"a"});

  const auto d = testing::load("diamond.json");
  const auto ld = layer_decomposition(d);
  REQUIRE(ld.depth() == 2);
  CHECK(ids_of(d, ld.layers[0]) == std::vector<std::string>{"t"});
  CHECK(ids_of(d, ld.layers[1]) == std::vector<std::string>{"x", "y"});

  const auto s = testing::load("singleton.json");
  CHECK(layer_decomposition(s).depth() == 1);
}

TEST_CASE("enumerations of the small examples") {
  const auto d = testing::load("diamond.json");
  const auto ed = enumerate_elements(d, layer_decomposition(d));
  CHECK(ids_of(d, ed.order) == std::vector<std::string>{"t", "x", "y"});
  CHECK(ed.position[d.join(ed.order[1], ed.order[2])] == 0);

  const auto c = testing::load("chain2.json");
  CHECK(ids_of(c, enumerate_elements(c, layer_decomposition(c)).order) == std::vector<std::string>{"b", "a"});

  // A reversed tiebreak still respects the layers.
  const auto rev = enumerate_elements(d, layer_decomposition(d), [](const std::string& a, const std::string& b) {
    return a > b;
  });
  CHECK(ids_of(d, rev.order) == std::vector<std::string>{"t", "y", "x"});
}

TEST_CASE("enumeration checks catch a bad order") {
  const auto c = testing::load("chain3.json");
  const auto layers = layer_decomposition(c);
  Enumeration bad;
  bad.order = {c.index_of("a"), c.index_of("b"), c.index_of("c")};
  bad.position.resize(3);
  for (std::size_t i = 0; i < 3; ++i) bad.position[bad.order[i]] = i;
  CHECK_FALSE(check_enumeration(c, layers, bad).empty());
}

TEST_CASE("semilattice laws on the corpus and random instances") {
  for (const auto& t : sample_lattices()) {
    const std::size_t n = t.size();
    for (std::size_t a = 0; a < n; ++a) {
      CHECK(t.join(a, a) == a);
      for (std::size_t b = 0; b < n; ++b) {
        REQUIRE(t.join(a, b) == testing::join_oracle(t, a, b));
        CHECK(t.join(a, b) == t.join(b, a));
        CHECK(t.leq(a, b) == (t.join(a, b) == b));
        for (std::size_t c = 0; c < n; ++c) CHECK(t.join(a, t.join(b, c)) == t.join(t.join(a, b), c));
      }
    }
    const auto layers = layer_decomposition(t);
    CHECK(layers.layers.front().size() == 1);
    std::size_t total = 0;
    for (const auto& l : layers.layers) total += l.size();
    CHECK(total == n);
    const auto en = enumerate_elements(t, layers);
    CHECK(check_enumeration(t, layers, en).empty());
    for (std::size_t i = 0; i < n; ++i) {
      // e_i is minimal among e_0..e_i
      for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(t.less(en.order[j], en.order[i]));
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(en.position[t.join(en.order[i], en.order[j])] <= std::min(i, j));
      }
    }
  }
}

TEST_CASE("to_spec round trips through validation") {
  for (const auto& t : sample_lattices()) {
    const JoinTable back = validate_join_semilattice(to_spec(t));
    REQUIRE(back.size() == t.size());
    for (std::size_t a = 0; a < t.size(); ++a) {
      for (std::size_t b = 0; b < t.size(); ++b) CHECK(back.leq(a, b) == t.leq(a, b));
    }
  }
}
