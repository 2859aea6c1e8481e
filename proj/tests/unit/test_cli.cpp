#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "semispread/cli.hpp"
#include "support.hpp"

using namespace semispread;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "semispread_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("lattice check") {
  const auto ok = run({"lattice", "check", testing::data_file("diamond.json")});
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out).at("kind") == "lattice_check");

  const auto bad = run({"lattice", "check", testing::data_file("antichain.json")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("NotAJoinSemilattice(x,y)") != std::string::npos);

  CHECK(run({"lattice", "check", testing::data_file("cycle.json")}).code == 2);
  CHECK(run({"lattice", "check", "/nonexistent/lattice.json"}).code == 2);
}

TEST_CASE("lattice represent") {
  const auto r = run({"lattice", "represent", testing::data_file("diamond.json"), "--tiebreak", "lex"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j.at("sets").at("t") == json({0, 1, 2, 3, 4, 5}));
  CHECK(j.at("sets").at("x") == json({0, 1, 3, 4, 5}));
  CHECK(j.at("sets").at("y") == json({0, 1, 2, 3, 5}));
  CHECK(run({"lattice", "represent", testing::data_file("diamond.json"), "--tiebreak", "shuffle"}).code == 2);

  const auto path = scratch("rep.json");
  CHECK(run({"lattice", "represent", testing::data_file("chain2.json"), "--out", path.string()}).code == 0);
  CHECK(json::parse(testing::slurp(path.string())).at("sets").at("b") == json({0, 1, 2, 3}));
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"glf", "build", "--rounds", "2"}).code == 2);
  CHECK(run({"glf", "build", "--functions", "1", "--rounds", "2", "--out", scratch("x.json").string()}).code == 2);
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("lattice") != std::string::npos);
}

TEST_CASE("glf pipeline") {
  const auto fam = scratch("family.json");
  const auto b = run({"--seed", "3", "glf", "build", "--functions", "3", "--rounds", "3", "--out", fam.string()});
  REQUIRE(b.code == 0);
  const auto first = testing::slurp(fam.string());
  CHECK(json::parse(first).at("config").at("seed") == 3);
  REQUIRE(run({"--seed", "3", "glf", "build", "--functions", "3", "--rounds", "3", "--out", fam.string()}).code == 0);
  CHECK(testing::slurp(fam.string()) == first);

  const auto c = run({"glf", "certify", fam.string()});
  CHECK(c.code == 0);
  CHECK(json::parse(c.out).at("all_certified") == true);

  const auto csv = scratch("ratios.csv");
  const auto r = run({"glf", "ratios", fam.string(), "--subset", "2,3", "--against", "1", "--csv", csv.string()});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out).at("bounds_ok") == true);
  CHECK(testing::slurp(csv.string()).rfind("round,", 0) == 0);

  CHECK(run({"glf", "ratios", fam.string(), "--subset", "1,2", "--against", "1"}).code == 2);
  CHECK(run({"glf", "build", "--functions", "2", "--rounds", "1", "--eps-decay", "abc", "--out", fam.string()}).code == 2);
}

TEST_CASE("model pipeline") {
  const auto model = scratch("model.json");
  REQUIRE(run({"model", "build", testing::data_file("diamond.json"), "--rounds", "12", "--out", model.string()}).code == 0);
  const auto csv = scratch("verdicts.csv");
  const auto v1 = run({"--seed", "5", "model", "verify", model.string(), "--threshold", "5", "--csv", csv.string()});
  CHECK(v1.code == 0);
  const auto j = json::parse(v1.out);
  CHECK(j.at("passed") == true);
  CHECK(j.at("config").at("seed") == 5);
  const auto v2 = run({"--seed", "5", "model", "verify", model.string(), "--threshold", "5"});
  CHECK(v2.out == v1.out);
  CHECK(testing::slurp(csv.string()).rfind("e1\\e2,t,x,y\n", 0) == 0);

  CHECK(run({"model", "verify", model.string(), "--threshold", "1000000000"}).code == 1);
  CHECK(run({"model", "verify", model.string(), "--threshold", "1/2"}).code == 2);
  CHECK(run({"model", "build", testing::data_file("diamond.json"), "--rounds", "2", "--out", model.string()}).code == 2);
}
