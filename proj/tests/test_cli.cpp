#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ksetlab/budgets.hpp"
#include "ksetlab/cli.hpp"
#include "ksetlab/errors.hpp"
#include "ksetlab/json_io.hpp"
#include "support.hpp"

using namespace kset;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

auto invoke(std::vector<std::string> args) -> Outcome {
  args.insert(args.begin(), "ksetlab");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

auto temp_file(const std::string& name, const std::string& body) -> std::string {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST_CASE("metrics on the figure graph") {
  const auto r = invoke({"metrics", oracle::fixture("fig1-right-sym.json")});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["edom"] == 4);
  CHECK(j["cov"]["2"] == 3);
}

TEST_CASE("solve reports UNSAT with exit zero and SAT with a witness") {
  const auto unsat = invoke({"solve", oracle::fixture("stars-s3-n4.json"), "--rounds", "1", "--k", "1", "--values", "2"});
  CHECK(unsat.code == 0);
  CHECK(json::parse(unsat.out)["result"] == "UNSAT");
  const auto sat =
      invoke({"solve", oracle::fixture("clique-n3.json"), "--rounds", "1", "--k", "1", "--values", "2", "--replay"});
  CHECK(sat.code == 0);
  const auto j = json::parse(sat.out);
  CHECK(j["result"] == "SAT");
  CHECK(j["witness"].is_array());
  CHECK(j["replay"]["ok"] == true);
}

TEST_CASE("exit codes for bad input") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"metrics"}).code == 2);
  CHECK(invoke({"metrics", oracle::fixture("clique-n3.json"), "--bogus"}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"metrics", "/nonexistent.json"}).code == 2);
  CHECK(invoke({"metrics", temp_file("ksetlab-bad.json", "{\"n\": 3")}).code == 2);
  CHECK(invoke({"metrics", temp_file("ksetlab-bad2.json", "{\"n\": 3, \"generators\": [{\"n\": 3, \"edges\": [[0, 9]]}]}")})
            .code == 2);
  CHECK(invoke({"solve", oracle::fixture("clique-n3.json"), "--k", "0", "--values", "2"}).code == 2);
  CHECK(invoke({"solve", oracle::fixture("clique-n3.json"), "--k", "1", "--values", "40"}).code == 2);
  CHECK(invoke({"bounds", oracle::fixture("clique-n3.json"), "--rounds", "0"}).code == 2);
  CHECK(invoke({"topology", oracle::fixture("clique-n3.json"), "--check", "nope"}).code == 2);
  const auto unknown = invoke({"metrics", oracle::fixture("clique-n3.json"), "--bogus"});
  CHECK_FALSE(unknown.err.empty());
}

TEST_CASE("exit code for budget exhaustion") {
  CHECK(invoke({"solve", oracle::fixture("fig1-right-sym.json"), "--k", "3", "--values", "4", "--node-budget", "1"}).code ==
        3);
  CHECK(invoke({"product", oracle::fixture("ring-c6.json"), "--rounds", "3", "--product-budget", "1"}).code == 3);
}

TEST_CASE("reports are byte-deterministic") {
  const std::vector<std::vector<std::string>> commands{
      {"metrics", oracle::fixture("fig1-right-sym.json")},
      {"bounds", oracle::fixture("fig1-right-sym.json")},
      {"solve", oracle::fixture("stars-s3-n4.json"), "--k", "2", "--values", "3"},
      {"audit", oracle::fixture("stars-s3-n4.json")},
      {"product", oracle::fixture("ring-c6.json"), "--rounds", "2"},
      {"topology", oracle::fixture("clique-n3.json"), "--check", "homology"},
      {"fuzz", "--seed", "5", "--count", "3", "--max-n", "3"},
  };
  for (const auto& c : commands) {
    const auto a = invoke(c);
    const auto b = invoke(c);
    CAPTURE(c.front());
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("emitted graphs reparse to equal graphs") {
  const auto r = invoke({"product", oracle::fixture("ring-c6.json"), "--rounds", "2"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["count"] == 1);
  const auto g = json::graph_from_json(j["products"][0]);
  CHECK(g == path_product(Digraph::cycle(6), Digraph::cycle(6)));
  CHECK(json::to_json(g).dump() == j["products"][0].dump());
}

TEST_CASE("reachability through the CLI") {
  const auto yes = invoke({"product", oracle::fixture("ring-c6.json"), "--rounds", "2", "--target",
                           oracle::fixture("squared-ring.json")});
  CHECK(yes.code == 0);
  CHECK(json::parse(yes.out)["reachable"] == true);
  const auto no = invoke({"product", oracle::fixture("ring-c6.json"), "--rounds", "2", "--target",
                          oracle::fixture("squared-ring-plus.json")});
  CHECK(no.code == 0);
  CHECK(json::parse(no.out)["reachable"] == false);
}

TEST_CASE("topology checks") {
  for (const char* check : {"pseudosphere", "homology", "shelling", "nerve"}) {
    const auto r = invoke({"topology", oracle::fixture("star-n4.json"), "--check", check});
    CAPTURE(check);
    CHECK(r.code == 0);
  }
  const auto h = json::parse(invoke({"topology", oracle::fixture("star-n4.json"), "--check", "homology"}).out);
  CHECK(h["ranks"] == json::Json::array({0, 0, 0}));
  const auto nv = json::parse(invoke({"topology", oracle::fixture("star-n4.json"), "--check", "nerve"}).out);
  CHECK(nv["full_simplex"] == true);
}

TEST_CASE("simulate and fuzz") {
  const auto sim = invoke({"simulate", oracle::fixture("ring-c6.json"), "--rounds", "5"});
  CHECK(sim.code == 0);
  CHECK(json::parse(sim.out)["worst_distinct"] == 1);
  const auto f = invoke({"fuzz", "--seed", "123", "--count", "2", "--max-n", "3"});
  CHECK(f.code == 0);
  CHECK(json::parse(f.out)["seed"] == 123);
}

TEST_CASE("text output") {
  const auto r = invoke({"metrics", oracle::fixture("clique-n3.json"), "--output", "text"});
  CHECK(r.code == 0);
  CHECK_FALSE(r.out.empty());
  CHECK(r.out.front() != '{');
}

TEST_CASE("budget environment override") {
  ::setenv(kBudgetEnvVar, "7", 1);
  const auto b = Budgets::defaults();
  CHECK(b.products == 7);
  CHECK(b.search_nodes == 7);
  ::setenv(kBudgetEnvVar, "lots", 1);
  CHECK_THROWS_AS(Budgets::defaults(), InvalidInput);
  CHECK(invoke({"metrics", oracle::fixture("clique-n3.json")}).code == 2);
  ::unsetenv(kBudgetEnvVar);
  CHECK(invoke({"metrics", oracle::fixture("clique-n3.json")}).code == 0);
}
