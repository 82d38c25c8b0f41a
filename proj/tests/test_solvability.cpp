#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "ksetlab/errors.hpp"
#include "ksetlab/fuzz.hpp"
#include "ksetlab/solvability.hpp"
#include "support.hpp"

using namespace kset;

namespace {

// Graphs of the model by direct subgraph test against every relabelled generator.
auto brute_closure(const Model& m) -> std::set<oracle::Mat> {
  const auto plain = oracle::mats(m.generators());
  const auto gens = m.symmetric() ? oracle::relabellings(m.generators())
                                  : std::set<oracle::Mat>(plain.begin(), plain.end());
  std::set<oracle::Mat> out;
  for (const auto& h : oracle::all_digraphs(m.n())) {
    const auto hm = oracle::mat(h);
    for (const auto& g : gens) {
      bool below = true;
      for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t v = 0; v < g.size(); ++v)
          if (g[u][v] && !hm[u][v]) below = false;
      if (below) {
        out.insert(hm);
        break;
      }
    }
  }
  return out;
}

// Exhaustive search over every decision map for two processes.
auto brute_solvable_n2(const Model& m, int k, int values) -> bool {
  using Key = std::vector<std::pair<int, int>>;
  const auto graphs = brute_closure(m);
  std::vector<std::vector<int>> assigns;
  for (int a = 0; a < values; ++a)
    for (int b = 0; b < values; ++b) assigns.push_back({a, b});
  std::map<Key, int> index;
  std::vector<Key> keys;
  struct Run {
    int view[2];
  };
  std::vector<Run> runs;
  for (const auto& g : graphs)
    for (const auto& a : assigns) {
      Run r{};
      for (int p = 0; p < 2; ++p) {
        Key key;
        for (int q = 0; q < 2; ++q)
          if (g[q][p]) key.emplace_back(q, a[q]);
        auto [it, fresh] = index.try_emplace(key, static_cast<int>(keys.size()));
        if (fresh) keys.push_back(key);
        r.view[p] = it->second;
      }
      runs.push_back(r);
    }
  std::vector<int> choice(keys.size(), 0);
  while (true) {
    bool ok = true;
    for (const auto& r : runs) {
      std::set<int> d;
      for (int v : r.view) d.insert(keys[v][choice[v]].second);
      if (static_cast<int>(d.size()) > k) ok = false;
    }
    if (ok) return true;
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == static_cast<int>(keys[i].size())) choice[i++] = 0;
    if (i == choice.size()) return false;
  }
}

}  // namespace

TEST_CASE("upward closure matches the brute-force superset test") {
  std::mt19937_64 rng(61);
  FuzzOptions opts;
  opts.max_n = 3;
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = random_model(rng, opts);
    const auto got = upward_closure(m);
    const auto ref = brute_closure(m);
    REQUIRE(got.size() == ref.size());
    for (const auto& g : got) CHECK(ref.count(oracle::mat(g)) == 1);
  }
}

TEST_CASE("two-round scenario graphs are all products of model graphs") {
  std::mt19937_64 rng(62);
  FuzzOptions opts;
  opts.max_n = 3;
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = random_model(rng, opts);
    const auto closure = brute_closure(m);
    std::set<oracle::Mat> ref;
    for (const auto& a : closure)
      for (const auto& b : closure) ref.insert(oracle::product(a, b));
    const auto got = scenario_graphs(m, 2);
    REQUIRE(got.size() == ref.size());
    for (const auto& g : got) CHECK(ref.count(oracle::mat(g)) == 1);
    ScenarioOptions relaxed;
    relaxed.relax_last = true;
    for (const auto& g : scenario_graphs(m, 2, relaxed)) CHECK(ref.count(oracle::mat(g)) == 1);
  }
}

TEST_CASE("scenario enumeration visits graphs times assignments") {
  const auto m = oracle::load_model("clique-n3.json");
  std::uint64_t seen = 0;
  for_each_scenario(m, 1, 2, {}, [&](const Scenario& s) {
    ++seen;
    CHECK(s.view(0).size() == 3);
  });
  CHECK(seen == 8);
}

TEST_CASE("decision map default decides the smallest heard value") {
  DecisionMap d;
  const std::vector<std::pair<ProcessId, Value>> e{{0, 3}, {2, 1}};
  const FlatView v(e);
  CHECK(d.decide(v) == 1);
  d.entries[v] = 3;
  CHECK(d.decide(v) == 3);
}

TEST_CASE("consensus on the clique and on three-center stars") {
  const auto clique = oracle::load_model("clique-n3.json");
  const auto sat = decide_solvability(clique, 1, 1, 2);
  CHECK(sat.verdict == Verdict::Sat);
  CHECK(replay_witness(clique, 1, 1, 2, sat.witness).ok);
  const auto stars = oracle::load_model("stars-s3-n4.json");
  CHECK(decide_solvability(stars, 1, 1, 2).verdict == Verdict::Unsat);
  const auto two = decide_solvability(stars, 1, 2, 3);
  CHECK(two.verdict == Verdict::Sat);
  CHECK(replay_witness(stars, 1, 2, 3, two.witness).ok);
}

TEST_CASE("solver agrees with exhaustive decision maps on two processes") {
  const auto graphs = oracle::all_digraphs(2);
  for (unsigned mask = 1; mask < (1u << graphs.size()); ++mask) {
    std::vector<Digraph> gens;
    for (unsigned i = 0; i < graphs.size(); ++i)
      if (mask >> i & 1u) gens.push_back(graphs[i]);
    for (bool sym : {false, true}) {
      const Model m(gens, sym);
      for (int values = 2; values <= 3; ++values) {
        const auto res = decide_solvability(m, 1, 1, values);
        CHECK((res.verdict == Verdict::Sat) == brute_solvable_n2(m, 1, values));
        if (res.verdict == Verdict::Sat) CHECK(replay_witness(m, 1, 1, values, res.witness).ok);
      }
    }
  }
}

TEST_CASE("solvability is monotone in k and witnesses replay") {
  std::mt19937_64 rng(63);
  FuzzOptions opts;
  opts.max_n = 3;
  for (int trial = 0; trial < 25; ++trial) {
    const auto m = random_model(rng, opts);
    bool solved = false;
    for (int k = 1; k <= m.n(); ++k) {
      const auto res = decide_solvability(m, 1, k, k + 1);
      REQUIRE(res.verdict != Verdict::Budget);
      if (solved) CHECK(res.verdict == Verdict::Sat);
      if (res.verdict == Verdict::Sat) {
        solved = true;
        CHECK(replay_witness(m, 1, k, k + 1, res.witness).ok);
      }
    }
    CHECK(solved);
  }
}

TEST_CASE("extra rounds never hurt") {
  std::mt19937_64 rng(64);
  FuzzOptions opts;
  opts.max_n = 3;
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = random_model(rng, opts);
    for (int k = 1; k < m.n(); ++k) {
      const auto one = decide_solvability(m, 1, k, k + 1);
      if (one.verdict != Verdict::Sat) continue;
      const auto two = decide_solvability(m, 2, k, k + 1);
      CHECK(two.verdict == Verdict::Sat);
      CHECK(replay_witness(m, 2, k, k + 1, two.witness).ok);
    }
  }
}

TEST_CASE("replay catches a wrong decision map") {
  const auto stars = oracle::load_model("stars-s3-n4.json");
  const auto r = replay_witness(stars, 1, 1, 2, DecisionMap{});
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.failure.empty());
  DecisionMap bogus;
  const std::vector<std::pair<ProcessId, Value>> e{{0, 0}, {1, 0}, {2, 0}};
  bogus.entries[FlatView(e)] = 1;
  CHECK_FALSE(replay_witness(oracle::load_model("clique-n3.json"), 1, 1, 2, bogus).ok);
}

TEST_CASE("budgets surface as a verdict") {
  const auto m = oracle::load_model("fig1-right-sym.json");
  SolveOptions tight;
  tight.node_budget = 1;
  const auto r = decide_solvability(m, 1, 3, 4, tight);
  CHECK(r.verdict == Verdict::Budget);
  CHECK_FALSE(r.budget.empty());
  SolveOptions few;
  few.scenarios.scenario_budget = 10;
  CHECK(decide_solvability(m, 1, 1, 2, few).verdict == Verdict::Budget);
}

TEST_CASE("argument validation") {
  const auto m = oracle::load_model("clique-n3.json");
  CHECK_THROWS_AS(decide_solvability(m, 1, 0, 2), InvalidInput);
  CHECK_THROWS_AS(decide_solvability(m, 0, 1, 2), InvalidInput);
  CHECK_THROWS_AS(decide_solvability(m, 1, 1, 33), InvalidInput);
}

TEST_CASE("min protocols") {
  const Model ring({Digraph::cycle(6)}, false);
  const auto five = simulate_min_protocol(ring, 5, MinStrategy::min_received());
  CHECK(five.worst_distinct == 1);
  CHECK(five.complete_after_rounds);
  const Model small({Digraph::cycle(4)}, false);
  const auto two = simulate_min_protocol(small, 2, MinStrategy::min_received());
  CHECK(two.worst_distinct == 2);
  CHECK(two.worst_graph.has_value());
  CHECK_FALSE(two.complete_after_rounds);
  CHECK(simulate_min_protocol(small, 3, MinStrategy::min_received()).worst_distinct == 1);

  const auto stars = oracle::load_model("stars-s3-n4.json");
  const auto fixed = simulate_min_protocol(stars, 1, MinStrategy::min_of(ProcessSet{0, 1}));
  CHECK(fixed.worst_distinct <= 2);
  CHECK_THROWS_AS(simulate_min_protocol(stars, 1, MinStrategy::min_of(ProcessSet{0})), DomainError);
}
