#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ksetlab/digraph.hpp"
#include "ksetlab/model.hpp"
#include "ksetlab/views.hpp"

namespace kset {

/// One execution prefix: the graph summarising who heard whom over the
/// rounds, and the initial values.
struct Scenario {
  Digraph graph;
  std::vector<Value> assignment;

  /// {(q, assignment[q]) | q in In_graph(p)}.
  auto view(ProcessId p) const -> FlatView { return FlatView::of(graph.in(p), assignment); }
};

struct ScenarioOptions {
  /// For r >= 2: keep the first r-1 rounds at the generators and relax only
  /// the last one (a subset of the exact r-round graphs).
  bool relax_last = false;
  std::uint64_t graph_budget = 1'000'000;      ///< graphs and products formed
  std::uint64_t scenario_budget = 20'000'000;  ///< graph x assignment pairs
};

/// Every graph of the model (all supergraphs of effective generators), canonical order.
auto upward_closure(const Model& m, std::uint64_t budget = 1'000'000) -> std::vector<Digraph>;

/// Distinct r-round communication graphs, canonical order. Distinct graphs
/// have distinct In-profiles, so this is the deduplication by view profile.
auto scenario_graphs(const Model& m, int rounds, const ScenarioOptions& opts = {}) -> std::vector<Digraph>;

/// Visits every scenario: graphs in canonical order, assignments over
/// [0, values)^n in lexicographic order.
void for_each_scenario(const Model& m, int rounds, int values, const ScenarioOptions& opts,
                       const std::function<void(const Scenario&)>& visit);

/// Decision map of an oblivious algorithm. Views absent from `entries`
/// decide the smallest value they contain.
struct DecisionMap {
  std::map<FlatView, Value> entries;

  auto decide(const FlatView& v) const -> Value;
};

enum class Verdict { Sat, Unsat, Budget };

auto to_string(Verdict v) -> std::string;

struct SolveOptions {
  ScenarioOptions scenarios;
  std::uint64_t node_budget = 50'000'000;
};

struct SolveStats {
  std::uint64_t graphs = 0;
  std::uint64_t scenarios = 0;
  std::uint64_t constraints = 0;  ///< after dropping satisfied and dominated ones
  std::uint64_t variables = 0;
  std::uint64_t nodes = 0;
};

struct SolveResult {
  Verdict verdict = Verdict::Budget;
  DecisionMap witness;  ///< meaningful when Sat
  SolveStats stats;
  std::string budget;   ///< which budget ran out, when Budget
};

/// Exact search for a decision map, applied after exactly `rounds` rounds,
/// such that every scenario decides at most k distinct values, each one heard.
///
/// Sat certifies solvability for value domains of size at most `values`;
/// Unsat certifies impossibility for every domain of size at least `values`.
auto decide_solvability(const Model& m, int rounds, int k, int values, const SolveOptions& opts = {})
    -> SolveResult;

/// Scope statement attached to every solvability answer.
auto solvability_scope(int rounds, int values) -> std::string;

struct ReplayReport {
  bool ok = true;
  std::uint64_t scenarios_checked = 0;
  std::string failure;
};

/// Checks a decision map against a fresh brute-force enumeration of every
/// graph sequence of the model. Shares no search code with the solver.
auto replay_witness(const Model& m, int rounds, int k, int values, const DecisionMap& map,
                    std::uint64_t budget = 50'000'000) -> ReplayReport;

struct MinStrategy {
  enum class Kind { MinReceived, MinOfFixedSet };
  Kind kind = Kind::MinReceived;
  ProcessSet fixed;  ///< the set whose values are considered, for MinOfFixedSet

  static auto min_received() -> MinStrategy { return {}; }
  static auto min_of(ProcessSet p) -> MinStrategy { return {Kind::MinOfFixedSet, p}; }
};

struct SimulationResult {
  int worst_distinct = 0;
  std::optional<Digraph> worst_graph;
  std::vector<Value> worst_assignment;
  std::uint64_t graphs_examined = 0;
  /// Every r-fold generator product is complete, so every scenario graph is.
  bool complete_after_rounds = false;
};

/// Exact worst-case number of distinct decisions of a min-based protocol over
/// every r-round graph and every assignment of n distinct values.
/// MinOfFixedSet throws DomainError naming a graph the set fails to dominate.
auto simulate_min_protocol(const Model& m, int rounds, const MinStrategy& strategy,
                           const ScenarioOptions& opts = {}) -> SimulationResult;

}  // namespace kset
