#include "ksetlab/cli.hpp"

#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "ksetlab/bounds.hpp"
#include "ksetlab/budgets.hpp"
#include "ksetlab/errors.hpp"
#include "ksetlab/fuzz.hpp"
#include "ksetlab/json_io.hpp"
#include "ksetlab/metrics.hpp"
#include "ksetlab/solvability.hpp"
#include "ksetlab/topology/homology.hpp"
#include "ksetlab/topology/pseudosphere.hpp"
#include "ksetlab/topology/shelling.hpp"

namespace kset::cli {

namespace {

using json::Json;

struct Settings {
  std::string model_path;
  std::string output = "json";
  int rounds = 1;
  int k = 1;
  int values = 2;
  bool relax_last = false;
  bool replay = false;
  bool export_complex = false;
  std::string check;
  std::string target_path;
  std::string choice = "multiset";
  std::vector<int> fixed;
  std::optional<int> level;
  std::uint64_t seed = 1;
  int count = 20;
  int max_n = 4;
  Budgets budgets;
};

void render_text(const Json& j, std::ostream& out, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      const auto path = prefix.empty() ? key : prefix + "." + key;
      if (value.is_object()) {
        render_text(value, out, path);
      } else {
        out << path << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
      }
    }
  } else {
    out << prefix << (prefix.empty() ? "" : ": ") << j.dump() << "\n";
  }
}

void emit(const Settings& s, const Json& j, std::ostream& out) {
  if (s.output == "text") {
    render_text(j, out, "");
  } else {
    out << j.dump(2) << "\n";
  }
}

auto load_model(const Settings& s) -> Model { return json::model_from_json(json::read_file(s.model_path)); }

auto graph_choice(const Settings& s) -> GraphChoice {
  return s.choice == "distinct" ? GraphChoice::Distinct : GraphChoice::Multiset;
}

auto bounds_options(const Settings& s) -> BoundsOptions {
  BoundsOptions o;
  o.products.budget = s.budgets.products;
  o.choice = graph_choice(s);
  return o;
}

auto solve_options(const Settings& s) -> SolveOptions {
  SolveOptions o;
  o.scenarios.relax_last = s.relax_last;
  o.scenarios.graph_budget = s.budgets.products;
  o.scenarios.scenario_budget = s.budgets.scenarios;
  o.node_budget = s.budgets.search_nodes;
  return o;
}

auto connectivity_options(const Settings& s) -> topology::ConnectivityOptions {
  topology::ConnectivityOptions o;
  o.homology.simplex_budget = s.budgets.simplices;
  o.shelling_budget = s.budgets.shelling;
  return o;
}

auto cmd_metrics(const Settings& s, std::ostream& out) -> int {
  const auto m = load_model(s);
  auto j = json::to_json(metrics_report(m.effective_generators(), graph_choice(s)));
  j["graphs"] = m.effective_generators().size();
  emit(s, j, out);
  return kOk;
}

auto cmd_bounds(const Settings& s, std::ostream& out) -> int {
  const auto m = load_model(s);
  emit(s, json::to_json(bounds_report(m, s.rounds, bounds_options(s))), out);
  return kOk;
}

auto cmd_solve(const Settings& s, std::ostream& out) -> int {
  const auto m = load_model(s);
  const auto res = decide_solvability(m, s.rounds, s.k, s.values, solve_options(s));
  auto j = json::to_json(res);
  j["rounds"] = s.rounds;
  j["k"] = s.k;
  j["values"] = s.values;
  j["scope"] = solvability_scope(s.rounds, s.values);
  if (s.replay && res.verdict == Verdict::Sat) {
    const auto rep = replay_witness(m, s.rounds, s.k, s.values, res.witness, s.budgets.scenarios);
    j["replay"] = Json{{"ok", rep.ok}, {"scenarios_checked", rep.scenarios_checked}, {"failure", rep.failure}};
    if (!rep.ok) {
      emit(s, j, out);
      return kInconsistent;
    }
  }
  emit(s, j, out);
  return res.verdict == Verdict::Budget ? kBudget : kOk;
}

auto cmd_topology(const Settings& s, std::ostream& out) -> int {
  const auto m = load_model(s);
  const auto unint = topology::uninterpreted_complex(m);
  Json j{{"check", s.check}};
  if (s.check == "pseudosphere") {
    Json pieces = Json::array();
    for (const auto& spec : unint.pieces()) pieces.push_back(spec.facet_count());
    const auto c = unint.materialize(s.budgets.simplices);
    j["piece_facets"] = pieces;
    j["facets"] = c.facets().size();
    j["dimension"] = c.dimension();
    if (s.export_complex) j["complex"] = json::to_json(c);
  } else if (s.check == "homology") {
    const auto c = unint.materialize(s.budgets.simplices);
    const int level = s.level.value_or(m.n() - 2);
    const auto opts = connectivity_options(s);
    j["level"] = level;
    j["ranks"] = topology::reduced_homology_ranks(c, level, opts.homology);
    j["connectivity"] = topology::to_string(topology::certify_connectivity(c, level, opts));
  } else if (s.check == "shelling") {
    const auto c = unint.materialize(s.budgets.simplices);
    const auto r = topology::find_shelling_order(c, s.budgets.shelling);
    const char* status = r.status == topology::ShellingResult::Status::Found          ? "found"
                         : r.status == topology::ShellingResult::Status::NotShellable ? "not-shellable"
                                                                                       : "budget";
    j["status"] = status;
    j["facets"] = c.facets().size();
    j["explored_nodes"] = r.explored_nodes;
    if (s.export_complex) j["order"] = r.order;
    if (r.status == topology::ShellingResult::Status::BudgetExhausted) {
      emit(s, j, out);
      return kBudget;
    }
  } else if (s.check == "nerve") {
    const auto cover = unint.cover(s.budgets.simplices);
    const auto nv = topology::nerve(cover);
    j["cover_size"] = cover.size();
    j["full_simplex"] = topology::is_full_simplex(nv);
    j["nerve"] = json::to_json(nv);
  } else {
    throw InvalidInput("unknown topology check '" + s.check + "'");
  }
  emit(s, j, out);
  return kOk;
}

auto cmd_product(const Settings& s, std::ostream& out) -> int {
  const auto m = load_model(s);
  if (s.target_path.empty()) {
    const auto prod = product_set(m, s.rounds, ProductOptions{s.budgets.products, false});
    Json graphs = Json::array();
    for (const auto& g : prod) graphs.push_back(json::to_json(g));
    emit(s, Json{{"rounds", s.rounds}, {"count", prod.size()}, {"products", graphs}}, out);
    return kOk;
  }
  const auto target = json::graph_from_json(json::read_file(s.target_path));
  if (target.n() != m.n()) throw InvalidInput("target process count differs from the model");
  const auto& gens = m.effective_generators();
  std::vector<std::size_t> pick(s.rounds, 0);
  Json attempts = Json::array();
  bool budget_hit = false;
  WorkBudget tuples(s.budgets.products, "factor tuples");
  while (true) {
    tuples.charge();
    std::vector<Digraph> base;
    for (auto i : pick) base.push_back(gens[i]);
    const auto r = product_reachability_search(base, target, SearchOptions{s.budgets.search_nodes, false});
    auto rj = json::to_json(r);
    if (std::holds_alternative<ReachabilityWitness>(r)) {
      emit(s, Json{{"rounds", s.rounds}, {"reachable", true}, {"search", rj}}, out);
      return kOk;
    }
    if (std::holds_alternative<ReachabilityBudgetExhausted>(r)) budget_hit = true;
    Json factors = Json::array();
    for (const auto& g : base) factors.push_back(json::to_json(g));
    rj["base"] = factors;
    attempts.push_back(std::move(rj));
    int j = s.rounds - 1;
    while (j >= 0 && ++pick[j] == gens.size()) pick[j--] = 0;
    if (j < 0) break;
  }
  Json j{{"rounds", s.rounds}};
  j["reachable"] = budget_hit ? Json(nullptr) : Json(false);
  j["attempts"] = std::move(attempts);
  emit(s, j, out);
  return budget_hit ? kBudget : kOk;
}

auto audit_options(const Settings& s) -> AuditOptions { return {bounds_options(s), solve_options(s)}; }

auto cmd_audit(const Settings& s, std::ostream& out) -> int {
  const auto m = load_model(s);
  const auto rep = audit(m, s.rounds, audit_options(s));
  emit(s, json::to_json(rep), out);
  return rep.budget_stopped ? kBudget : kOk;
}

auto cmd_simulate(const Settings& s, std::ostream& out) -> int {
  const auto m = load_model(s);
  MinStrategy strategy;
  if (!s.fixed.empty()) {
    ProcessSet p;
    for (int q : s.fixed) {
      if (q < 0 || q >= m.n()) throw InvalidInput("fixed process out of range");
      p.insert(q);
    }
    strategy = MinStrategy::min_of(p);
  }
  ScenarioOptions so;
  so.graph_budget = s.budgets.products;
  so.scenario_budget = s.budgets.scenarios;
  auto j = json::to_json(simulate_min_protocol(m, s.rounds, strategy, so));
  j["strategy"] = s.fixed.empty() ? "min-received" : "min-of-fixed-set";
  j["rounds"] = s.rounds;
  emit(s, j, out);
  return kOk;
}

auto cmd_fuzz(const Settings& s, std::ostream& out) -> int {
  std::mt19937_64 rng(s.seed);
  FuzzOptions fo;
  fo.max_n = s.max_n;
  Json models = Json::array();
  int violations = 0;
  int budget = 0;
  for (int i = 0; i < s.count; ++i) {
    const auto m = random_model(rng, fo);
    Json e{{"model", json::to_json(m)}};
    try {
      const auto rep = audit(m, s.rounds, audit_options(s));
      e["threshold"] = rep.threshold ? Json(*rep.threshold) : Json(nullptr);
      e["largest_impossible"] = rep.bounds.largest_impossible ? Json(*rep.bounds.largest_impossible) : Json(nullptr);
      e["best_upper"] = rep.bounds.best_upper ? Json(*rep.bounds.best_upper) : Json(nullptr);
      e["status"] = rep.budget_stopped ? "budget" : "ok";
      if (rep.budget_stopped) ++budget;
    } catch (const ConsistencyViolation& ex) {
      e["status"] = "violation";
      e["detail"] = ex.what();
      ++violations;
    }
    models.push_back(std::move(e));
  }
  emit(s,
       Json{{"seed", s.seed},
            {"count", s.count},
            {"rounds", s.rounds},
            {"violations", violations},
            {"budget_exceeded", budget},
            {"models", std::move(models)}},
       out);
  return violations > 0 ? kInconsistent : kOk;
}

}  // namespace

auto run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) -> int {
  Settings s;
  try {
    s.budgets = Budgets::defaults();
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }

  CLI::App app{"Bounds, topology and exact solvability for closed-above round-based models"};
  app.name("ksetlab");
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub, bool needs_model) {
    if (needs_model) sub->add_option("model", s.model_path, "model JSON file")->required();
    sub->add_option("--output", s.output, "report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--product-budget", s.budgets.products, "graph products and closures")->check(CLI::PositiveNumber);
    sub->add_option("--scenario-budget", s.budgets.scenarios, "scenarios enumerated")->check(CLI::PositiveNumber);
    sub->add_option("--node-budget", s.budgets.search_nodes, "search nodes")->check(CLI::PositiveNumber);
    sub->add_option("--simplex-budget", s.budgets.simplices, "faces for homology")->check(CLI::PositiveNumber);
    sub->add_option("--shelling-budget", s.budgets.shelling, "shelling search nodes")->check(CLI::PositiveNumber);
    sub->add_option("--choice", s.choice, "graph choice in distributed quantities")
        ->check(CLI::IsMember({"multiset", "distinct"}));
  };
  auto rounds = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--rounds,-r", s.rounds, "communication rounds")->check(CLI::PositiveNumber);
    if (required) o->required();
  };

  auto* metrics = app.add_subcommand("metrics", "graph parameters of the model's generators");
  common(metrics, true);
  auto* bounds = app.add_subcommand("bounds", "upper and lower bounds on k");
  common(bounds, true);
  rounds(bounds, false);
  auto* solve = app.add_subcommand("solve", "exact oblivious solvability on a finite value domain");
  common(solve, true);
  rounds(solve, false);
  solve->add_option("--k", s.k, "agreement bound")->required()->check(CLI::PositiveNumber);
  solve->add_option("--values,-m", s.values, "value domain size")->required()->check(CLI::Range(1, 32));
  solve->add_flag("--relax-last", s.relax_last, "generators in all rounds but the last");
  solve->add_flag("--replay", s.replay, "re-check a SAT witness by brute force");
  auto* topo = app.add_subcommand("topology", "checks on the uninterpreted complex");
  common(topo, true);
  topo->add_option("--check", s.check, "which check")
      ->required()
      ->check(CLI::IsMember({"pseudosphere", "homology", "shelling", "nerve"}));
  topo->add_option("--level", s.level, "connectivity level (default n-2)");
  topo->add_flag("--export", s.export_complex, "include the complex or order in the report");
  auto* product = app.add_subcommand("product", "r-fold products, or reachability of a target");
  common(product, true);
  rounds(product, false);
  product->add_option("--target", s.target_path, "graph JSON to reach");
  auto* aud = app.add_subcommand("audit", "bounds against the oracle across k");
  common(aud, true);
  rounds(aud, false);
  auto* sim = app.add_subcommand("simulate", "worst case of min-based protocols");
  common(sim, true);
  rounds(sim, false);
  sim->add_option("--fixed", s.fixed, "decide the least value heard from these processes")->delimiter(',');
  auto* fuzz = app.add_subcommand("fuzz", "audit seeded random models");
  common(fuzz, false);
  rounds(fuzz, false);
  fuzz->add_option("--seed", s.seed, "random seed");
  fuzz->add_option("--count", s.count, "models")->check(CLI::PositiveNumber);
  fuzz->add_option("--max-n", s.max_n, "largest process count")->check(CLI::Range(2, 6));

  std::vector<const char*> raw;
  raw.reserve(argv.size());
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kBadInput;
  }

  try {
    if (metrics->parsed()) return cmd_metrics(s, out);
    if (bounds->parsed()) return cmd_bounds(s, out);
    if (solve->parsed()) return cmd_solve(s, out);
    if (topo->parsed()) return cmd_topology(s, out);
    if (product->parsed()) return cmd_product(s, out);
    if (aud->parsed()) return cmd_audit(s, out);
    if (sim->parsed()) return cmd_simulate(s, out);
    if (fuzz->parsed()) return cmd_fuzz(s, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const ConsistencyViolation& e) {
    err << "consistency violation: " << e.what() << "\n";
    return kInconsistent;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  err << app.help();
  return kBadInput;
}

}  // namespace kset::cli
