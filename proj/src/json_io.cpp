#include "ksetlab/json_io.hpp"

#include <fstream>
#include <sstream>

#include "ksetlab/errors.hpp"

namespace kset::json {

namespace {

auto require_int(const Json& j, const char* what) -> int {
  if (!j.is_number_integer()) throw InvalidInput(std::string(what) + " must be an integer");
  return j.get<int>();
}

auto process_list(ProcessSet s) -> Json {
  Json a = Json::array();
  s.for_each([&](ProcessId p) { a.push_back(p); });
  return a;
}

auto pairs(const FlatView& v) -> Json {
  Json a = Json::array();
  for (const auto& [q, x] : v.entries()) a.push_back(Json::array({q, x}));
  return a;
}

auto payload(const View& v) -> Json {
  if (const auto* l = std::get_if<Label>(&v)) return l->value;
  if (const auto* s = std::get_if<ProcessSet>(&v)) return process_list(*s);
  return pairs(std::get<FlatView>(v));
}

auto int_map(const std::map<int, int>& m) -> Json {
  Json o = Json::object();
  for (const auto& [k, v] : m) o[std::to_string(k)] = v;
  return o;
}

}  // namespace

auto to_json(const Digraph& g) -> Json {
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back(Json::array({u, v}));
  return Json{{"n", g.n()}, {"edges", std::move(edges)}};
}

auto graph_from_json(const Json& j) -> Digraph {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
    throw InvalidInput("graph must be an object with \"n\" and \"edges\"");
  }
  const int n = require_int(j.at("n"), "graph n");
  validate_process_count(n);
  const auto& raw = j.at("edges");
  if (!raw.is_array()) throw InvalidInput("graph edges must be an array");
  std::vector<Edge> edges;
  for (const auto& e : raw) {
    if (!e.is_array() || e.size() != 2) throw InvalidInput("each edge must be a pair [u, v]");
    edges.emplace_back(require_int(e[0], "edge endpoint"), require_int(e[1], "edge endpoint"));
  }
  return Digraph(n, edges);
}

auto to_json(const Model& m) -> Json {
  Json gens = Json::array();
  for (const auto& g : m.generators()) gens.push_back(to_json(g));
  return Json{{"n", m.n()}, {"generators", std::move(gens)}, {"symmetric", m.symmetric()}};
}

auto model_from_json(const Json& j) -> Model {
  if (!j.is_object() || !j.contains("n") || !j.contains("generators")) {
    throw InvalidInput("model must be an object with \"n\" and \"generators\"");
  }
  const int n = require_int(j.at("n"), "model n");
  validate_process_count(n);
  const auto& raw = j.at("generators");
  if (!raw.is_array() || raw.empty()) throw InvalidInput("model generators must be a non-empty array");
  std::vector<Digraph> gens;
  for (const auto& g : raw) {
    gens.push_back(graph_from_json(g));
    if (gens.back().n() != n) throw InvalidInput("generator process count differs from model n");
  }
  bool symmetric = false;
  if (j.contains("symmetric")) {
    if (!j.at("symmetric").is_boolean()) throw InvalidInput("\"symmetric\" must be a boolean");
    symmetric = j.at("symmetric").get<bool>();
  }
  return Model(std::move(gens), symmetric);
}

auto parse(const std::string& text) -> Json {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

auto read_file(const std::string& path) -> Json {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

auto to_json(const topology::Complex& c) -> Json {
  Json facets = Json::array();
  for (const auto& f : c.facets()) {
    Json verts = Json::array();
    for (const auto& v : f.vertices()) verts.push_back(Json::array({v.color, payload(v.view)}));
    facets.push_back(std::move(verts));
  }
  return Json{{"facets", std::move(facets)}};
}

auto to_json(const DecisionMap& d) -> Json {
  Json a = Json::array();
  for (const auto& [view, value] : d.entries) a.push_back(Json{{"view", pairs(view)}, {"decide", value}});
  return a;
}

auto decision_map_from_json(const Json& j) -> DecisionMap {
  if (!j.is_array()) throw InvalidInput("decision map must be an array");
  DecisionMap d;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("view") || !e.contains("decide") || !e.at("view").is_array()) {
      throw InvalidInput("decision entries need \"view\" and \"decide\"");
    }
    std::vector<std::pair<ProcessId, Value>> entries;
    for (const auto& p : e.at("view")) {
      if (!p.is_array() || p.size() != 2) throw InvalidInput("view entries must be [process, value] pairs");
      entries.emplace_back(require_int(p[0], "view process"), require_int(p[1], "view value"));
    }
    d.entries[FlatView(entries)] = require_int(e.at("decide"), "decision");
  }
  return d;
}

auto to_json(const MetricsReport& r) -> Json {
  return Json{{"n", r.n},
              {"dom", r.dom},
              {"edom", r.edom},
              {"cov", int_map(r.cov)},
              {"edom_over", r.edom_over},
              {"max_cov", int_map(r.max_cov)},
              {"m_coeff", int_map(r.m_coeff)},
              {"notes", r.notes}};
}

auto to_json(const BoundsReport& r) -> Json {
  Json upper = Json::array();
  for (const auto& u : r.upper) {
    Json e{{"k", u.k}, {"method", u.method}};
    if (u.i) e["i"] = *u.i;
    e["cite"] = u.cite;
    upper.push_back(std::move(e));
  }
  Json lower = Json::array();
  for (const auto& l : r.lower) {
    lower.push_back(Json{{"k", l.k},
                         {"method", l.method},
                         {"cite", l.cite},
                         {"applicability", to_string(l.applicability)},
                         {"vacuous", l.vacuous}});
  }
  Json o{{"model", r.model}, {"n", r.n}, {"rounds", r.rounds}, {"upper", std::move(upper)}, {"lower", std::move(lower)}};
  o["best_upper"] = r.best_upper ? Json(*r.best_upper) : Json(nullptr);
  o["largest_impossible"] = r.largest_impossible ? Json(*r.largest_impossible) : Json(nullptr);
  o["tight"] = r.tight ? Json(*r.tight) : Json(nullptr);
  o["notes"] = r.notes;
  return o;
}

auto to_json(const CoveringSequence& s) -> Json {
  Json o{{"values", s.values}, {"reaches_n", s.reaches_n}};
  o["rounds_to_n"] = s.rounds_to_n ? Json(*s.rounds_to_n) : Json(nullptr);
  return o;
}

auto to_json(const SolveResult& r) -> Json {
  Json o{{"result", to_string(r.verdict)}};
  if (r.verdict == Verdict::Sat) {
    o["witness"] = to_json(r.witness);
    o["witness_default"] = "views not listed decide the smallest value they contain";
  }
  if (r.verdict == Verdict::Budget) o["budget"] = r.budget;
  o["stats"] = Json{{"graphs", r.stats.graphs},
                    {"scenarios", r.stats.scenarios},
                    {"constraints", r.stats.constraints},
                    {"variables", r.stats.variables},
                    {"nodes", r.stats.nodes}};
  return o;
}

auto to_json(const SimulationResult& r) -> Json {
  Json o{{"worst_distinct", r.worst_distinct},
         {"graphs_examined", r.graphs_examined},
         {"complete_after_rounds", r.complete_after_rounds}};
  o["worst_graph"] = r.worst_graph ? to_json(*r.worst_graph) : Json(nullptr);
  o["worst_assignment"] = r.worst_assignment;
  return o;
}

auto to_json(const AuditReport& r) -> Json {
  Json runs = Json::array();
  for (const auto& run : r.runs) {
    runs.push_back(Json{{"k", run.k},
                        {"values", run.values},
                        {"result", to_string(run.verdict)},
                        {"constraints", run.stats.constraints},
                        {"nodes", run.stats.nodes}});
  }
  Json o{{"bounds", to_json(r.bounds)}, {"oracle", std::move(runs)}};
  o["threshold"] = r.threshold ? Json(*r.threshold) : Json(nullptr);
  o["budget_stopped"] = r.budget_stopped;
  o["consistent"] = true;
  return o;
}

auto to_json(const ReachabilityResult& r) -> Json {
  if (const auto* w = std::get_if<ReachabilityWitness>(&r)) {
    Json f = Json::array();
    for (const auto& g : w->factors) f.push_back(to_json(g));
    return Json{{"result", "witness"}, {"factors", std::move(f)}};
  }
  if (const auto* x = std::get_if<ReachabilityRefutation>(&r)) {
    Json o{{"result", "refutation"}, {"explored_nodes", x->explored_nodes}};
    if (x->unreachable_edge) o["unreachable_edge"] = Json::array({x->unreachable_edge->first, x->unreachable_edge->second});
    if (x->forced_extra_edge) {
      o["forced_extra_edge"] = Json::array({x->forced_extra_edge->first, x->forced_extra_edge->second});
    }
    return o;
  }
  return Json{{"result", "budget"}, {"explored_nodes", std::get<ReachabilityBudgetExhausted>(r).explored_nodes}};
}

auto to_json(const topology::TransferReport& r) -> Json {
  Json o{{"shellable", r.shellable},
         {"shelling", r.shelling},
         {"hypothesis_union", topology::to_string(r.hypothesis_union)},
         {"union_checks", r.union_checks},
         {"hypothesis_intersections", topology::to_string(r.hypothesis_intersections)},
         {"intersection_checks", r.intersection_checks},
         {"conclusion", topology::to_string(r.conclusion)}};
  if (!r.detail.empty()) o["detail"] = r.detail;
  return o;
}

}  // namespace kset::json
