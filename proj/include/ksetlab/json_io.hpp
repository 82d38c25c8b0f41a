#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "ksetlab/bounds.hpp"
#include "ksetlab/digraph.hpp"
#include "ksetlab/metrics.hpp"
#include "ksetlab/model.hpp"
#include "ksetlab/solvability.hpp"
#include "ksetlab/topology/complex.hpp"
#include "ksetlab/topology/transfer.hpp"

namespace kset::json {

// Insertion-ordered objects keep emitted reports byte-deterministic.
using Json = nlohmann::ordered_json;

/// {"n": 4, "edges": [[0,1], ...]}: non-loop edges in canonical order.
auto to_json(const Digraph& g) -> Json;
/// Accepts loops in the edge list (they are implied anyway). Throws InvalidInput.
auto graph_from_json(const Json& j) -> Digraph;

/// {"n": 4, "generators": [...], "symmetric": true}
auto to_json(const Model& m) -> Json;
auto model_from_json(const Json& j) -> Model;

/// Parses text, turning syntax errors into InvalidInput.
auto parse(const std::string& text) -> Json;
auto read_file(const std::string& path) -> Json;

auto to_json(const topology::Complex& c) -> Json;
auto to_json(const DecisionMap& d) -> Json;
auto decision_map_from_json(const Json& j) -> DecisionMap;

auto to_json(const MetricsReport& r) -> Json;
auto to_json(const BoundsReport& r) -> Json;
auto to_json(const CoveringSequence& s) -> Json;
auto to_json(const SolveResult& r) -> Json;
auto to_json(const SimulationResult& r) -> Json;
auto to_json(const AuditReport& r) -> Json;
auto to_json(const ReachabilityResult& r) -> Json;
auto to_json(const topology::TransferReport& r) -> Json;

}  // namespace kset::json
