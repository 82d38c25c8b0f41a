#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ksetlab/topology/complex.hpp"
#include "ksetlab/topology/homology.hpp"

namespace kset::topology {

struct ShellingResult {
  enum class Status { Found, NotShellable, BudgetExhausted };
  Status status = Status::NotShellable;
  std::vector<std::size_t> order;  ///< indices into Complex::facets() when Found
  std::uint64_t explored_nodes = 0;
};

/// True iff `order` (indices into facets) is a shelling order: each facet
/// meets the union of its predecessors in a pure codimension-one subcomplex
/// of its boundary. Throws on a non-pure complex.
auto is_shelling_order(const Complex& c, const std::vector<std::size_t>& order) -> bool;

/// Backtracking search, trying facets in index order and memoising dead
/// prefix sets. NotShellable is a certificate; BudgetExhausted is not.
auto find_shelling_order(const Complex& c, std::uint64_t node_budget = 200'000) -> ShellingResult;

enum class Connectivity {
  CertifiedNo,          ///< some reduced homology rank in 0..k is non-zero (or empty at k >= -1)
  HomologyConsistent,   ///< necessary condition holds; homotopy not certified
  ShellableYes,         ///< pure, shellable, dimension >= k+1
};

auto to_string(Connectivity c) -> std::string;

struct ConnectivityOptions {
  HomologyOptions homology;
  std::uint64_t shelling_budget = 200'000;
};

/// Three-valued k-connectivity verdict.
auto certify_connectivity(const Complex& c, int k, const ConnectivityOptions& opts = {}) -> Connectivity;

}  // namespace kset::topology
