#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "ksetlab/digraph.hpp"

namespace kset {

/// Closed-above oblivious model: every round graph contains one of the
/// generators (or, when symmetric, one of their vertex-permuted images).
class Model {
public:
  Model(std::vector<Digraph> generators, bool symmetric);

  auto n() const -> int { return n_; }
  /// Deduplicated, canonically ordered generators as given.
  auto generators() const -> const std::vector<Digraph>& { return generators_; }
  auto symmetric() const -> bool { return symmetric_; }

  /// Generators after symmetric closure (when flagged), canonical order.
  auto effective_generators() const -> const std::vector<Digraph>& { return effective_; }

  /// Single-round membership: some effective generator is below h.
  auto contains(const Digraph& h) const -> bool;

  auto operator==(const Model& o) const -> bool {
    return n_ == o.n_ && symmetric_ == o.symmetric_ && generators_ == o.generators_;
  }

private:
  int n_;
  bool symmetric_;
  std::vector<Digraph> generators_;
  std::vector<Digraph> effective_;
};

inline auto upward_contains(const Digraph& g, const Digraph& h) -> bool { return g.is_below(h); }
inline auto model_contains(const Model& m, const Digraph& h) -> bool { return m.contains(h); }

/// All vertex-permuted images of the given graphs, deduplicated, canonical order.
/// Enumerates n! permutations; refuses n > 8.
auto symmetric_closure(const std::vector<Digraph>& gens) -> std::vector<Digraph>;

struct ProductOptions {
  std::uint64_t budget = 1'000'000;  ///< pairwise products computed, summed over rounds
  bool parallel = false;
};

/// Every r-fold path product of effective generators (S^r), deduplicated,
/// canonical order. Throws BudgetExceeded rather than truncating.
auto product_set(const Model& m, int rounds, const ProductOptions& opts = {}) -> std::vector<Digraph>;

/// Same, for an explicit generator list.
auto product_set(const std::vector<Digraph>& gens, int rounds, const ProductOptions& opts = {})
    -> std::vector<Digraph>;

struct ReachabilityWitness {
  std::vector<Digraph> factors;  ///< G'_i above the given G_i, product equal to the target
};

struct ReachabilityRefutation {
  std::uint64_t explored_nodes = 0;
  /// A target edge no admissible choice of supergraphs can produce, when one exists.
  std::optional<Edge> unreachable_edge;
  /// A product edge forced by the base factors but absent from the target.
  std::optional<Edge> forced_extra_edge;
};

struct ReachabilityBudgetExhausted {
  std::uint64_t explored_nodes = 0;
};

using ReachabilityResult =
    std::variant<ReachabilityWitness, ReachabilityRefutation, ReachabilityBudgetExhausted>;

struct SearchOptions {
  std::uint64_t node_budget = 10'000'000;
  bool parallel = false;
};

/// Decides whether target lies in (up G_1) x ... x (up G_r) for the given base factors.
auto product_reachability_search(const std::vector<Digraph>& base, const Digraph& target,
                                 const SearchOptions& opts = {}) -> ReachabilityResult;

}  // namespace kset
