#pragma once

#include <cstdint>

namespace kset {

/// Environment variable that, when set to a positive integer, replaces every
/// default work budget below.
inline constexpr const char* kBudgetEnvVar = "KSETLAB_BUDGET";

struct Budgets {
  std::uint64_t products = 1'000'000;       ///< pairwise graph products
  std::uint64_t scenarios = 20'000'000;     ///< (graph, assignment) pairs enumerated
  std::uint64_t search_nodes = 50'000'000;  ///< SAT decisions plus conflicts
  std::uint64_t simplices = 2'000'000;      ///< faces generated for homology
  std::uint64_t shelling = 200'000;         ///< shelling search nodes

  /// Built-in defaults, replaced by the environment variable when set.
  /// Throws InvalidInput when the variable is set but not a positive integer.
  static auto defaults() -> Budgets;
};

}  // namespace kset
