#pragma once

#include <cstdint>
#include <vector>

#include "ksetlab/topology/complex.hpp"

namespace kset::topology {

struct HomologyOptions {
  std::uint64_t simplex_budget = 2'000'000;  ///< total faces generated
};

/// Number of faces per dimension, f_0 .. f_dim.
auto face_counts(const Complex& c, const HomologyOptions& opts = {}) -> std::vector<std::uint64_t>;

/// Ranks of reduced rational homology in dimensions 0..up_to.
/// Exact: boundary ranks come from integer elimination with content
/// normalisation, switching to arbitrary precision on overflow.
auto reduced_homology_ranks(const Complex& c, int up_to, const HomologyOptions& opts = {})
    -> std::vector<int>;

/// Rank of an integer matrix given column-wise as sparse (row, coefficient) lists.
/// Exposed for testing the elimination kernel against an independent oracle.
auto exact_rank(const std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>>& columns) -> int;

}  // namespace kset::topology
