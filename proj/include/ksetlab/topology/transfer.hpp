#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ksetlab/topology/complex.hpp"
#include "ksetlab/topology/shelling.hpp"

namespace kset::topology {

/// Outcome of one hypothesis check.
enum class CheckStatus {
  Passed,      ///< verified exactly
  Consistent,  ///< no violation found, but some connectivity was only homology-consistent
  Failed,      ///< a concrete violation was found
  Skipped,     ///< preconditions missing (for instance no shelling order found)
};

auto to_string(CheckStatus s) -> std::string;

struct TransferOptions {
  ConnectivityOptions connectivity;
  std::uint64_t max_intersections = 100'000;  ///< neighbour subsets examined for the second hypothesis
};

struct TransferReport {
  bool shellable = false;
  std::vector<std::size_t> shelling;  ///< order used for the first hypothesis
  CheckStatus hypothesis_union = CheckStatus::Skipped;
  std::uint64_t union_checks = 0;
  CheckStatus hypothesis_intersections = CheckStatus::Skipped;
  std::uint64_t intersection_checks = 0;
  Connectivity conclusion = Connectivity::HomologyConsistent;
  std::string detail;  ///< first failure, when there is one
};

/// Exercises the shelling-based connectivity transfer on one instance:
/// `images[j]` is the cover element assigned to facet j of `a`, the covered
/// complex is their union, and `level` is the target connectivity.
///
/// The union hypothesis is checked on the prefixes of the shelling order found
/// for `a` (the instances the argument actually uses). The intersection
/// hypothesis is checked for every facet and every subset of at most level+1 of
/// its neighbours across a codimension-one face; deeper subsets impose nothing.
auto verify_connectivity_transfer(const Complex& a, const std::vector<Complex>& images, int level,
                                  const TransferOptions& opts = {}) -> TransferReport;

}  // namespace kset::topology
