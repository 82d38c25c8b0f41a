#include "ksetlab/topology/transfer.hpp"

#include <algorithm>

#include "ksetlab/errors.hpp"

namespace kset::topology {

auto to_string(CheckStatus s) -> std::string {
  switch (s) {
    case CheckStatus::Passed: return "passed";
    case CheckStatus::Consistent: return "consistent";
    case CheckStatus::Failed: return "failed";
    case CheckStatus::Skipped: return "skipped";
  }
  return "unknown";
}

namespace {

auto share_ridge(const Simplex& x, const Simplex& y) -> bool {
  return x.size() == y.size() && x.intersect(y).size() + 1 == x.size();
}

}  // namespace

auto verify_connectivity_transfer(const Complex& a, const std::vector<Complex>& images, int level,
                                  const TransferOptions& opts) -> TransferReport {
  if (level < 0) throw DomainError("transfer level must be non-negative");
  if (!a.is_pure()) throw InvalidInput("the source complex must be pure");
  const auto& facets = a.facets();
  if (images.size() != facets.size()) {
    throw InvalidInput("expected one image per facet: " + std::to_string(facets.size()) + " facets, " +
                       std::to_string(images.size()) + " images");
  }

  TransferReport rep;
  const auto shelling = find_shelling_order(a, opts.connectivity.shelling_budget);
  rep.shellable = shelling.status == ShellingResult::Status::Found;

  if (rep.shellable) {
    rep.shelling = shelling.order;
    rep.hypothesis_union = CheckStatus::Passed;
    for (std::size_t j = 1; j < rep.shelling.size(); ++j) {
      const auto cur = rep.shelling[j];
      std::vector<Complex> all_meets;
      std::vector<Complex> ridge_meets;
      for (std::size_t i = 0; i < j; ++i) {
        const auto prev = rep.shelling[i];
        auto meet = intersect(images[prev], images[cur]);
        if (share_ridge(facets[prev], facets[cur])) ridge_meets.push_back(meet);
        all_meets.push_back(std::move(meet));
      }
      ++rep.union_checks;
      if (unite(all_meets) != unite(ridge_meets)) {
        rep.hypothesis_union = CheckStatus::Failed;
        rep.detail = "union hypothesis fails at shelling step " + std::to_string(j) + " (facet " +
                     facets[cur].to_string() + ")";
        break;
      }
    }
  }

  rep.hypothesis_intersections = CheckStatus::Passed;
  bool stop = false;
  for (std::size_t f = 0; f < facets.size() && !stop; ++f) {
    std::vector<std::size_t> neighbours;
    for (std::size_t g = 0; g < facets.size(); ++g) {
      if (g != f && share_ridge(facets[f], facets[g])) neighbours.push_back(g);
    }
    const int deepest = std::min<int>(level + 1, static_cast<int>(neighbours.size()));
    for (int t = 0; t <= deepest && !stop; ++t) {
      std::vector<int> pick(t);
      for (int q = 0; q < t; ++q) pick[q] = q;
      while (true) {
        if (++rep.intersection_checks > opts.max_intersections) {
          throw BudgetExceeded("transfer intersection checks", opts.max_intersections);
        }
        std::vector<Complex> parts{images[f]};
        for (int q : pick) parts.push_back(images[neighbours[q]]);
        const auto verdict = certify_connectivity(intersect(parts), level - t, opts.connectivity);
        if (verdict == Connectivity::CertifiedNo) {
          rep.hypothesis_intersections = CheckStatus::Failed;
          rep.detail = "intersection of the image of facet " + std::to_string(f) + " with " + std::to_string(t) +
                       " neighbour image(s) is not " + std::to_string(level - t) + "-connected";
          stop = true;
          break;
        }
        if (verdict == Connectivity::HomologyConsistent) rep.hypothesis_intersections = CheckStatus::Consistent;
        int q = t - 1;
        const int m = static_cast<int>(neighbours.size());
        while (q >= 0 && pick[q] == m - t + q) --q;
        if (q < 0) break;
        ++pick[q];
        for (int w = q + 1; w < t; ++w) pick[w] = pick[w - 1] + 1;
      }
    }
  }

  rep.conclusion = certify_connectivity(unite(images), level, opts.connectivity);
  return rep;
}

}  // namespace kset::topology
