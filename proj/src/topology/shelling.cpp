#include "ksetlab/topology/shelling.hpp"

#include <algorithm>
#include <unordered_set>

#include "ksetlab/errors.hpp"

namespace kset::topology {

auto is_shelling_order(const Complex& c, const std::vector<std::size_t>& order) -> bool {
  if (!c.is_pure()) throw InvalidInput("shellability is defined for pure complexes");
  const auto& facets = c.facets();
  if (order.size() != facets.size()) return false;
  std::vector<bool> seen(facets.size(), false);
  for (auto i : order) {
    if (i >= facets.size() || seen[i]) return false;
    seen[i] = true;
  }
  for (std::size_t t = 1; t < order.size(); ++t) {
    const Simplex& next = facets[order[t]];
    const std::size_t ridge = next.size() - 1;
    std::vector<Simplex> meets;
    for (std::size_t j = 0; j < t; ++j) meets.push_back(next.intersect(facets[order[j]]));
    // Every maximal intersection must be a codimension-one face of `next`.
    for (const auto& m : meets) {
      const bool inside_ridge = std::any_of(meets.begin(), meets.end(), [&](const Simplex& r) {
        return r.size() == ridge && r.includes(m);
      });
      if (!inside_ridge) return false;
    }
  }
  return true;
}

namespace {

/// Facets as sorted vertex-id arrays plus the incremental shelling state.
class ShellingSearch {
public:
  ShellingSearch(const Complex& c, std::uint64_t budget) : budget_(budget) {
    const auto verts = c.vertices();
    for (const auto& f : c.facets()) {
      std::vector<std::uint32_t> ids;
      for (const auto& v : f.vertices()) {
        ids.push_back(static_cast<std::uint32_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin()));
      }
      std::sort(ids.begin(), ids.end());
      facets_.push_back(std::move(ids));
    }
    state_.resize(facets_.size());
    used_.assign(facets_.size(), false);
    words_ = (facets_.size() + 63) / 64;
    used_bits_.assign(words_, 0);
  }

  auto run() -> ShellingResult {
    ShellingResult r;
    if (facets_.empty()) {
      r.status = ShellingResult::Status::Found;
      return r;
    }
    try {
      if (dfs()) {
        r.status = ShellingResult::Status::Found;
        r.order = order_;
      } else {
        r.status = ShellingResult::Status::NotShellable;
      }
    } catch (const BudgetExceeded&) {
      r.status = ShellingResult::Status::BudgetExhausted;
    }
    r.explored_nodes = nodes_;
    return r;
  }

private:
  struct FacetState {
    std::uint32_t covered = 0;           ///< positions v with F \ {v} inside the prefix
    std::vector<std::uint32_t> pending;  ///< masks F \ sigma not yet hit by `covered`
  };

  struct Undo {
    std::size_t facet;
    FacetState before;
  };

  /// Positions of `f` that are not in `g`, as a bitmask.
  auto difference_mask(const std::vector<std::uint32_t>& f, const std::vector<std::uint32_t>& g) const
      -> std::uint32_t {
    std::uint32_t mask = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      while (j < g.size() && g[j] < f[i]) ++j;
      if (j == g.size() || g[j] != f[i]) mask |= 1u << i;
    }
    return mask;
  }

  auto valid(std::size_t f) const -> bool { return order_.empty() || state_[f].pending.empty(); }

  void add(std::size_t s, std::vector<Undo>& log) {
    used_[s] = true;
    used_bits_[s / 64] |= std::uint64_t{1} << (s % 64);
    order_.push_back(s);
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      if (used_[f]) continue;
      const auto mask = difference_mask(facets_[f], facets_[s]);
      auto& st = state_[f];
      log.push_back({f, st});
      if (std::popcount(mask) == 1) {
        st.covered |= mask;
        std::erase_if(st.pending, [&](std::uint32_t m) { return (m & st.covered) != 0; });
      }
      if ((mask & st.covered) == 0 &&
          std::find(st.pending.begin(), st.pending.end(), mask) == st.pending.end()) {
        st.pending.push_back(mask);
      }
    }
  }

  void remove(std::size_t s, std::vector<Undo>& log) {
    for (auto it = log.rbegin(); it != log.rend(); ++it) state_[it->facet] = std::move(it->before);
    log.clear();
    used_[s] = false;
    used_bits_[s / 64] &= ~(std::uint64_t{1} << (s % 64));
    order_.pop_back();
  }

  struct BitsHash {
    auto operator()(const std::vector<std::uint64_t>& v) const noexcept -> std::size_t {
      std::size_t h = 0;
      for (auto w : v) h = h * 0x9e3779b97f4a7c15ULL ^ w;
      return h;
    }
  };

  auto dfs() -> bool {
    if (order_.size() == facets_.size()) return true;
    if (++nodes_ > budget_) throw BudgetExceeded("shelling search", budget_);
    if (dead_.count(used_bits_) != 0) return false;
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      if (used_[f] || !valid(f)) continue;
      std::vector<Undo> log;
      add(f, log);
      if (dfs()) return true;
      remove(f, log);
    }
    dead_.insert(used_bits_);
    return false;
  }

  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<std::uint32_t>> facets_;
  std::vector<FacetState> state_;
  std::vector<bool> used_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> used_bits_;
  std::vector<std::size_t> order_;
  std::unordered_set<std::vector<std::uint64_t>, BitsHash> dead_;
};

}  // namespace

auto find_shelling_order(const Complex& c, std::uint64_t node_budget) -> ShellingResult {
  if (!c.is_pure()) throw InvalidInput("shellability is defined for pure complexes");
  return ShellingSearch(c, node_budget).run();
}

auto to_string(Connectivity c) -> std::string {
  switch (c) {
    case Connectivity::CertifiedNo: return "certified-no";
    case Connectivity::HomologyConsistent: return "homology-consistent";
    case Connectivity::ShellableYes: return "shellable-yes";
  }
  return "unknown";
}

auto certify_connectivity(const Complex& c, int k, const ConnectivityOptions& opts) -> Connectivity {
  if (k < -1) throw DomainError("connectivity below -1 is vacuous");
  if (c.empty()) return Connectivity::CertifiedNo;
  if (k >= 0) {
    const auto ranks = reduced_homology_ranks(c, k, opts.homology);
    if (std::any_of(ranks.begin(), ranks.end(), [](int r) { return r != 0; })) return Connectivity::CertifiedNo;
  }
  if (c.is_pure() && c.dimension() >= k + 1) {
    if (find_shelling_order(c, opts.shelling_budget).status == ShellingResult::Status::Found) {
      return Connectivity::ShellableYes;
    }
  }
  return Connectivity::HomologyConsistent;
}

}  // namespace kset::topology
