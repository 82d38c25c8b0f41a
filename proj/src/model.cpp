#include "ksetlab/model.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>
#include <unordered_set>

#include "ksetlab/errors.hpp"

namespace kset {

Model::Model(std::vector<Digraph> generators, bool symmetric)
    : symmetric_(symmetric), generators_(std::move(generators)) {
  if (generators_.empty()) throw InvalidInput("model needs at least one generator");
  n_ = generators_.front().n();
  for (const auto& g : generators_) {
    if (g.n() != n_) throw InvalidInput("generators have different process counts");
  }
  canonicalize(generators_);
  effective_ = symmetric_ ? symmetric_closure(generators_) : generators_;
}

auto Model::contains(const Digraph& h) const -> bool {
  if (h.n() != n_) throw InvalidInput("graph and model have different process counts");
  return std::any_of(effective_.begin(), effective_.end(),
                     [&](const Digraph& g) { return g.is_below(h); });
}

auto symmetric_closure(const std::vector<Digraph>& gens) -> std::vector<Digraph> {
  if (gens.empty()) return {};
  const int n = gens.front().n();
  if (n > 8) throw DomainError("symmetric closure enumerates n! permutations; n must be <= 8");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::unordered_set<Digraph, DigraphHash> seen;
  do {
    for (const auto& g : gens) {
      if (g.n() != n) throw InvalidInput("generators have different process counts");
      seen.insert(g.permuted(perm));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<Digraph> out(seen.begin(), seen.end());
  canonicalize(out);
  return out;
}

namespace {

auto worker_count(std::size_t tasks) -> std::size_t {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(hw, tasks));
}

auto extend_products(const std::vector<Digraph>& current, const std::vector<Digraph>& gens,
                     bool parallel) -> std::vector<Digraph> {
  if (!parallel || current.size() < 64) {
    std::unordered_set<Digraph, DigraphHash> next;
    for (const auto& a : current) {
      for (const auto& g : gens) next.insert(path_product(a, g));
    }
    return {next.begin(), next.end()};
  }
  const std::size_t workers = worker_count(current.size());
  std::vector<std::unordered_set<Digraph, DigraphHash>> partial(workers);
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (std::size_t i = w; i < current.size(); i += workers) {
        for (const auto& g : gens) partial[w].insert(path_product(current[i], g));
      }
    });
  }
  for (auto& t : threads) t.join();
  std::unordered_set<Digraph, DigraphHash> merged;
  for (auto& p : partial) merged.insert(p.begin(), p.end());
  return {merged.begin(), merged.end()};
}

}  // namespace

auto product_set(const std::vector<Digraph>& gens, int rounds, const ProductOptions& opts)
    -> std::vector<Digraph> {
  if (rounds < 1) throw InvalidInput("round count must be at least 1");
  if (gens.empty()) throw InvalidInput("product of an empty generator set");
  std::vector<Digraph> current = gens;
  canonicalize(current);
  WorkBudget budget(opts.budget, "graph product enumeration");
  for (int r = 1; r < rounds; ++r) {
    budget.charge(static_cast<std::uint64_t>(current.size()) * gens.size());
    current = extend_products(current, gens, opts.parallel);
    canonicalize(current);
  }
  return current;
}

auto product_set(const Model& m, int rounds, const ProductOptions& opts) -> std::vector<Digraph> {
  return product_set(m.effective_generators(), rounds, opts);
}

// ---------------------------------------------------------------------------
// Reachability of a target graph through supergraphs of fixed factors.

namespace {

struct Candidate {
  int factor;
  Edge edge;
};

struct SearchState {
  std::vector<Digraph> factors;
  std::vector<Candidate> undecided;
};

class ReachabilitySearch {
public:
  ReachabilitySearch(const Digraph& target, std::uint64_t budget) : target_(target), budget_(budget) {}

  auto product_of(const std::vector<Digraph>& fs) const -> Digraph { return path_product(fs); }

  auto with(const std::vector<Digraph>& fs, const Candidate& c) const -> std::vector<Digraph> {
    auto out = fs;
    out[c.factor] = out[c.factor].with_edge(c.edge.first, c.edge.second);
    return out;
  }

  /// Drops candidates whose single addition already leaves the target.
  void prune(SearchState& s) const {
    std::erase_if(s.undecided, [&](const Candidate& c) {
      return !product_of(with(s.factors, c)).is_below(target_);
    });
  }

  auto optimistic(const SearchState& s) const -> std::vector<Digraph> {
    auto fs = s.factors;
    for (const auto& c : s.undecided) fs = with(fs, c);
    return fs;
  }

  /// The children of a node, in the order the sequential search visits them.
  auto children(const SearchState& s) const -> std::vector<SearchState> {
    std::vector<SearchState> out;
    for (std::size_t j = 0; j < s.undecided.size(); ++j) {
      SearchState child;
      child.factors = with(s.factors, s.undecided[j]);
      child.undecided.assign(s.undecided.begin() + static_cast<std::ptrdiff_t>(j) + 1, s.undecided.end());
      out.push_back(std::move(child));
    }
    out.push_back(SearchState{s.factors, {}});
    return out;
  }

  enum class Outcome { Found, Exhausted, OutOfBudget };

  struct NodeResult {
    Outcome outcome = Outcome::Exhausted;
    std::vector<Digraph> witness;
    std::uint64_t nodes = 0;
  };

  /// Expands a node whose undecided list has not yet been pruned.
  auto expand_root(SearchState& s, std::uint64_t& nodes, std::optional<Edge>& missing) const -> std::optional<NodeResult> {
    ++nodes;
    prune(s);
    const auto opt_product = product_of(optimistic(s));
    if (!target_.is_below(opt_product)) {
      const auto need = target_.edges();
      for (const auto& e : need) {
        if (!opt_product.has_edge(e.first, e.second)) {
          missing = e;
          break;
        }
      }
      return NodeResult{Outcome::Exhausted, {}, nodes};
    }
    if (opt_product.is_below(target_)) return NodeResult{Outcome::Found, optimistic(s), nodes};
    return std::nullopt;
  }

  auto dfs(SearchState s, std::uint64_t& nodes) const -> NodeResult {
    ++nodes;
    if (nodes > budget_) return {Outcome::OutOfBudget, {}, nodes};
    prune(s);
    const auto fs_opt = optimistic(s);
    const auto opt_product = product_of(fs_opt);
    if (!target_.is_below(opt_product)) return {Outcome::Exhausted, {}, nodes};
    if (opt_product.is_below(target_)) return {Outcome::Found, fs_opt, nodes};
    for (auto& child : children(s)) {
      auto r = dfs(std::move(child), nodes);
      if (r.outcome != Outcome::Exhausted) return r;
    }
    return {Outcome::Exhausted, {}, nodes};
  }

  auto budget() const -> std::uint64_t { return budget_; }

private:
  Digraph target_;
  std::uint64_t budget_;
};

}  // namespace

auto product_reachability_search(const std::vector<Digraph>& base, const Digraph& target,
                                 const SearchOptions& opts) -> ReachabilityResult {
  if (base.empty()) throw InvalidInput("reachability search needs at least one factor");
  for (const auto& g : base) {
    if (g.n() != target.n()) throw InvalidInput("factor and target have different process counts");
  }

  const auto base_product = path_product(base);
  if (!base_product.is_below(target)) {
    ReachabilityRefutation ref;
    ref.explored_nodes = 1;
    for (const auto& e : base_product.edges()) {
      if (!target.has_edge(e.first, e.second)) {
        ref.forced_extra_edge = e;
        break;
      }
    }
    return ref;
  }

  SearchState root;
  root.factors = base;
  for (int f = 0; f < static_cast<int>(base.size()); ++f) {
    for (int u = 0; u < target.n(); ++u) {
      for (int v = 0; v < target.n(); ++v) {
        if (u != v && !base[f].has_edge(u, v)) root.undecided.push_back({f, {u, v}});
      }
    }
  }

  ReachabilitySearch search(target, opts.node_budget);
  std::uint64_t nodes = 0;
  std::optional<Edge> missing;
  if (auto settled = search.expand_root(root, nodes, missing)) {
    if (settled->outcome == ReachabilitySearch::Outcome::Found) return ReachabilityWitness{settled->witness};
    return ReachabilityRefutation{nodes, missing, std::nullopt};
  }

  // Children of the root are independent subtrees; the sequential order is their index order.
  auto subtrees = search.children(root);
  std::vector<ReachabilitySearch::NodeResult> results(subtrees.size());
  if (opts.parallel) {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < worker_count(subtrees.size()); ++w) {
      threads.emplace_back([&] {
        for (std::size_t i = next++; i < subtrees.size(); i = next++) {
          std::uint64_t local = 0;
          results[i] = search.dfs(subtrees[i], local);
          results[i].nodes = local;
        }
      });
    }
    for (auto& t : threads) t.join();
  }

  for (std::size_t i = 0; i < subtrees.size(); ++i) {
    if (!opts.parallel) {
      std::uint64_t local = 0;
      // Remaining budget for this subtree, so the sequential run stops where it would overall.
      ReachabilitySearch bounded(target, nodes >= opts.node_budget ? 0 : opts.node_budget - nodes);
      results[i] = bounded.dfs(subtrees[i], local);
      results[i].nodes = local;
    }
    nodes += results[i].nodes;
    if (nodes > opts.node_budget || results[i].outcome == ReachabilitySearch::Outcome::OutOfBudget) {
      return ReachabilityBudgetExhausted{std::min(nodes, opts.node_budget)};
    }
    if (results[i].outcome == ReachabilitySearch::Outcome::Found) {
      return ReachabilityWitness{results[i].witness};
    }
  }
  return ReachabilityRefutation{nodes, std::nullopt, std::nullopt};
}

}  // namespace kset
