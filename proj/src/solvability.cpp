#include "ksetlab/solvability.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "ksetlab/errors.hpp"
#include "sat.hpp"

namespace kset {

// ---------------------------------------------------------------------------
// Scenario graphs

auto upward_closure(const Model& m, std::uint64_t budget) -> std::vector<Digraph> {
  const int n = m.n();
  WorkBudget work(budget, "upward closure enumeration");
  std::unordered_set<Digraph, DigraphHash> seen;
  for (const auto& g : m.effective_generators()) {
    std::vector<Edge> missing;
    for (ProcessId u = 0; u < n; ++u) {
      for (ProcessId v = 0; v < n; ++v) {
        if (u != v && !g.has_edge(u, v)) missing.emplace_back(u, v);
      }
    }
    if (missing.size() >= 63 || (std::uint64_t{1} << missing.size()) > budget) {
      throw BudgetExceeded("upward closure enumeration", budget);
    }
    std::vector<ProcessSet> base(n);
    for (ProcessId p = 0; p < n; ++p) base[p] = g.out(p);
    const std::uint64_t count = std::uint64_t{1} << missing.size();
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      work.charge();
      auto rows = base;
      for (std::size_t e = 0; e < missing.size(); ++e) {
        if ((mask >> e) & 1u) rows[missing[e].first].insert(missing[e].second);
      }
      seen.insert(Digraph::from_out_rows(n, rows));
    }
  }
  std::vector<Digraph> out(seen.begin(), seen.end());
  canonicalize(out);
  return out;
}

auto scenario_graphs(const Model& m, int rounds, const ScenarioOptions& opts) -> std::vector<Digraph> {
  if (rounds < 1) throw InvalidInput("rounds must be at least 1");
  const auto up = upward_closure(m, opts.graph_budget);
  if (rounds == 1) return up;

  WorkBudget work(opts.graph_budget, "scenario graph products");
  std::vector<Digraph> current;
  int steps = 0;
  if (opts.relax_last) {
    current = product_set(m, rounds - 1, ProductOptions{opts.graph_budget, false});
    steps = 1;
  } else {
    current = up;
    steps = rounds - 1;
  }
  for (int s = 0; s < steps; ++s) {
    std::unordered_set<Digraph, DigraphHash> next;
    work.charge(current.size() * up.size());
    for (const auto& a : current) {
      for (const auto& h : up) next.insert(path_product(a, h));
    }
    current.assign(next.begin(), next.end());
    canonicalize(current);
  }
  return current;
}

namespace {

auto power(std::uint64_t base, int exp) -> std::uint64_t {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > UINT64_MAX / std::max<std::uint64_t>(base, 1)) return UINT64_MAX;
    r *= base;
  }
  return r;
}

/// Advances an odometer over [0, values)^n; false after the last assignment.
auto next_assignment(std::vector<Value>& a, int values) -> bool {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (++a[i] < values) return true;
    a[i] = 0;
  }
  return false;
}

void check_values(int values) {
  if (values < 1 || values > 32) throw InvalidInput("value count must be in [1, 32]");
}

}  // namespace

void for_each_scenario(const Model& m, int rounds, int values, const ScenarioOptions& opts,
                       const std::function<void(const Scenario&)>& visit) {
  check_values(values);
  const auto graphs = scenario_graphs(m, rounds, opts);
  const auto total = power(values, m.n());
  if (total == UINT64_MAX || graphs.size() * total > opts.scenario_budget) {
    throw BudgetExceeded("scenario enumeration", opts.scenario_budget);
  }
  for (const auto& g : graphs) {
    Scenario s{g, std::vector<Value>(m.n(), 0)};
    do {
      visit(s);
    } while (next_assignment(s.assignment, values));
  }
}

// ---------------------------------------------------------------------------
// Decision maps

auto DecisionMap::decide(const FlatView& v) const -> Value {
  if (auto it = entries.find(v); it != entries.end()) return it->second;
  return std::countr_zero(v.value_mask());
}

auto to_string(Verdict v) -> std::string {
  switch (v) {
    case Verdict::Sat: return "SAT";
    case Verdict::Unsat: return "UNSAT";
    case Verdict::Budget: return "BUDGET";
  }
  return "UNKNOWN";
}

auto solvability_scope(int rounds, int values) -> std::string {
  return "oblivious decision map applied after exactly " + std::to_string(rounds) +
         " round(s); SAT holds for value domains of size <= " + std::to_string(values) +
         ", UNSAT for every domain of size >= " + std::to_string(values);
}

namespace {

struct VectorHash {
  auto operator()(const std::vector<int>& v) const noexcept -> std::size_t {
    std::size_t h = v.size();
    for (int x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
    return h;
  }
};

/// CNF for "every view decides a value it heard and every constraint uses at
/// most k values". x(view, v) may be true for several v; decoding keeps the
/// smallest, which can only shrink the set of values a constraint uses.
class MapEncoding {
public:
  MapEncoding(const std::vector<std::uint32_t>& domains, const std::vector<std::vector<int>>& cons, int k)
      : first_(domains.size()), domains_(domains) {
    for (std::size_t x = 0; x < domains.size(); ++x) {
      first_[x] = sat_.vars();
      std::vector<int> clause;
      for (auto d = domains[x]; d != 0; d &= d - 1) clause.push_back(detail::pos(sat_.new_var()));
      sat_.add_clause(std::move(clause));
    }
    for (const auto& c : cons) add_constraint(c, k);
  }

  auto solve(std::uint64_t budget) -> Verdict {
    switch (sat_.solve(budget)) {
      case detail::SatSolver::Result::Sat: return Verdict::Sat;
      case detail::SatSolver::Result::Unsat: return Verdict::Unsat;
      default: return Verdict::Budget;
    }
  }

  auto value(int x) const -> Value {
    int var = first_[x];
    for (auto d = domains_[x]; d != 0; d &= d - 1, ++var) {
      if (sat_.model_value(var)) return std::countr_zero(d);
    }
    return std::countr_zero(domains_[x]);
  }

  auto work() const -> std::uint64_t { return sat_.work(); }

private:
  auto x_var(int x, int v) const -> int {
    return first_[x] + std::popcount(domains_[x] & ((1u << v) - 1));
  }

  void add_constraint(const std::vector<int>& c, int k) {
    std::uint32_t used = 0;
    for (int x : c) used |= domains_[x];
    if (std::popcount(used) <= k) return;
    std::vector<int> y(32, -1);
    std::vector<int> ys;
    for (auto d = used; d != 0; d &= d - 1) {
      const int v = std::countr_zero(d);
      y[v] = sat_.new_var();
      ys.push_back(y[v]);
    }
    for (int x : c) {
      for (auto d = domains_[x]; d != 0; d &= d - 1) {
        const int v = std::countr_zero(d);
        sat_.add_clause({detail::neg(x_var(x, v)), detail::pos(y[v])});
      }
    }
    at_most(ys, k);
  }

  /// Direct clauses when few, sequential counter otherwise.
  void at_most(const std::vector<int>& ys, int k) {
    const int u = static_cast<int>(ys.size());
    double subsets = 1;
    for (int i = 0; i <= k; ++i) subsets = subsets * (u - i) / (i + 1);
    if (subsets <= 256) {
      std::vector<int> pick;
      auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(pick.size()) == k + 1) {
          std::vector<int> clause;
          for (int i : pick) clause.push_back(detail::neg(ys[i]));
          sat_.add_clause(std::move(clause));
          return;
        }
        for (int i = start; i < u; ++i) {
          pick.push_back(i);
          self(self, i + 1);
          pick.pop_back();
        }
      };
      rec(rec, 0);
      return;
    }
    std::vector<std::vector<int>> s(u, std::vector<int>(k));
    for (auto& row : s)
      for (auto& v : row) v = sat_.new_var();
    using detail::neg;
    using detail::pos;
    sat_.add_clause({neg(ys[0]), pos(s[0][0])});
    for (int j = 1; j < k; ++j) sat_.add_clause({neg(s[0][j])});
    for (int i = 1; i < u; ++i) {
      sat_.add_clause({neg(ys[i]), pos(s[i][0])});
      sat_.add_clause({neg(s[i - 1][0]), pos(s[i][0])});
      for (int j = 1; j < k; ++j) {
        sat_.add_clause({neg(ys[i]), neg(s[i - 1][j - 1]), pos(s[i][j])});
        sat_.add_clause({neg(s[i - 1][j]), pos(s[i][j])});
      }
      sat_.add_clause({neg(ys[i]), neg(s[i - 1][k - 1])});
    }
  }

  detail::SatSolver sat_;
  std::vector<int> first_;
  const std::vector<std::uint32_t>& domains_;
};

/// Drops constraints whose view set is strictly inside another constraint's.
void drop_dominated(std::vector<std::vector<int>>& cons, int k) {
  std::unordered_set<std::vector<int>, VectorHash> present(cons.begin(), cons.end());
  std::unordered_set<std::vector<int>, VectorHash> dominated;
  for (const auto& c : cons) {
    const int size = static_cast<int>(c.size());
    if (size > 12) continue;
    for (std::uint32_t mask = 1; mask + 1 < (1u << size); ++mask) {
      if (std::popcount(mask) <= k) continue;
      std::vector<int> sub;
      for (int j = 0; j < size; ++j) {
        if ((mask >> j) & 1u) sub.push_back(c[j]);
      }
      if (present.count(sub) != 0) dominated.insert(std::move(sub));
    }
  }
  std::erase_if(cons, [&](const std::vector<int>& c) { return dominated.count(c) != 0; });
}

}  // namespace

auto decide_solvability(const Model& m, int rounds, int k, int values, const SolveOptions& opts) -> SolveResult {
  if (k < 1) throw InvalidInput("agreement bound k must be at least 1");
  check_values(values);
  const int n = m.n();
  SolveResult res;
  std::vector<Digraph> graphs;
  try {
    graphs = scenario_graphs(m, rounds, opts.scenarios);
  } catch (const BudgetExceeded& e) {
    res.budget = e.what();
    return res;
  }
  res.stats.graphs = graphs.size();
  const auto per_graph = power(values, n);
  if (per_graph == UINT64_MAX || graphs.size() * per_graph > opts.scenarios.scenario_budget) {
    res.budget = BudgetExceeded("scenario enumeration", opts.scenarios.scenario_budget).what();
    return res;
  }
  res.stats.scenarios = graphs.size() * per_graph;

  // Only assignments with more than k distinct values can violate agreement.
  std::vector<std::vector<Value>> assignments;
  {
    std::vector<Value> a(n, 0);
    do {
      std::uint32_t mask = 0;
      for (auto v : a) mask |= 1u << v;
      if (std::popcount(mask) > k) assignments.push_back(a);
    } while (next_assignment(a, values));
  }

  std::unordered_map<FlatView, int, FlatViewHash> ids;
  std::vector<FlatView> views;
  std::unordered_set<std::vector<int>, VectorHash> unique;
  std::vector<int> scratch;
  for (const auto& g : graphs) {
    for (const auto& a : assignments) {
      scratch.clear();
      for (ProcessId p = 0; p < n; ++p) {
        const auto view = FlatView::of(g.in(p), a);
        auto [it, fresh] = ids.try_emplace(view, static_cast<int>(views.size()));
        if (fresh) views.push_back(view);
        scratch.push_back(it->second);
      }
      std::sort(scratch.begin(), scratch.end());
      scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
      if (static_cast<int>(scratch.size()) > k) unique.insert(scratch);
    }
  }
  std::vector<std::vector<int>> cons(unique.begin(), unique.end());
  std::sort(cons.begin(), cons.end());
  drop_dominated(cons, k);

  // Renumber the views that still matter.
  std::vector<int> remap(views.size(), -1);
  std::vector<FlatView> used;
  std::vector<std::uint32_t> domains;
  for (auto& c : cons) {
    for (int& x : c) {
      if (remap[x] < 0) {
        remap[x] = static_cast<int>(used.size());
        used.push_back(views[x]);
        domains.push_back(views[x].value_mask());
      }
      x = remap[x];
    }
  }
  res.stats.constraints = cons.size();
  res.stats.variables = used.size();

  MapEncoding enc(domains, cons, k);
  res.verdict = enc.solve(opts.node_budget);
  res.stats.nodes = enc.work();
  if (res.verdict == Verdict::Budget) {
    res.budget = BudgetExceeded("decision map search", opts.node_budget).what();
  } else if (res.verdict == Verdict::Sat) {
    for (std::size_t x = 0; x < used.size(); ++x) res.witness.entries.emplace(used[x], enc.value(static_cast<int>(x)));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Independent replay

namespace {

using Matrix = std::vector<std::vector<bool>>;
using PairView = std::vector<std::pair<int, int>>;

auto compose(const Matrix& a, const Matrix& b) -> Matrix {
  const auto n = a.size();
  Matrix c(n, std::vector<bool>(n, false));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t w = 0; w < n; ++w) {
      if (!a[u][w]) continue;
      for (std::size_t v = 0; v < n; ++v) {
        if (b[w][v]) c[u][v] = true;
      }
    }
  }
  return c;
}

}  // namespace

auto replay_witness(const Model& m, int rounds, int k, int values, const DecisionMap& map, std::uint64_t budget)
    -> ReplayReport {
  const int n = m.n();
  const int edges = n * (n - 1);
  if (edges >= 40 || (std::uint64_t{1} << edges) > budget) throw BudgetExceeded("witness replay", budget);

  // Every graph of the model, by brute force over all edge subsets.
  std::vector<Matrix> members;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << edges); ++bits) {
    Matrix mat(n, std::vector<bool>(n, false));
    std::vector<Edge> list;
    int e = 0;
    for (int u = 0; u < n; ++u) {
      mat[u][u] = true;
      for (int v = 0; v < n; ++v) {
        if (u == v) continue;
        if ((bits >> e) & 1u) {
          mat[u][v] = true;
          list.emplace_back(u, v);
        }
        ++e;
      }
    }
    if (model_contains(m, Digraph(n, list))) members.push_back(std::move(mat));
  }

  std::map<PairView, int> table;
  for (const auto& [view, decision] : map.entries) table.emplace(view.entries(), decision);

  ReplayReport rep;
  std::uint64_t work = 0;
  std::vector<std::size_t> pick(rounds, 0);
  while (true) {
    Matrix g = members[pick[0]];
    for (int j = 1; j < rounds; ++j) g = compose(g, members[pick[j]]);

    std::vector<int> a(n, 0);
    while (true) {
      if (++work > budget) throw BudgetExceeded("witness replay", budget);
      ++rep.scenarios_checked;
      std::vector<int> decided;
      for (int p = 0; p < n; ++p) {
        PairView view;
        for (int q = 0; q < n; ++q) {
          if (g[q][p]) view.emplace_back(q, a[q]);
        }
        int d = 0;
        if (auto it = table.find(view); it != table.end()) {
          d = it->second;
        } else {
          d = view.front().second;
          for (const auto& [q, v] : view) d = std::min(d, v);
        }
        const bool heard = std::any_of(view.begin(), view.end(), [d](const auto& e) { return e.second == d; });
        if (!heard) {
          rep.ok = false;
          rep.failure = "process " + std::to_string(p) + " decides unheard value " + std::to_string(d);
          return rep;
        }
        decided.push_back(d);
      }
      std::sort(decided.begin(), decided.end());
      const auto distinct = std::unique(decided.begin(), decided.end()) - decided.begin();
      if (distinct > k) {
        rep.ok = false;
        std::string assignment;
        for (int v : a) assignment += std::to_string(v);
        rep.failure = std::to_string(distinct) + " distinct decisions under assignment " + assignment;
        return rep;
      }
      int i = n - 1;
      while (i >= 0 && ++a[i] == values) a[i--] = 0;
      if (i < 0) break;
    }

    int j = rounds - 1;
    while (j >= 0 && ++pick[j] == members.size()) pick[j--] = 0;
    if (j < 0) break;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Min-based protocols

auto simulate_min_protocol(const Model& m, int rounds, const MinStrategy& strategy, const ScenarioOptions& opts)
    -> SimulationResult {
  const int n = m.n();
  const bool fixed = strategy.kind == MinStrategy::Kind::MinOfFixedSet;
  if (fixed && strategy.fixed.empty()) throw InvalidInput("the fixed set must be non-empty");

  const auto products = product_set(m, rounds, ProductOptions{opts.graph_budget, false});
  if (fixed) {
    // Products lie below every scenario graph, so domination there suffices.
    for (const auto& g : products) {
      if (!g.dominates(strategy.fixed)) {
        throw DomainError("the fixed set does not dominate scenario graph " + g.to_string());
      }
    }
  }

  SimulationResult res;
  if (std::all_of(products.begin(), products.end(), [](const Digraph& g) { return g.is_complete(); })) {
    res.complete_after_rounds = true;
    res.worst_distinct = 1;
    res.worst_graph = products.front();
    res.worst_assignment.resize(n);
    std::iota(res.worst_assignment.begin(), res.worst_assignment.end(), 0);
    res.graphs_examined = products.size();
    return res;
  }

  const auto graphs = scenario_graphs(m, rounds, opts);
  std::vector<Value> perm(n);
  for (const auto& g : graphs) {
    ++res.graphs_examined;
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::uint32_t decided = 0;
      for (ProcessId p = 0; p < n; ++p) {
        ProcessSet src = g.in(p);
        if (fixed) src = src & strategy.fixed;
        Value best = n;
        src.for_each([&](ProcessId q) { best = std::min(best, perm[q]); });
        decided |= 1u << best;
      }
      const int distinct = std::popcount(decided);
      if (distinct > res.worst_distinct) {
        res.worst_distinct = distinct;
        res.worst_graph = g;
        res.worst_assignment = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return res;
}

}  // namespace kset
