#pragma once

// Brute-force reference implementations used by the test suites. They work on
// plain boolean matrices and exhaustive enumeration, sharing nothing with the
// library beyond reading edges out of a Digraph.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ksetlab/digraph.hpp"
#include "ksetlab/json_io.hpp"
#include "ksetlab/model.hpp"

namespace oracle {

using Mat = std::vector<std::vector<bool>>;

inline auto fixture(const std::string& name) -> std::string { return std::string(KSETLAB_TEST_DATA) + "/" + name; }

inline auto load_model(const std::string& name) -> kset::Model {
  return kset::json::model_from_json(kset::json::read_file(fixture(name)));
}

inline auto mat(const kset::Digraph& g) -> Mat {
  const int n = g.n();
  Mat m(n, std::vector<bool>(n, false));
  for (int u = 0; u < n; ++u) {
    m[u][u] = true;
    for (int v = 0; v < n; ++v) {
      if (g.has_edge(u, v)) m[u][v] = true;
    }
  }
  return m;
}

inline auto to_graph(const Mat& m) -> kset::Digraph {
  std::vector<kset::Edge> e;
  for (int u = 0; u < static_cast<int>(m.size()); ++u) {
    for (int v = 0; v < static_cast<int>(m.size()); ++v) {
      if (u != v && m[u][v]) e.emplace_back(u, v);
    }
  }
  return kset::Digraph(static_cast<int>(m.size()), e);
}

/// u -> w iff u -> v in a and v -> w in b for some v.
inline auto product(const Mat& a, const Mat& b) -> Mat {
  const auto n = a.size();
  Mat c(n, std::vector<bool>(n, false));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (a[u][v])
        for (std::size_t w = 0; w < n; ++w)
          if (b[v][w]) c[u][w] = true;
  return c;
}

/// k-element subsets of [0, n) in lexicographic order.
inline auto subsets_of_size(int n, int k) -> std::vector<std::vector<int>> {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int x = start; x <= n - (k - static_cast<int>(cur.size())); ++x) {
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline auto reach(const Mat& g, const std::vector<int>& p) -> std::vector<bool> {
  std::vector<bool> hit(g.size(), false);
  for (int u : p)
    for (std::size_t v = 0; v < g.size(); ++v)
      if (g[u][v]) hit[v] = true;
  return hit;
}

inline auto count(const std::vector<bool>& b) -> int { return static_cast<int>(std::count(b.begin(), b.end(), true)); }

inline auto dom(const Mat& g) -> int {
  const int n = static_cast<int>(g.size());
  for (int k = 1; k <= n; ++k)
    for (const auto& p : subsets_of_size(n, k))
      if (count(reach(g, p)) == n) return k;
  return n;
}

inline auto edom(const std::vector<Mat>& s) -> int {
  const int n = static_cast<int>(s.front().size());
  for (int k = 1; k <= n; ++k) {
    bool ok = true;
    for (const auto& p : subsets_of_size(n, k))
      for (const auto& g : s)
        if (count(reach(g, p)) != n) ok = false;
    if (ok) return k;
  }
  return n;
}

inline auto cov(const std::vector<Mat>& s, int i) -> int {
  const int n = static_cast<int>(s.front().size());
  int best = n;
  for (const auto& p : subsets_of_size(n, i))
    for (const auto& g : s) best = std::min(best, count(reach(g, p)));
  return best;
}

/// Graph choices admissible for a set of size i: every non-empty multiset of
/// at most i graphs, or every subset of exactly min(i, |S|) graphs.
inline auto choices(int graphs, int i, bool distinct) -> std::vector<std::vector<int>> {
  std::vector<std::vector<int>> out;
  if (distinct) {
    for (const auto& c : subsets_of_size(graphs, std::min(i, graphs))) out.push_back(c);
    return out;
  }
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (!cur.empty()) out.push_back(cur);
    if (static_cast<int>(cur.size()) == i) return;
    for (int g = start; g < graphs; ++g) {
      cur.push_back(g);
      self(self, g);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline auto union_reach(const std::vector<Mat>& s, const std::vector<int>& choice, const std::vector<int>& p) -> int {
  std::vector<bool> hit(s.front().size(), false);
  for (int g : choice) {
    const auto r = reach(s[g], p);
    for (std::size_t v = 0; v < hit.size(); ++v) hit[v] = hit[v] || r[v];
  }
  return count(hit);
}

inline auto edom_over(const std::vector<Mat>& s, bool distinct = false) -> int {
  const int n = static_cast<int>(s.front().size());
  const int m = static_cast<int>(s.size());
  for (int i = 1; i <= n; ++i) {
    bool ok = true;
    const auto cs = choices(m, i, distinct);
    for (const auto& p : subsets_of_size(n, i))
      for (const auto& c : cs)
        if (union_reach(s, c, p) != n) ok = false;
    if (ok) return i;
  }
  return n;
}

inline auto max_cov(const std::vector<Mat>& s, int i, bool distinct = false) -> int {
  const int n = static_cast<int>(s.front().size());
  int best = -1;
  const auto cs = choices(static_cast<int>(s.size()), i, distinct);
  for (const auto& p : subsets_of_size(n, i))
    for (const auto& c : cs) {
      const int u = union_reach(s, c, p);
      if (u < n) best = std::max(best, u);
    }
  return best;
}

inline auto mats(const std::vector<kset::Digraph>& gs) -> std::vector<Mat> {
  std::vector<Mat> out;
  for (const auto& g : gs) out.push_back(mat(g));
  return out;
}

/// Every relabelling of every generator, deduplicated.
inline auto relabellings(const std::vector<kset::Digraph>& gens) -> std::set<Mat> {
  std::set<Mat> out;
  for (const auto& g : gens) {
    const auto m = mat(g);
    std::vector<int> perm(m.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Mat r(m.size(), std::vector<bool>(m.size(), false));
      for (std::size_t u = 0; u < m.size(); ++u)
        for (std::size_t v = 0; v < m.size(); ++v) r[perm[u]][perm[v]] = m[u][v];
      out.insert(r);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

inline auto all_digraphs(int n) -> std::vector<kset::Digraph> {
  std::vector<kset::Edge> slots;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) slots.emplace_back(u, v);
  std::vector<kset::Digraph> out;
  for (unsigned long mask = 0; mask < (1ul << slots.size()); ++mask) {
    std::vector<kset::Edge> e;
    for (std::size_t b = 0; b < slots.size(); ++b)
      if (mask >> b & 1ul) e.push_back(slots[b]);
    out.emplace_back(n, e);
  }
  return out;
}

inline auto random_mat(std::mt19937_64& rng, int n, double p) -> Mat {
  std::bernoulli_distribution coin(p);
  Mat m(n, std::vector<bool>(n, false));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) m[u][v] = u == v || coin(rng);
  return m;
}

/// Adds random edges on top of g.
inline auto random_superset(std::mt19937_64& rng, const Mat& g, double p) -> Mat {
  std::bernoulli_distribution coin(p);
  Mat m = g;
  for (auto& row : m)
    for (std::size_t v = 0; v < row.size(); ++v) row[v] = row[v] || coin(rng);
  return m;
}

}  // namespace oracle
