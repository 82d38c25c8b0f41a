#include "ksetlab/metrics.hpp"

#include <algorithm>

#include "ksetlab/errors.hpp"

namespace kset {

namespace {

auto common_n(std::span<const Digraph> s) -> int {
  if (s.empty()) throw InvalidInput("metrics need a non-empty set of graphs");
  const int n = s.front().n();
  for (const auto& g : s) {
    if (g.n() != n) throw InvalidInput("graphs have different process counts");
  }
  return n;
}

void check_size(int n, int i) {
  if (i < 1 || i > n) throw DomainError("subset size " + std::to_string(i) + " outside [1, n]");
}

/// Index of the canonically-first graph among those where better(value, best) first holds.
template <typename Value, typename Better>
auto extremum(std::span<const Digraph> s, Value&& value, Better&& better) -> std::pair<int, std::size_t> {
  std::vector<std::size_t> order(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return s[a] < s[b]; });
  int best = value(s[order.front()]);
  std::size_t at = order.front();
  for (auto k : order) {
    const int v = value(s[k]);
    if (better(v, best)) {
      best = v;
      at = k;
    }
  }
  return {best, at};
}

/// Union sizes of c sets chosen among `sets`; returns the largest.
auto best_union_of(const std::vector<ProcessSet>& sets, int c) -> int {
  // Only maximal sets matter: replacing a set by a superset never shrinks a union.
  std::vector<ProcessSet> maximal;
  for (std::size_t a = 0; a < sets.size(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < sets.size() && !dominated; ++b) {
      if (a == b) continue;
      dominated = sets[b].includes(sets[a]) && (sets[a] != sets[b] || b < a);
    }
    if (!dominated) maximal.push_back(sets[a]);
  }
  if (static_cast<int>(maximal.size()) <= c) {
    ProcessSet u;
    for (auto x : maximal) u |= x;
    return u.size();
  }
  int best = 0;
  std::vector<int> pick(c);
  const int m = static_cast<int>(maximal.size());
  for (int k = 0; k < c; ++k) pick[k] = k;
  while (true) {
    ProcessSet u;
    for (int k : pick) u |= maximal[k];
    best = std::max(best, u.size());
    int k = c - 1;
    while (k >= 0 && pick[k] == m - c + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int j = k + 1; j < c; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

}  // namespace

auto dom(const Digraph& g) -> int {
  const int n = g.n();
  for (int i = 1; i <= n; ++i) {
    bool found = false;
    for_each_subset_of_size(n, i, [&](ProcessSet p) {
      found = g.dominates(p);
      return !found;
    });
    if (found) return i;
  }
  return n;
}

auto edom(const Digraph& g) -> int {
  const int n = g.n();
  for (int i = n - 1; i >= 1; --i) {
    bool all = true;
    for_each_subset_of_size(n, i, [&](ProcessSet p) {
      all = g.dominates(p);
      return all;
    });
    if (!all) return i + 1;
  }
  return 1;
}

auto edom(std::span<const Digraph> s) -> int {
  common_n(s);
  int best = 0;
  for (const auto& g : s) best = std::max(best, edom(g));
  return best;
}

auto cov(const Digraph& g, int i) -> int {
  check_size(g.n(), i);
  int best = g.n();
  for_each_subset_of_size(g.n(), i, [&](ProcessSet p) {
    best = std::min(best, g.out_set(p).size());
    return best > i;
  });
  return best;
}

auto cov(std::span<const Digraph> s, int i) -> int {
  const int n = common_n(s);
  check_size(n, i);
  int best = n;
  for (const auto& g : s) best = std::min(best, cov(g, i));
  return best;
}

namespace {

/// Graphs that must miss a process for a choice to miss it.
auto needed(GraphChoice choice, int c) -> int { return choice == GraphChoice::Multiset ? 1 : c; }

/// True iff some admissible choice of graphs leaves P short of every process.
auto has_non_dominating_choice(std::span<const Digraph> s, ProcessSet p, int c, int n) -> bool {
  for (int v = 0; v < n; ++v) {
    if (p.contains(v)) continue;
    int missing = 0;
    for (const auto& g : s) {
      if (!g.out_set(p).contains(v)) ++missing;
    }
    if (missing >= c) return true;
  }
  return false;
}

}  // namespace

auto edom_over(std::span<const Digraph> s, GraphChoice choice) -> int {
  const int n = common_n(s);
  const int size = static_cast<int>(s.size());
  for (int i = 1; i <= n; ++i) {
    const int c = needed(choice, std::min(i, size));
    bool ok = true;
    for_each_subset_of_size(n, i, [&](ProcessSet p) {
      ok = !has_non_dominating_choice(s, p, c, n);
      return ok;
    });
    if (ok) return i;
  }
  return n;
}

auto max_cov(std::span<const Digraph> s, int i, GraphChoice choice) -> int {
  const int n = common_n(s);
  const int over = edom_over(s, choice);
  if (i < 1 || i >= over) {
    throw DomainError("max-covering number " + std::to_string(i) +
                      " is defined only for i in [1, " + std::to_string(over) + ")");
  }
  const int c = std::min(i, static_cast<int>(s.size()));
  int best = -1;
  for_each_subset_of_size(n, i, [&](ProcessSet p) {
    std::vector<ProcessSet> outs;
    outs.reserve(s.size());
    for (const auto& g : s) outs.push_back(g.out_set(p));
    for (int v = 0; v < n && best < n - 1; ++v) {
      if (p.contains(v)) continue;
      std::vector<ProcessSet> avoiding;
      for (auto o : outs) {
        if (!o.contains(v)) avoiding.push_back(o);
      }
      if (static_cast<int>(avoiding.size()) < needed(choice, c)) continue;
      std::sort(avoiding.begin(), avoiding.end());
      avoiding.erase(std::unique(avoiding.begin(), avoiding.end()), avoiding.end());
      best = std::max(best, best_union_of(avoiding, c));
    }
    return best < n - 1;
  });
  if (best < 0) throw DomainError("no non-dominating choice exists for i = " + std::to_string(i));
  return best;
}

auto m_coeff_from(int n, int i, int max_cov_value) -> int {
  if (max_cov_value > i) return (n - i - 1) / (max_cov_value - i);
  return n - i;
}

auto m_coeff(std::span<const Digraph> s, int i, GraphChoice choice) -> int {
  const int n = common_n(s);
  return m_coeff_from(n, i, max_cov(s, i, choice));
}

auto covering_sequence(std::span<const Digraph> s, int i, int max_len) -> CoveringSequence {
  const int n = common_n(s);
  check_size(n, i);
  if (max_len < 1) throw InvalidInput("covering sequence length must be at least 1");
  const int threshold = edom(s);
  CoveringSequence seq;
  int current = cov(s, i);
  seq.values.push_back(current);
  while (current != n && static_cast<int>(seq.values.size()) < max_len) {
    const int next = current >= threshold ? n : cov(s, current);
    if (next == current) break;  // fixed point below the threshold
    seq.values.push_back(next);
    current = next;
  }
  if (current == n) {
    seq.reaches_n = true;
    seq.rounds_to_n = static_cast<int>(seq.values.size());
  }
  return seq;
}

auto metrics_report(std::span<const Digraph> s, GraphChoice choice) -> MetricsReport {
  MetricsReport r;
  r.n = common_n(s);
  for (const auto& g : s) r.dom.push_back(dom(g));

  const auto [edom_value, edom_at] =
      extremum(s, [](const Digraph& g) { return edom(g); }, [](int v, int b) { return v > b; });
  r.edom = edom_value;
  r.notes.push_back("edom realised by " + s[edom_at].to_string());

  for (int i = 1; i < r.edom; ++i) {
    const auto [c, at] = extremum(s, [i](const Digraph& g) { return cov(g, i); },
                                  [](int v, int b) { return v < b; });
    r.cov[i] = c;
    r.notes.push_back("cov_" + std::to_string(i) + " realised by " + s[at].to_string());
  }

  r.edom_over = edom_over(s, choice);
  for (int i = 1; i < r.edom_over; ++i) {
    const int mc = max_cov(s, i, choice);
    r.max_cov[i] = mc;
    r.m_coeff[i] = m_coeff_from(r.n, i, mc);
  }
  return r;
}

}  // namespace kset
