#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ksetlab/digraph.hpp"

namespace kset {

// Combinatorial parameters of a graph or a set of graphs. Every extremum is an
// exact subset enumeration; sets of graphs must be non-empty and share n.

/// Smallest |P| whose out-neighbourhood (self-loops included) is every process.
auto dom(const Digraph& g) -> int;

/// Smallest i such that every i-subset dominates g.
auto edom(const Digraph& g) -> int;
/// Max over the set of the per-graph equal-domination number.
auto edom(std::span<const Digraph> s) -> int;

/// Min over graphs and over i-subsets P of |Out(P)|. Total on i in [1, n].
auto cov(const Digraph& g, int i) -> int;
auto cov(std::span<const Digraph> s, int i) -> int;

/// How the min(i, |S|) graphs of the distributed quantities are drawn.
/// Multiset allows repeats, so any 1..min(i, |S|) distinct graphs count;
/// Distinct requires exactly that many different graphs.
enum class GraphChoice { Multiset, Distinct };

/// Smallest i > 0 such that every i-subset P, joined over every choice of
/// min(i, |S|) graphs of S, reaches every process.
auto edom_over(std::span<const Digraph> s, GraphChoice choice = GraphChoice::Multiset) -> int;

/// Largest non-full |union of Out_G(P)| over i-subsets P and choices of
/// min(i, |S|) graphs. Throws DomainError unless i < edom_over(s).
auto max_cov(std::span<const Digraph> s, int i, GraphChoice choice = GraphChoice::Multiset) -> int;

/// floor((n-i-1)/(max_cov-i)) when max_cov > i, else n-i.
auto m_coeff(std::span<const Digraph> s, int i, GraphChoice choice = GraphChoice::Multiset) -> int;

/// Same coefficient from an already computed max-covering number.
auto m_coeff_from(int n, int i, int max_cov_value) -> int;

struct CoveringSequence {
  std::vector<int> values;
  bool reaches_n = false;
  std::optional<int> rounds_to_n;  ///< 1-based index of the first n
};

/// Covering-numbers sequence of a set (a singleton gives the single-graph version):
/// s_1 = cov_i(S); s_{k+1} = n if s_k >= edom(S), else cov_{s_k}(S).
/// Stops at n, at a fixed point below the threshold, or after max_len terms.
auto covering_sequence(std::span<const Digraph> s, int i, int max_len) -> CoveringSequence;

struct MetricsReport {
  int n = 0;
  std::vector<int> dom;            ///< per graph, in input order
  int edom = 0;
  std::map<int, int> cov;          ///< i in [1, edom)
  int edom_over = 0;
  std::map<int, int> max_cov;      ///< i in [1, edom_over)
  std::map<int, int> m_coeff;      ///< i in [1, edom_over)
  std::vector<std::string> notes;  ///< which graph realised each extremum
};

auto metrics_report(std::span<const Digraph> s, GraphChoice choice = GraphChoice::Multiset) -> MetricsReport;

}  // namespace kset
