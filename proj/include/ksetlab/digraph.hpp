#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ksetlab/process_set.hpp"

namespace kset {

using Edge = std::pair<ProcessId, ProcessId>;

/// Communication graph of one round on processes [0, n).
///
/// Every vertex carries a self-loop; construction adds missing loops, so a
/// Digraph value always satisfies the invariant. Rows are stored both ways
/// (out- and in-neighbourhoods) for constant-time Out_G(p) and In_G(p).
class Digraph {
public:
  /// Graph with only the n self-loops.
  static auto identity(int n) -> Digraph;
  static auto complete(int n) -> Digraph;
  /// Edges S x [0,n) for a set of centers S.
  static auto star(int n, ProcessSet centers) -> Digraph;
  /// Directed cycle i -> i+1 (mod n), plus loops.
  static auto cycle(int n) -> Digraph;
  static auto from_out_rows(int n, std::span<const ProcessSet> rows) -> Digraph;

  Digraph(int n, std::span<const Edge> edges);
  Digraph(int n, std::initializer_list<Edge> edges)
      : Digraph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  auto n() const -> int { return n_; }
  auto out(ProcessId p) const -> ProcessSet { return out_[p]; }
  auto in(ProcessId p) const -> ProcessSet { return in_[p]; }
  auto has_edge(ProcessId u, ProcessId v) const -> bool { return out_[u].contains(v); }
  auto all() const -> ProcessSet { return ProcessSet::full(n_); }

  /// Union of Out_G(p) over p in ps. Always includes ps.
  auto out_set(ProcessSet ps) const -> ProcessSet;
  auto dominates(ProcessSet ps) const -> bool { return out_set(ps) == all(); }

  /// True iff E(other) contains E(*this), i.e. other lies in the upward closure.
  auto is_below(const Digraph& other) const -> bool;

  auto with_edge(ProcessId u, ProcessId v) const -> Digraph;
  /// Image under the vertex relabelling p -> perm[p].
  auto permuted(std::span<const int> perm) const -> Digraph;

  /// Non-loop edges, sorted.
  auto edges() const -> std::vector<Edge>;
  auto edge_count() const -> int;
  auto is_complete() const -> bool { return edge_count() == n_ * (n_ - 1); }

  /// Bit index u*(n-1)+j over the n(n-1) possible non-loop edges.
  auto edge_bits() const -> std::uint64_t;
  static auto from_edge_bits(int n, std::uint64_t bits) -> Digraph;

  auto to_string() const -> std::string;

  auto operator==(const Digraph& o) const -> bool { return n_ == o.n_ && out_ == o.out_; }
  /// Canonical order: by n, then lexicographic on the sorted non-loop edge list.
  auto operator<=>(const Digraph& o) const -> std::strong_ordering;

private:
  Digraph() = default;
  void rebuild_in_rows();

  int n_ = 0;
  std::array<ProcessSet, kMaxProcesses> out_{};
  std::array<ProcessSet, kMaxProcesses> in_{};
};

struct DigraphHash {
  auto operator()(const Digraph& g) const noexcept -> std::size_t;
};

void validate_process_count(int n);

/// Sorts by canonical order and removes duplicates.
void canonicalize(std::vector<Digraph>& graphs);

/// Relation composition: (u,v) is an edge iff some w has u->w in g and w->v in h.
auto path_product(const Digraph& g, const Digraph& h) -> Digraph;

/// Product of a non-empty sequence, left to right.
auto path_product(std::span<const Digraph> factors) -> Digraph;

}  // namespace kset
