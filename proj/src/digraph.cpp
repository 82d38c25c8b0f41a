#include "ksetlab/digraph.hpp"

#include <algorithm>
#include <sstream>

#include "ksetlab/errors.hpp"

namespace kset {

void validate_process_count(int n) {
  if (n < 2 || n > kMaxProcesses) {
    throw InvalidInput("process count " + std::to_string(n) + " outside supported range [2, " +
                       std::to_string(kMaxProcesses) + "]");
  }
}

auto Digraph::identity(int n) -> Digraph {
  validate_process_count(n);
  Digraph g;
  g.n_ = n;
  for (int p = 0; p < n; ++p) g.out_[p] = ProcessSet::singleton(p);
  g.rebuild_in_rows();
  return g;
}

auto Digraph::complete(int n) -> Digraph {
  validate_process_count(n);
  Digraph g;
  g.n_ = n;
  for (int p = 0; p < n; ++p) g.out_[p] = ProcessSet::full(n);
  g.rebuild_in_rows();
  return g;
}

auto Digraph::star(int n, ProcessSet centers) -> Digraph {
  validate_process_count(n);
  if (!ProcessSet::full(n).includes(centers)) throw InvalidInput("star center outside [0,n)");
  Digraph g = identity(n);
  centers.for_each([&](ProcessId c) { g.out_[c] = ProcessSet::full(n); });
  g.rebuild_in_rows();
  return g;
}

auto Digraph::cycle(int n) -> Digraph {
  validate_process_count(n);
  Digraph g = identity(n);
  for (int p = 0; p < n; ++p) g.out_[p].insert((p + 1) % n);
  g.rebuild_in_rows();
  return g;
}

auto Digraph::from_out_rows(int n, std::span<const ProcessSet> rows) -> Digraph {
  validate_process_count(n);
  if (static_cast<int>(rows.size()) != n) throw InvalidInput("row count differs from n");
  Digraph g;
  g.n_ = n;
  for (int p = 0; p < n; ++p) {
    if (!ProcessSet::full(n).includes(rows[p])) throw InvalidInput("row has a vertex outside [0,n)");
    g.out_[p] = rows[p] | ProcessSet::singleton(p);
  }
  g.rebuild_in_rows();
  return g;
}

Digraph::Digraph(int n, std::span<const Edge> edges) {
  validate_process_count(n);
  n_ = n;
  for (int p = 0; p < n; ++p) out_[p] = ProcessSet::singleton(p);
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw InvalidInput("edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") has an endpoint outside [0," + std::to_string(n) + ")");
    }
    out_[u].insert(v);
  }
  rebuild_in_rows();
}

void Digraph::rebuild_in_rows() {
  in_.fill(ProcessSet{});
  for (int u = 0; u < n_; ++u) out_[u].for_each([&](ProcessId v) { in_[v].insert(u); });
}

auto Digraph::out_set(ProcessSet ps) const -> ProcessSet {
  ProcessSet r = ps;
  ps.for_each([&](ProcessId p) { r |= out_[p]; });
  return r;
}

auto Digraph::is_below(const Digraph& other) const -> bool {
  if (n_ != other.n_) throw InvalidInput("graphs have different process counts");
  for (int p = 0; p < n_; ++p) {
    if (!other.out_[p].includes(out_[p])) return false;
  }
  return true;
}

auto Digraph::with_edge(ProcessId u, ProcessId v) const -> Digraph {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) throw InvalidInput("edge endpoint outside [0,n)");
  Digraph g = *this;
  g.out_[u].insert(v);
  g.in_[v].insert(u);
  return g;
}

auto Digraph::permuted(std::span<const int> perm) const -> Digraph {
  Digraph g;
  g.n_ = n_;
  for (int u = 0; u < n_; ++u) {
    ProcessSet row;
    out_[u].for_each([&](ProcessId v) { row.insert(perm[v]); });
    g.out_[perm[u]] = row;
  }
  g.rebuild_in_rows();
  return g;
}

auto Digraph::edges() const -> std::vector<Edge> {
  std::vector<Edge> es;
  for (int u = 0; u < n_; ++u) {
    out_[u].for_each([&](ProcessId v) {
      if (v != u) es.emplace_back(u, v);
    });
  }
  return es;
}

auto Digraph::edge_count() const -> int {
  int c = 0;
  for (int u = 0; u < n_; ++u) c += out_[u].size() - 1;
  return c;
}

auto Digraph::edge_bits() const -> std::uint64_t {
  if (n_ > 8) throw DomainError("edge bit encoding supports n <= 8");
  std::uint64_t bits = 0;
  int idx = 0;
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      if (v == u) continue;
      if (out_[u].contains(v)) bits |= std::uint64_t{1} << idx;
      ++idx;
    }
  }
  return bits;
}

auto Digraph::from_edge_bits(int n, std::uint64_t bits) -> Digraph {
  if (n > 8) throw DomainError("edge bit encoding supports n <= 8");
  Digraph g = identity(n);
  int idx = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (v == u) continue;
      if ((bits >> idx) & 1u) g.out_[u].insert(v);
      ++idx;
    }
  }
  g.rebuild_in_rows();
  return g;
}

auto Digraph::to_string() const -> std::string {
  std::ostringstream os;
  os << "n=" << n_ << " {";
  bool first = true;
  for (const auto& [u, v] : edges()) {
    os << (first ? "" : ", ") << u << "->" << v;
    first = false;
  }
  os << "}";
  return os.str();
}

auto Digraph::operator<=>(const Digraph& o) const -> std::strong_ordering {
  if (auto c = n_ <=> o.n_; c != 0) return c;
  if (out_ == o.out_) return std::strong_ordering::equal;
  const auto a = edges();
  const auto b = o.edges();
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

auto DigraphHash::operator()(const Digraph& g) const noexcept -> std::size_t {
  std::size_t h = static_cast<std::size_t>(g.n());
  for (int p = 0; p < g.n(); ++p) {
    h ^= g.out(p).bits() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

void canonicalize(std::vector<Digraph>& graphs) {
  std::sort(graphs.begin(), graphs.end());
  graphs.erase(std::unique(graphs.begin(), graphs.end()), graphs.end());
}

auto path_product(const Digraph& g, const Digraph& h) -> Digraph {
  if (g.n() != h.n()) throw InvalidInput("path product of graphs with different process counts");
  std::array<ProcessSet, kMaxProcesses> rows{};
  for (int u = 0; u < g.n(); ++u) {
    ProcessSet row;
    g.out(u).for_each([&](ProcessId w) { row |= h.out(w); });
    rows[u] = row;
  }
  return Digraph::from_out_rows(g.n(), std::span<const ProcessSet>(rows.data(), g.n()));
}

auto path_product(std::span<const Digraph> factors) -> Digraph {
  if (factors.empty()) throw InvalidInput("path product of an empty sequence");
  Digraph acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = path_product(acc, factors[i]);
  return acc;
}

}  // namespace kset
