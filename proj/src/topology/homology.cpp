#include "ksetlab/topology/homology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "ksetlab/errors.hpp"

namespace kset::topology {

namespace {

using Face = std::vector<std::uint32_t>;

struct FaceHash {
  auto operator()(const Face& f) const noexcept -> std::size_t {
    std::size_t h = f.size();
    for (auto x : f) h = h * 0x100000001b3ULL ^ x;
    return h;
  }
};

/// Faces of each dimension 0..max_dim, indexed, vertex ids sorted.
struct FaceTable {
  std::vector<std::vector<Face>> by_dim;
  std::vector<std::unordered_map<Face, std::uint32_t, FaceHash>> index;
};

auto vertex_ids(const Complex& c) -> std::vector<Face> {
  const auto verts = c.vertices();
  std::vector<Face> facets;
  facets.reserve(c.facets().size());
  for (const auto& f : c.facets()) {
    Face ids;
    for (const auto& v : f.vertices()) {
      ids.push_back(static_cast<std::uint32_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin()));
    }
    std::sort(ids.begin(), ids.end());
    facets.push_back(std::move(ids));
  }
  return facets;
}

auto build_faces(const Complex& c, int max_dim, std::uint64_t budget) -> FaceTable {
  FaceTable t;
  t.by_dim.resize(max_dim + 1);
  t.index.resize(max_dim + 1);
  std::uint64_t total = 0;
  for (const auto& facet : vertex_ids(c)) {
    const int k = static_cast<int>(facet.size());
    // Enumerate non-empty subsets of the facet with size <= max_dim + 1.
    const std::uint32_t limit = k >= 32 ? ~0u : (1u << k);
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
      const int sz = std::popcount(mask);
      if (sz > max_dim + 1) continue;
      Face face;
      face.reserve(sz);
      for (int j = 0; j < k; ++j) {
        if ((mask >> j) & 1u) face.push_back(facet[j]);
      }
      auto& idx = t.index[sz - 1];
      if (idx.try_emplace(face, static_cast<std::uint32_t>(t.by_dim[sz - 1].size())).second) {
        t.by_dim[sz - 1].push_back(std::move(face));
        if (++total > budget) throw BudgetExceeded("simplicial face enumeration", budget);
      }
    }
  }
  return t;
}

using Column = std::vector<std::pair<std::uint32_t, std::int64_t>>;

template <typename Int>
using SparseColumn = std::vector<std::pair<std::uint32_t, Int>>;

auto checked_mul(std::int64_t a, std::int64_t b) -> std::optional<std::int64_t> {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
  return r;
}

auto checked_sub(std::int64_t a, std::int64_t b) -> std::optional<std::int64_t> {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) return std::nullopt;
  return r;
}

struct Overflow {};

/// a*x - b*y entrywise; both sorted by row.
template <typename Int>
auto combine(const SparseColumn<Int>& x, const Int& a, const SparseColumn<Int>& y, const Int& b)
    -> SparseColumn<Int> {
  SparseColumn<Int> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  auto mul = [](const Int& p, const Int& q) -> Int {
    if constexpr (std::is_same_v<Int, std::int64_t>) {
      auto r = checked_mul(p, q);
      if (!r) throw Overflow{};
      return *r;
    } else {
      return p * q;
    }
  };
  auto sub = [](const Int& p, const Int& q) -> Int {
    if constexpr (std::is_same_v<Int, std::int64_t>) {
      auto r = checked_sub(p, q);
      if (!r) throw Overflow{};
      return *r;
    } else {
      return p - q;
    }
  };
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, mul(a, x[i].second));
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, sub(Int{0}, mul(b, y[j].second)));
      ++j;
    } else {
      Int v = sub(mul(a, x[i].second), mul(b, y[j].second));
      if (v != 0) out.emplace_back(x[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

template <typename Int>
void normalise(SparseColumn<Int>& col) {
  if (col.empty()) return;
  Int g = 0;
  for (const auto& [r, v] : col) {
    using std::gcd;
    if constexpr (std::is_same_v<Int, std::int64_t>) {
      g = std::gcd(g, v < 0 ? -v : v);
    } else {
      g = boost::multiprecision::gcd(g, Int(abs(v)));
    }
    if (g == 1) return;
  }
  if (g > 1) {
    for (auto& [r, v] : col) v /= g;
  }
}

/// Column reduction on the lowest (largest) row index. Rank = number of pivots.
template <typename Int>
auto eliminate(const std::vector<Column>& columns) -> int {
  std::unordered_map<std::uint32_t, SparseColumn<Int>> pivots;
  int rank = 0;
  for (const auto& raw : columns) {
    SparseColumn<Int> col;
    col.reserve(raw.size());
    for (const auto& [r, v] : raw) {
      if (v != 0) col.emplace_back(r, Int(v));
    }
    std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    while (!col.empty()) {
      const auto low = col.back().first;
      auto it = pivots.find(low);
      if (it == pivots.end()) break;
      const Int a = it->second.back().second;
      const Int b = col.back().second;
      col = combine(col, a, it->second, b);
      normalise(col);
    }
    if (!col.empty()) {
      pivots.emplace(col.back().first, std::move(col));
      ++rank;
    }
  }
  return rank;
}

auto boundary_columns(const FaceTable& t, int dim) -> std::vector<Column> {
  std::vector<Column> cols;
  cols.reserve(t.by_dim[dim].size());
  for (const auto& face : t.by_dim[dim]) {
    Column col;
    for (std::size_t j = 0; j < face.size(); ++j) {
      Face sub;
      sub.reserve(face.size() - 1);
      for (std::size_t k = 0; k < face.size(); ++k) {
        if (k != j) sub.push_back(face[k]);
      }
      col.emplace_back(t.index[dim - 1].at(sub), (j % 2 == 0) ? 1 : -1);
    }
    cols.push_back(std::move(col));
  }
  return cols;
}

}  // namespace

auto exact_rank(const std::vector<Column>& columns) -> int {
  try {
    return eliminate<std::int64_t>(columns);
  } catch (const Overflow&) {
    return eliminate<boost::multiprecision::cpp_int>(columns);
  }
}

auto face_counts(const Complex& c, const HomologyOptions& opts) -> std::vector<std::uint64_t> {
  const auto t = build_faces(c, std::max(0, c.dimension()), opts.simplex_budget);
  std::vector<std::uint64_t> out;
  if (c.empty()) return out;
  for (const auto& fs : t.by_dim) out.push_back(fs.size());
  return out;
}

auto reduced_homology_ranks(const Complex& c, int up_to, const HomologyOptions& opts) -> std::vector<int> {
  if (up_to < 0) return {};
  std::vector<int> ranks(up_to + 1, 0);
  if (c.empty()) return ranks;
  const int top = std::min(c.dimension(), up_to + 1);
  const auto t = build_faces(c, top, opts.simplex_budget);

  // boundary_rank[d] = rank of d -> d-1; the augmentation gives rank 1 at d = 0.
  std::vector<int> boundary_rank(top + 2, 0);
  boundary_rank[0] = 1;
  for (int d = 1; d <= top; ++d) boundary_rank[d] = exact_rank(boundary_columns(t, d));

  for (int d = 0; d <= up_to; ++d) {
    if (d > top) break;
    const auto faces = static_cast<int>(t.by_dim[d].size());
    ranks[d] = faces - boundary_rank[d] - (d + 1 <= top ? boundary_rank[d + 1] : 0);
  }
  return ranks;
}

}  // namespace kset::topology
