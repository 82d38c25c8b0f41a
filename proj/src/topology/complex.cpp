#include "ksetlab/topology/complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "ksetlab/errors.hpp"

namespace kset::topology {

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (vertices_[i].color == vertices_[i - 1].color) {
      throw InvalidInput("simplex has two vertices of color " + std::to_string(vertices_[i].color));
    }
  }
}

auto Simplex::colors() const -> std::vector<Color> {
  std::vector<Color> out;
  out.reserve(vertices_.size());
  for (const auto& v : vertices_) out.push_back(v.color);
  return out;
}

auto Simplex::view_of(Color c) const -> const View* {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), c,
                             [](const Vertex& v, Color col) { return v.color < col; });
  if (it == vertices_.end() || it->color != c) return nullptr;
  return &it->view;
}

auto Simplex::includes(const Simplex& face) const -> bool {
  return std::includes(vertices_.begin(), vertices_.end(), face.vertices_.begin(), face.vertices_.end());
}

auto Simplex::intersect(const Simplex& other) const -> Simplex {
  Simplex out;
  std::set_intersection(vertices_.begin(), vertices_.end(), other.vertices_.begin(),
                        other.vertices_.end(), std::back_inserter(out.vertices_));
  return out;
}

auto Simplex::to_string() const -> std::string {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& v : vertices_) {
    os << (first ? "" : " ") << "(" << v.color << "," << view_to_string(v.view) << ")";
    first = false;
  }
  os << "]";
  return os.str();
}

namespace {

/// Sorts, deduplicates and keeps only inclusion-maximal non-empty simplices.
auto maximal_only(std::vector<Simplex> simplices) -> std::vector<Simplex> {
  std::erase_if(simplices, [](const Simplex& s) { return s.empty(); });
  std::sort(simplices.begin(), simplices.end());
  simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());

  std::size_t max_size = 0;
  std::size_t min_size = SIZE_MAX;
  for (const auto& s : simplices) {
    max_size = std::max(max_size, s.size());
    min_size = std::min(min_size, s.size());
  }
  if (simplices.empty() || max_size == min_size) return simplices;

  std::vector<const Simplex*> by_size;
  for (const auto& s : simplices) by_size.push_back(&s);
  std::stable_sort(by_size.begin(), by_size.end(),
                   [](const Simplex* a, const Simplex* b) { return a->size() > b->size(); });
  std::vector<const Simplex*> kept;
  for (const Simplex* s : by_size) {
    const bool covered = std::any_of(kept.begin(), kept.end(), [&](const Simplex* k) {
      return k->size() > s->size() && k->includes(*s);
    });
    if (!covered) kept.push_back(s);
  }
  std::vector<Simplex> out;
  out.reserve(kept.size());
  for (const Simplex* s : kept) out.push_back(*s);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Complex::Complex(std::vector<Simplex> simplices) : facets_(maximal_only(std::move(simplices))) {}

auto Complex::from_sorted_facets(std::vector<Simplex> facets) -> Complex {
  Complex c;
  c.facets_ = std::move(facets);
  return c;
}

auto Complex::dimension() const -> int {
  int d = -1;
  for (const auto& f : facets_) d = std::max(d, f.dimension());
  return d;
}

auto Complex::is_pure() const -> bool {
  if (facets_.empty()) return true;
  const auto d = facets_.front().dimension();
  return std::all_of(facets_.begin(), facets_.end(), [&](const Simplex& f) { return f.dimension() == d; });
}

auto Complex::contains(const Simplex& s) const -> bool {
  return std::any_of(facets_.begin(), facets_.end(), [&](const Simplex& f) { return f.includes(s); });
}

auto Complex::vertices() const -> std::vector<Vertex> {
  std::set<Vertex> vs;
  for (const auto& f : facets_) vs.insert(f.vertices().begin(), f.vertices().end());
  return {vs.begin(), vs.end()};
}

auto Complex::to_string() const -> std::string {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& f : facets_) {
    os << (first ? "" : ", ") << f.to_string();
    first = false;
  }
  os << "}";
  return os.str();
}

auto intersect(const Complex& a, const Complex& b) -> Complex {
  std::vector<Simplex> pieces;
  for (const auto& fa : a.facets()) {
    for (const auto& fb : b.facets()) {
      auto s = fa.intersect(fb);
      if (!s.empty()) pieces.push_back(std::move(s));
    }
  }
  return Complex(std::move(pieces));
}

auto unite(const Complex& a, const Complex& b) -> Complex {
  std::vector<Simplex> all = a.facets();
  all.insert(all.end(), b.facets().begin(), b.facets().end());
  return Complex(std::move(all));
}

auto unite(std::span<const Complex> parts) -> Complex {
  std::vector<Simplex> all;
  for (const auto& c : parts) all.insert(all.end(), c.facets().begin(), c.facets().end());
  return Complex(std::move(all));
}

auto intersect(std::span<const Complex> parts) -> Complex {
  if (parts.empty()) return {};
  Complex acc = parts.front();
  for (std::size_t i = 1; i < parts.size() && !acc.empty(); ++i) acc = intersect(acc, parts[i]);
  return acc;
}

auto simplex_complex(const Simplex& s) -> Complex { return Complex(std::vector<Simplex>{s}); }

auto nerve(std::span<const Complex> cover) -> Complex {
  std::map<Vertex, std::vector<int>> members;
  for (int i = 0; i < static_cast<int>(cover.size()); ++i) {
    for (const auto& v : cover[i].vertices()) members[v].push_back(i);
  }
  std::vector<Simplex> simplices;
  for (const auto& [v, idx] : members) {
    std::vector<Vertex> vs;
    for (int i : idx) vs.push_back(Vertex{i, Label{i}});
    simplices.emplace_back(std::move(vs));
  }
  return Complex(std::move(simplices));
}

auto is_full_simplex(const Complex& c) -> bool { return c.facets().size() == 1; }

}  // namespace kset::topology
