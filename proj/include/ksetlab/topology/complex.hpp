#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ksetlab/views.hpp"

namespace kset::topology {

using Color = int;

struct Vertex {
  Color color = 0;
  View view;

  auto operator==(const Vertex&) const -> bool = default;
  auto operator<=>(const Vertex& o) const -> std::strong_ordering {
    if (auto c = color <=> o.color; c != 0) return c;
    if (view == o.view) return std::strong_ordering::equal;
    return view < o.view ? std::strong_ordering::less : std::strong_ordering::greater;
  }
};

/// Colored simplex: a set of vertices with at most one vertex per color.
/// Vertices are kept sorted by color.
class Simplex {
public:
  Simplex() = default;
  explicit Simplex(std::vector<Vertex> vertices);
  Simplex(std::initializer_list<Vertex> vertices) : Simplex(std::vector<Vertex>(vertices)) {}

  auto vertices() const -> const std::vector<Vertex>& { return vertices_; }
  auto size() const -> std::size_t { return vertices_.size(); }
  auto empty() const -> bool { return vertices_.empty(); }
  auto dimension() const -> int { return static_cast<int>(vertices_.size()) - 1; }

  auto colors() const -> std::vector<Color>;
  auto view_of(Color c) const -> const View*;

  auto includes(const Simplex& face) const -> bool;
  auto intersect(const Simplex& other) const -> Simplex;

  auto to_string() const -> std::string;

  auto operator==(const Simplex&) const -> bool = default;
  auto operator<=>(const Simplex&) const = default;

private:
  std::vector<Vertex> vertices_;
};

/// Simplicial complex stored by its facets; every face of a facet is a member.
/// Facets are deduplicated, maximal and sorted, so equality is structural.
class Complex {
public:
  Complex() = default;
  explicit Complex(std::vector<Simplex> simplices);

  static auto from_sorted_facets(std::vector<Simplex> facets) -> Complex;

  auto facets() const -> const std::vector<Simplex>& { return facets_; }
  auto empty() const -> bool { return facets_.empty(); }
  /// -1 for the empty complex.
  auto dimension() const -> int;
  auto is_pure() const -> bool;
  auto contains(const Simplex& s) const -> bool;
  auto vertices() const -> std::vector<Vertex>;

  auto to_string() const -> std::string;

  auto operator==(const Complex&) const -> bool = default;

private:
  std::vector<Simplex> facets_;
};

auto intersect(const Complex& a, const Complex& b) -> Complex;
auto unite(const Complex& a, const Complex& b) -> Complex;
auto unite(std::span<const Complex> parts) -> Complex;
auto intersect(std::span<const Complex> parts) -> Complex;

/// Whole simplex plus all faces, as a complex with one facet.
auto simplex_complex(const Simplex& s) -> Complex;

/// Nerve of a cover: vertex i (color i, label i) per element, and a simplex on
/// every index set whose members share at least one vertex.
auto nerve(std::span<const Complex> cover) -> Complex;

/// True iff the complex is the full simplex on its vertex set.
auto is_full_simplex(const Complex& c) -> bool;

}  // namespace kset::topology
