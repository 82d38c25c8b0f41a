#pragma once

#include <cstdint>
#include <vector>

#include "ksetlab/digraph.hpp"
#include "ksetlab/model.hpp"
#include "ksetlab/topology/complex.hpp"

namespace kset::topology {

/// Per-color families of admissible views. The induced complex has one facet
/// per choice of one view for every color with a non-empty family; colors with
/// empty families drop out.
class PseudosphereSpec {
public:
  PseudosphereSpec(int n, std::vector<std::vector<View>> families);

  auto n() const -> int { return n_; }
  auto families() const -> const std::vector<std::vector<View>>& { return families_; }
  auto family(Color c) const -> const std::vector<View>& { return families_[c]; }
  /// Colors whose family is non-empty.
  auto live_colors() const -> int;
  /// Product of the non-empty family sizes (0 if every family is empty).
  auto facet_count() const -> std::uint64_t;

  auto operator==(const PseudosphereSpec&) const -> bool = default;

private:
  int n_;
  std::vector<std::vector<View>> families_;
};

auto pseudosphere(const PseudosphereSpec& spec, std::uint64_t facet_budget = 5'000'000) -> Complex;

/// Componentwise intersection of view families.
auto intersect_pseudospheres(const PseudosphereSpec& a, const PseudosphereSpec& b) -> PseudosphereSpec;

/// Pseudosphere whose color p family is every superset of In_G(p).
auto closed_above_spec(const Digraph& g) -> PseudosphereSpec;

/// {(p, In_G(p))}.
auto uninterpreted_simplex(const Digraph& g) -> Simplex;

/// Uninterpreted complex of a closed-above model, kept as the union of the
/// generator pseudospheres; facets are materialised on demand.
class UninterpretedComplex {
public:
  explicit UninterpretedComplex(const Model& m);

  auto pieces() const -> const std::vector<PseudosphereSpec>& { return pieces_; }
  auto materialize(std::uint64_t facet_budget = 5'000'000) const -> Complex;
  /// The pseudosphere of each piece, materialised.
  auto cover(std::uint64_t facet_budget = 5'000'000) const -> std::vector<Complex>;

private:
  std::vector<PseudosphereSpec> pieces_;
};

auto uninterpreted_complex(const Model& m) -> UninterpretedComplex;

/// Every color's family is the values [0, m): m^n facets.
auto input_pseudosphere(int n, int m) -> Complex;

/// Interpretation of an uninterpreted complex on a pure (n-1)-dimensional
/// input complex: process p in sigma sees {(q, input of q in tau) | q in view_sigma(p)}.
auto interpret(const Complex& uninterpreted, const Complex& inputs, int n) -> Complex;

}  // namespace kset::topology
