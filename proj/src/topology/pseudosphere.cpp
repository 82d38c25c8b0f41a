#include "ksetlab/topology/pseudosphere.hpp"

#include <algorithm>

#include "ksetlab/errors.hpp"

namespace kset::topology {

PseudosphereSpec::PseudosphereSpec(int n, std::vector<std::vector<View>> families)
    : n_(n), families_(std::move(families)) {
  if (n < 1) throw InvalidInput("pseudosphere needs at least one color");
  if (static_cast<int>(families_.size()) != n) throw InvalidInput("one view family per color required");
  for (auto& f : families_) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
  }
}

auto PseudosphereSpec::live_colors() const -> int {
  return static_cast<int>(std::count_if(families_.begin(), families_.end(),
                                        [](const auto& f) { return !f.empty(); }));
}

auto PseudosphereSpec::facet_count() const -> std::uint64_t {
  if (live_colors() == 0) return 0;
  std::uint64_t c = 1;
  for (const auto& f : families_) {
    if (!f.empty()) c *= f.size();
  }
  return c;
}

auto pseudosphere(const PseudosphereSpec& spec, std::uint64_t facet_budget) -> Complex {
  std::vector<Color> live;
  for (Color c = 0; c < spec.n(); ++c) {
    if (!spec.family(c).empty()) live.push_back(c);
  }
  if (live.empty()) return {};
  if (spec.facet_count() > facet_budget) throw BudgetExceeded("pseudosphere facet enumeration", facet_budget);

  std::vector<Simplex> facets;
  facets.reserve(spec.facet_count());
  std::vector<std::size_t> choice(live.size(), 0);
  while (true) {
    std::vector<Vertex> vs;
    vs.reserve(live.size());
    for (std::size_t k = 0; k < live.size(); ++k) vs.push_back({live[k], spec.family(live[k])[choice[k]]});
    facets.emplace_back(std::move(vs));
    // Odometer with the last color varying fastest keeps facets in sorted order.
    std::size_t k = live.size();
    while (k > 0) {
      --k;
      if (++choice[k] < spec.family(live[k]).size()) break;
      choice[k] = 0;
      if (k == 0) return Complex::from_sorted_facets(std::move(facets));
    }
  }
}

auto intersect_pseudospheres(const PseudosphereSpec& a, const PseudosphereSpec& b) -> PseudosphereSpec {
  if (a.n() != b.n()) throw InvalidInput("pseudospheres have different color counts");
  std::vector<std::vector<View>> fams(a.n());
  for (Color c = 0; c < a.n(); ++c) {
    std::set_intersection(a.family(c).begin(), a.family(c).end(), b.family(c).begin(), b.family(c).end(),
                          std::back_inserter(fams[c]));
  }
  return PseudosphereSpec(a.n(), std::move(fams));
}

auto closed_above_spec(const Digraph& g) -> PseudosphereSpec {
  const int n = g.n();
  std::vector<std::vector<View>> fams(n);
  for (ProcessId p = 0; p < n; ++p) {
    const ProcessSet base = g.in(p);
    for_each_subset_of(ProcessSet::full(n) - base, [&](ProcessSet extra) { fams[p].emplace_back(base | extra); });
  }
  return PseudosphereSpec(n, std::move(fams));
}

auto uninterpreted_simplex(const Digraph& g) -> Simplex {
  std::vector<Vertex> vs;
  for (ProcessId p = 0; p < g.n(); ++p) vs.push_back({p, g.in(p)});
  return Simplex(std::move(vs));
}

UninterpretedComplex::UninterpretedComplex(const Model& m) {
  for (const auto& g : m.effective_generators()) pieces_.push_back(closed_above_spec(g));
}

auto UninterpretedComplex::materialize(std::uint64_t facet_budget) const -> Complex {
  std::uint64_t total = 0;
  std::vector<Simplex> all;
  for (const auto& spec : pieces_) {
    total += spec.facet_count();
    if (total > facet_budget) throw BudgetExceeded("uninterpreted complex facet enumeration", facet_budget);
    auto part = pseudosphere(spec, facet_budget);
    all.insert(all.end(), part.facets().begin(), part.facets().end());
  }
  return Complex(std::move(all));
}

auto UninterpretedComplex::cover(std::uint64_t facet_budget) const -> std::vector<Complex> {
  std::vector<Complex> out;
  for (const auto& spec : pieces_) out.push_back(pseudosphere(spec, facet_budget));
  return out;
}

auto uninterpreted_complex(const Model& m) -> UninterpretedComplex { return UninterpretedComplex(m); }

auto input_pseudosphere(int n, int m) -> Complex {
  if (n < 1) throw InvalidInput("input complex needs at least one process");
  if (m < 1) throw InvalidInput("input complex needs at least one value");
  std::vector<std::vector<View>> fams(n);
  for (auto& f : fams) {
    for (int v = 0; v < m; ++v) f.emplace_back(Label{v});
  }
  return pseudosphere(PseudosphereSpec(n, std::move(fams)));
}

auto interpret(const Complex& uninterpreted, const Complex& inputs, int n) -> Complex {
  if (!inputs.is_pure() || inputs.dimension() != n - 1) {
    throw InvalidInput("input complex must be pure of dimension n-1");
  }
  std::vector<Simplex> out;
  std::vector<Value> assignment(n);
  for (const auto& tau : inputs.facets()) {
    for (const auto& v : tau.vertices()) {
      const auto* label = std::get_if<Label>(&v.view);
      if (label == nullptr) throw InvalidInput("input complex views must be values");
      assignment[v.color] = label->value;
    }
    for (const auto& sigma : uninterpreted.facets()) {
      std::vector<Vertex> vs;
      vs.reserve(sigma.size());
      for (const auto& v : sigma.vertices()) {
        const auto* heard = std::get_if<ProcessSet>(&v.view);
        if (heard == nullptr) throw InvalidInput("uninterpreted views must be process sets");
        vs.push_back({v.color, FlatView::of(*heard, assignment)});
      }
      out.emplace_back(std::move(vs));
    }
  }
  return Complex(std::move(out));
}

}  // namespace kset::topology
