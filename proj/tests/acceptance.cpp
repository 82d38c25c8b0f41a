// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "ksetlab/bounds.hpp"
#include "ksetlab/errors.hpp"
#include "ksetlab/fuzz.hpp"
#include "ksetlab/metrics.hpp"
#include "ksetlab/solvability.hpp"
#include "ksetlab/topology/homology.hpp"
#include "ksetlab/topology/pseudosphere.hpp"
#include "ksetlab/topology/shelling.hpp"
#include "support.hpp"

using namespace kset;
using namespace kset::topology;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // 0 means unlimited
  std::function<void(Outcome&)> body;
};

auto upper_k(const BoundsReport& r, const std::string& method) -> std::optional<int> {
  for (const auto& u : r.upper)
    if (u.method == method) return u.k;
  return std::nullopt;
}

auto vertex_complex(const std::vector<std::vector<int>>& facets) -> Complex {
  std::vector<Simplex> s;
  for (const auto& f : facets) {
    std::vector<Vertex> v;
    for (int id : f) v.push_back({id, Label{0}});
    s.emplace_back(v);
  }
  return Complex(s);
}

void fig1_regression(Outcome& o) {
  const auto m = oracle::load_model("fig1-right-sym.json");
  const auto& s = m.effective_generators();
  const auto rep = metrics_report(s);
  o.require(rep.cov.count(2) && rep.cov.at(2) == 3, "cov_2 = 3");
  o.require(rep.edom == 4, "edom = 4");
  const auto b = bounds_report(m, 1);
  o.require(upper_k(b, "cov") == 3, "cov-based upper bound k = 3");
  o.require(upper_k(b, "edom") == 4, "edom-based upper bound k = 4");
  o.detail << "cov_2=" << rep.cov.at(2) << " edom=" << rep.edom << " upper(cov)=" << upper_k(b, "cov").value_or(-1)
           << " upper(edom)=" << upper_k(b, "edom").value_or(-1);
}

void star_tightness(Outcome& o) {
  for (int n = 3; n <= 4; ++n) {
    for (int s = 1; s < n; ++s) {
      const auto m = star_family_model(n, s);
      const auto& gens = m.effective_generators();
      const std::string tag = "n=" + std::to_string(n) + " s=" + std::to_string(s);
      o.require(edom_over(gens) == n - s + 1, tag + " edom_over = n-s+1");
      const int lo = n - s;
      const auto unsat = decide_solvability(m, 1, lo, lo + 1);
      o.require(unsat.verdict == Verdict::Unsat, tag + " k=n-s is UNSAT");
      const int hi = n - s + 1;
      const auto sat = decide_solvability(m, 1, hi, hi + 1);
      o.require(sat.verdict == Verdict::Sat, tag + " k=n-s+1 is SAT");
      if (sat.verdict == Verdict::Sat) o.require(replay_witness(m, 1, hi, hi + 1, sat.witness).ok, tag + " witness replays");
      o.detail << tag << ":" << to_string(unsat.verdict) << "/" << to_string(sat.verdict) << " ";
    }
  }
}

auto random_spec(std::mt19937_64& rng, int n, int universe, int max_family) -> PseudosphereSpec {
  std::vector<std::vector<View>> fam(n);
  for (auto& f : fam) {
    const int size = static_cast<int>(rng() % (max_family + 1));
    std::set<int> picks;
    while (static_cast<int>(picks.size()) < size) picks.insert(static_cast<int>(rng() % universe));
    for (int p : picks) f.push_back(Label{p});
  }
  return PseudosphereSpec(n, fam);
}

void pseudosphere_connectivity(Outcome& o) {
  std::mt19937_64 rng(2024);
  int nontrivial = 0;
  std::uint64_t facets = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const auto spec = random_spec(rng, n, 4, 3);
    const int live = spec.live_colors();
    if (live < 2) continue;  // nothing to check below dimension 0
    const auto c = pseudosphere(spec);
    facets += c.facets().size();
    const auto ranks = reduced_homology_ranks(c, live - 2);
    const bool zero = std::all_of(ranks.begin(), ranks.end(), [](int r) { return r == 0; });
    o.require(zero, "pseudosphere " + std::to_string(trial) + " has non-zero reduced homology");
    ++nontrivial;
  }
  o.detail << "100 specs, " << nontrivial << " with two or more live colors, " << facets << " facets";
}

void closed_above_connectivity(Outcome& o) {
  std::mt19937_64 rng(77);
  FuzzOptions opts;
  opts.max_n = 4;
  opts.max_generators = 3;
  std::uint64_t facets = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = random_model(rng, opts);
    const auto u = uninterpreted_complex(m);
    const auto c = u.materialize();
    facets += c.facets().size();
    const auto ranks = reduced_homology_ranks(c, m.n() - 2);
    o.require(std::all_of(ranks.begin(), ranks.end(), [](int r) { return r == 0; }),
              "model " + std::to_string(trial) + " complex not (n-2)-acyclic");
    o.require(is_full_simplex(nerve(u.cover())), "model " + std::to_string(trial) + " nerve not a full simplex");
  }
  o.detail << "50 models, " << facets << " facets in total";
}

void cap_pseudo(Outcome& o) {
  std::vector<PseudosphereSpec> specs;
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      for (int c = 0; c < 8; ++c) {
        std::vector<std::vector<View>> fam(3);
        const int masks[3] = {a, b, c};
        for (int col = 0; col < 3; ++col)
          for (int v = 0; v < 3; ++v)
            if (masks[col] >> v & 1) fam[col].push_back(Label{v});
        specs.emplace_back(3, fam);
      }
  std::vector<Complex> built;
  for (const auto& s : specs) built.push_back(pseudosphere(s));
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < specs.size(); ++i)
    for (std::size_t j = 0; j < specs.size(); ++j) {
      ++pairs;
      if (intersect(built[i], built[j]) != pseudosphere(intersect_pseudospheres(specs[i], specs[j]))) {
        o.require(false, "pair " + std::to_string(i) + "," + std::to_string(j));
      }
    }
  o.detail << pairs << " ordered pairs";
}

// Facets straight from the definition: one simplex per graph of the model.
auto complex_from_graphs(const Digraph& g) -> Complex {
  const int n = g.n();
  std::vector<Edge> free;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && !g.has_edge(u, v)) free.emplace_back(u, v);
  std::vector<Simplex> facets;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    std::vector<Edge> e = g.edges();
    for (std::size_t b = 0; b < free.size(); ++b)
      if (mask >> b & 1u) e.push_back(free[b]);
    facets.push_back(uninterpreted_simplex(Digraph(n, e)));
  }
  return Complex(facets);
}

void simple_closed_pseudo(Outcome& o) {
  int checked = 0;
  auto check = [&](const Digraph& g) {
    const auto ref = complex_from_graphs(g);
    o.require(pseudosphere(closed_above_spec(g)) == ref, "pseudosphere differs for " + g.to_string());
    o.require(uninterpreted_complex(Model({g}, false)).materialize() == ref, "complex differs for " + g.to_string());
    ++checked;
  };
  for (const auto& g : oracle::all_digraphs(3)) check(g);
  std::mt19937_64 rng(606);
  for (int i = 0; i < 200; ++i) check(random_digraph(rng, 4, std::uniform_real_distribution<>(0.0, 0.8)(rng)));
  o.detail << checked << " graphs";
}

void product_inclusion(Outcome& o) {
  std::mt19937_64 rng(7070);
  for (int i = 0; i < 500; ++i) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const auto g = oracle::random_mat(rng, n, 0.25);
    const auto h = oracle::random_mat(rng, n, 0.25);
    const auto gg = oracle::random_superset(rng, g, 0.2);
    const auto hh = oracle::random_superset(rng, h, 0.2);
    const auto small = path_product(oracle::to_graph(g), oracle::to_graph(h));
    const auto big = path_product(oracle::to_graph(gg), oracle::to_graph(hh));
    o.require(small.is_below(big), "sample " + std::to_string(i));
    o.require(oracle::mat(small) == oracle::product(g, h), "product mismatch on sample " + std::to_string(i));
  }
  o.detail << "500 samples";
}

void squared_ring(Outcome& o) {
  const auto c6 = Digraph::cycle(6);
  const auto plain = json::graph_from_json(json::read_file(oracle::fixture("squared-ring.json")));
  const auto plus = json::graph_from_json(json::read_file(oracle::fixture("squared-ring-plus.json")));
  o.require(plain == oracle::to_graph(oracle::product(oracle::mat(c6), oracle::mat(c6))), "fixture is C6 squared");
  const auto yes = product_reachability_search({c6, c6}, plain);
  const auto* w = std::get_if<ReachabilityWitness>(&yes);
  o.require(w != nullptr, "squared ring witnessed");
  if (w) o.require(path_product(w->factors) == plain, "witness factors multiply to the target");
  const auto no = product_reachability_search({c6, c6}, plus);
  const auto* x = std::get_if<ReachabilityRefutation>(&no);
  o.require(x != nullptr, "squared ring plus chord refuted");
  if (x) o.detail << "refutation after " << x->explored_nodes << " nodes";
}

void ring_consensus(Outcome& o) {
  const std::vector<Digraph> ring{Digraph::cycle(6)};
  const auto seq = covering_sequence(ring, 1, 10);
  o.require(seq.values == std::vector<int>{2, 3, 4, 5, 6}, "covering sequence (2,3,4,5,6)");
  const auto sim = simulate_min_protocol(Model(ring, false), 5, MinStrategy::min_received());
  o.require(sim.worst_distinct == 1, "five rounds of min-received reach consensus");
  o.detail << "sequence length " << seq.values.size() << ", worst distinct " << sim.worst_distinct;
}

void sandwich_audit(Outcome& o) {
  std::mt19937_64 rng(20240601);
  FuzzOptions opts;
  opts.max_n = 4;
  opts.max_generators = 3;
  int budget = 0;
  int violations = 0;
  int exact = 0;
  int informative = 0;
  int tight = 0;
  for (int i = 0; i < 200; ++i) {
    const auto m = random_model(rng, opts);
    try {
      const auto rep = audit(m, 1);
      if (rep.budget_stopped || !rep.threshold) {
        ++budget;
        continue;
      }
      const int t = *rep.threshold;
      const auto& b = rep.bounds;
      const bool ok = b.largest_impossible.value_or(0) < t && (!b.best_upper || t <= *b.best_upper);
      if (!ok) ++violations;
      o.require(ok, "model " + std::to_string(i) + " breaks the ordering");
      ++exact;
      if (b.largest_impossible) ++informative;
      if (b.largest_impossible.value_or(0) + 1 == t && b.best_upper == t) ++tight;
    } catch (const ConsistencyViolation& e) {
      ++violations;
      o.require(false, std::string("model ") + std::to_string(i) + ": " + e.what());
    }
  }
  o.require(budget * 5 < 200, "budget-stopped runs reach 20%");
  o.detail << exact << " exact thresholds, " << budget << " budget-stopped, " << violations << " violations, "
           << informative << " with a non-vacuous lower bound, " << tight << " pinned by the bounds";
}

void shellability(Outcome& o) {
  const auto edge = vertex_complex({{0, 1, 2}, {1, 2, 3}});
  o.require(find_shelling_order(edge).status == ShellingResult::Status::Found, "edge-sharing triangles shell");
  const auto vertex = vertex_complex({{0, 1, 2}, {2, 3, 4}});
  o.require(find_shelling_order(vertex).status == ShellingResult::Status::NotShellable,
            "vertex-sharing triangles certified non-shellable");
  std::uint64_t orders = 0;
  for (int d = 1; d <= 4; ++d) {
    std::vector<std::vector<int>> boundary;
    for (int skip = 0; skip <= d; ++skip) {
      std::vector<int> f;
      for (int v = 0; v <= d; ++v)
        if (v != skip) f.push_back(v);
      boundary.push_back(f);
    }
    for (unsigned mask = 1; mask < (1u << boundary.size()); ++mask) {
      std::vector<std::vector<int>> chosen;
      for (std::size_t i = 0; i < boundary.size(); ++i)
        if (mask >> i & 1u) chosen.push_back(boundary[i]);
      const auto c = vertex_complex(chosen);
      std::vector<std::size_t> order(c.facets().size());
      std::iota(order.begin(), order.end(), 0);
      do {
        ++orders;
        o.require(is_shelling_order(c, order), "ordering rejected at d=" + std::to_string(d));
      } while (std::next_permutation(order.begin(), order.end()));
    }
  }
  o.detail << orders << " orderings of boundary subcomplexes";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "figure graph regression", 1, fig1_regression},
      {2, "star union tightness", 600, star_tightness},
      {3, "pseudosphere connectivity", 60, pseudosphere_connectivity},
      {4, "closed-above complexes and nerves", 300, closed_above_connectivity},
      {5, "pseudosphere intersection", 0, cap_pseudo},
      {6, "single-graph complexes are pseudospheres", 0, simple_closed_pseudo},
      {7, "product inclusion", 0, product_inclusion},
      {8, "squared ring reachability", 60, squared_ring},
      {9, "ring consensus by covering sequence", 0, ring_consensus},
      {10, "bounds sandwich the oracle threshold", 7200, sandwich_audit},
      {11, "shellability fixtures", 0, shellability},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0) o.require(secs < c.time_limit_s, "time limit exceeded");
    if (!o.ok) ++failed;
    std::printf("%s  %2d  %-44s %9.3fs  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
