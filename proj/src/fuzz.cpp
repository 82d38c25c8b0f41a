#include "ksetlab/fuzz.hpp"

#include "ksetlab/errors.hpp"

namespace kset {

auto random_digraph(std::mt19937_64& rng, int n, double p) -> Digraph {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (ProcessId u = 0; u < n; ++u) {
    for (ProcessId v = 0; v < n; ++v) {
      if (u != v && coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Digraph(n, edges);
}

auto random_model(std::mt19937_64& rng, const FuzzOptions& opts) -> Model {
  if (opts.min_n < 2 || opts.max_n < opts.min_n || opts.max_generators < 1) {
    throw InvalidInput("invalid fuzz ranges");
  }
  const int n = std::uniform_int_distribution<int>(opts.min_n, opts.max_n)(rng);
  const int count = std::uniform_int_distribution<int>(1, opts.max_generators)(rng);
  std::uniform_real_distribution<double> density(0.0, 0.7);
  std::vector<Digraph> gens;
  for (int i = 0; i < count; ++i) gens.push_back(random_digraph(rng, n, density(rng)));
  const bool symmetric = std::bernoulli_distribution(opts.symmetric_probability)(rng);
  return Model(std::move(gens), symmetric);
}

}  // namespace kset
