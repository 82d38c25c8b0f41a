#pragma once

#include <cstdint>
#include <random>

#include "ksetlab/model.hpp"

namespace kset {

struct FuzzOptions {
  int min_n = 2;
  int max_n = 4;
  int max_generators = 3;
  double symmetric_probability = 0.5;
};

/// Random closed-above model: n, generator count, edge density and the
/// symmetric flag all drawn from `rng`, so a seed reproduces the model.
auto random_model(std::mt19937_64& rng, const FuzzOptions& opts = {}) -> Model;

/// Random graph on n processes with each non-loop edge present with probability p.
auto random_digraph(std::mt19937_64& rng, int n, double p) -> Digraph;

}  // namespace kset
