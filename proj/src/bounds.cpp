#include "ksetlab/bounds.hpp"

#include <algorithm>
#include <limits>

#include "ksetlab/errors.hpp"

namespace kset {

auto to_string(Applicability a) -> std::string {
  return a == Applicability::AllAlgorithms ? "all-algorithms" : "oblivious-only";
}

namespace {

auto summary(const Model& m) -> std::string {
  return "n=" + std::to_string(m.n()) + ", " + std::to_string(m.generators().size()) + " generator(s)" +
         (m.symmetric() ? ", symmetric" : "") + ", " + std::to_string(m.effective_generators().size()) +
         " effective";
}

auto fresh_report(const Model& m, int rounds) -> BoundsReport {
  if (rounds < 1) throw InvalidInput("rounds must be at least 1");
  BoundsReport r;
  r.n = m.n();
  r.rounds = rounds;
  r.model = summary(m);
  return r;
}

void add_lower(BoundsReport& r, int k, std::string method, std::string cite, Applicability a) {
  r.lower.push_back({k, std::move(method), std::move(cite), a, k <= 0});
}

/// l + 1 from l = min(eDomOver - 2, min_t t + M_t - 2) on the given set.
auto general_formula(std::span<const Digraph> s, GraphChoice choice) -> int {
  const int n = s.front().n();
  const int over = edom_over(s, choice);
  int l = over - 2;
  for (int t = 1; t < over; ++t) l = std::min(l, t + m_coeff_from(n, t, max_cov(s, t, choice)) - 2);
  return l + 1;
}

/// Same with the single-graph max-covering numbers and the t-fold denominator.
auto symmetric_formula(const Model& m, GraphChoice choice) -> int {
  const int n = m.n();
  const auto& orbit = m.effective_generators();
  const Digraph& g = m.generators().front();
  const std::vector<Digraph> single{g};
  const int over = edom_over(orbit, choice);
  int l = over - 2;
  for (int t = 1; t < over; ++t) {
    const int mc = max_cov(single, t, choice);
    const int term = mc > t ? t + (n - t - 1) / (t * (mc - t)) - 2 : n - 2;
    l = std::min(l, term);
  }
  return l + 1;
}

void finish(BoundsReport& r) {
  for (const auto& u : r.upper) {
    if (!r.best_upper || u.k < *r.best_upper) r.best_upper = u.k;
  }
  for (const auto& l : r.lower) {
    if (!l.vacuous && (!r.largest_impossible || l.k > *r.largest_impossible)) r.largest_impossible = l.k;
  }
  if (r.best_upper) r.tight = *r.best_upper - 1 == r.largest_impossible.value_or(0);
}

constexpr const char* kOneRoundNote =
    "general and symmetric formulas are applied only to symmetric models; on non-symmetric models they "
    "can contradict solvable instances (a single star generator gives consensus yet the formula would "
    "forbid 3-set agreement at n = 4)";

}  // namespace

auto upper_bounds(const Model& m, int rounds, const BoundsOptions& opts) -> BoundsReport {
  auto r = fresh_report(m, rounds);
  const int n = m.n();
  const auto& gens = m.effective_generators();

  try {
    const auto prod = product_set(m, rounds, opts.products);
    const std::string tag = rounds == 1 ? "" : " of the " + std::to_string(rounds) + "-fold products";
    if (prod.size() == 1 && gens.size() == 1) {
      r.upper.push_back({dom(prod.front()), "dom", std::nullopt,
                         "every process hears a fixed minimum dominating set" + tag +
                             "; decide the least value of that set"});
    }
    const int e = edom(prod);
    r.upper.push_back({e, "edom", std::nullopt,
                       "any equal-domination-number processes dominate every graph" + tag +
                           "; decide the least value received"});
    int best_i = 0;
    int best_k = std::numeric_limits<int>::max();
    for (int i = 1; i < e; ++i) {
      const int k = i + n - cov(prod, i);
      if (k < best_k) {
        best_k = k;
        best_i = i;
      }
    }
    if (best_i > 0) {
      r.upper.push_back({best_k, "cov", best_i,
                         "the i smallest values reach at least cov_i processes" + tag +
                             "; the others can add at most n - cov_i more decisions"});
    }
  } catch (const BudgetExceeded& ex) {
    r.notes.push_back(std::string("product bounds skipped: ") + ex.what());
  }

  for (int i = 1; i <= n; ++i) {
    const auto seq = covering_sequence(gens, i, rounds);
    if (seq.reaches_n) {
      r.upper.push_back({i, "cov-sequence", i,
                         "the covering-number sequence from " + std::to_string(i) + " reaches n within " +
                             std::to_string(*seq.rounds_to_n) + " round(s); decide the least value after them"});
      break;
    }
  }
  finish(r);
  return r;
}

auto lower_bound_one_round(const Model& m, const BoundsOptions& opts) -> BoundsReport {
  auto r = fresh_report(m, 1);
  const auto& gens = m.effective_generators();
  if (gens.size() == 1) {
    add_lower(r, dom(gens.front()) - 1, "simple-dom",
              "single generator: every k below its domination number is impossible in one round "
              "(strict inequality; k equal to the domination number is solvable)",
              Applicability::AllAlgorithms);
  }
  if (m.symmetric()) {
    add_lower(r, general_formula(gens, opts.choice), "general-formula",
              "one-round bound from the distributed domination number and max-covering coefficients",
              Applicability::AllAlgorithms);
    if (m.generators().size() == 1) {
      add_lower(r, symmetric_formula(m, opts.choice), "symmetric-formula",
                "one-round bound for the symmetric closure of one graph, using that graph's max-covering "
                "numbers",
                Applicability::AllAlgorithms);
    }
  } else if (gens.size() > 1) {
    r.notes.push_back("no applicable one-round impossibility bound for this model");
  }
  r.notes.push_back(kOneRoundNote);
  finish(r);
  return r;
}

auto lower_bound_multi(const Model& m, int rounds, const BoundsOptions& opts) -> BoundsReport {
  auto r = fresh_report(m, rounds);
  const auto& gens = m.effective_generators();
  const auto prod = product_set(m, rounds, opts.products);
  if (gens.size() == 1) {
    add_lower(r, dom(prod.front()) - 1, "multi-round",
              "single generator: k below the domination number of its r-fold power is impossible for "
              "oblivious algorithms",
              Applicability::ObliviousOnly);
  }
  if (m.symmetric()) {
    add_lower(r, general_formula(prod, opts.choice), "general-formula",
              "distributed-domination bound evaluated on the r-fold products", Applicability::ObliviousOnly);
  } else if (gens.size() > 1) {
    r.notes.push_back("no applicable multi-round impossibility bound for this model");
  }
  r.notes.push_back(kOneRoundNote);
  r.notes.push_back("multi-round results assume an oblivious algorithm deciding after exactly r rounds");
  finish(r);
  return r;
}

auto bounds_report(const Model& m, int rounds, const BoundsOptions& opts) -> BoundsReport {
  auto r = upper_bounds(m, rounds, opts);
  const auto lower = rounds == 1 ? lower_bound_one_round(m, opts) : lower_bound_multi(m, rounds, opts);
  r.lower = lower.lower;
  r.notes.insert(r.notes.end(), lower.notes.begin(), lower.notes.end());
  finish(r);
  for (const auto& l : r.lower) {
    if (l.vacuous) continue;
    for (const auto& u : r.upper) {
      if (l.k >= u.k) {
        throw ConsistencyViolation("bounds disagree on " + r.model + ": " + l.method + " forbids k=" +
                                   std::to_string(l.k) + " but " + u.method + " solves k=" + std::to_string(u.k));
      }
    }
  }
  return r;
}

auto star_family_model(int n, int s) -> Model {
  validate_process_count(n);
  if (s < 1 || s >= n) throw InvalidInput("star count must be in [1, n)");
  ProcessSet centers;
  for (int c = 0; c < s; ++c) centers.insert(c);
  return Model({Digraph::star(n, centers)}, true);
}

auto star_family_report(int n, int s) -> BoundsReport {
  validate_process_count(n);
  if (s < 1 || s >= n) throw InvalidInput("star count must be in [1, n)");
  BoundsReport r;
  r.n = n;
  r.model = "unions of " + std::to_string(s) + " star(s), symmetric, n=" + std::to_string(n);
  add_lower(r, n - s, "star-family",
            "unions of s stars: (n - s)-set agreement is impossible in any number of rounds",
            Applicability::ObliviousOnly);
  r.upper.push_back({n - s + 1, "edom", std::nullopt,
                     "any n - s + 1 processes include a center of every graph; one round suffices"});
  finish(r);
  return r;
}

auto audit(const Model& m, int rounds, const AuditOptions& opts) -> AuditReport {
  AuditReport rep;
  rep.bounds = bounds_report(m, rounds, opts.bounds);
  const int n = m.n();
  for (int k = 1; k <= n; ++k) {
    const auto res = decide_solvability(m, rounds, k, k + 1, opts.solve);
    rep.runs.push_back({k, k + 1, res.verdict, res.stats});
    if (res.verdict == Verdict::Budget) {
      rep.budget_stopped = true;
      break;
    }
    if (res.verdict == Verdict::Sat) {
      rep.threshold = k;
      break;
    }
  }

  const auto& b = rep.bounds;
  for (const auto& run : rep.runs) {
    if (run.verdict == Verdict::Sat && b.largest_impossible && run.k <= *b.largest_impossible) {
      throw ConsistencyViolation("oracle solves k=" + std::to_string(run.k) + " on " + b.model +
                                 " but the bounds declare it impossible");
    }
    if (run.verdict == Verdict::Unsat && b.best_upper && run.k >= *b.best_upper) {
      throw ConsistencyViolation("oracle refutes k=" + std::to_string(run.k) + " on " + b.model +
                                 " but the bounds declare it solvable");
    }
  }
  return rep;
}

}  // namespace kset
