#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ksetlab/metrics.hpp"
#include "ksetlab/model.hpp"
#include "ksetlab/solvability.hpp"

namespace kset {

enum class Applicability { AllAlgorithms, ObliviousOnly };

auto to_string(Applicability a) -> std::string;

/// k-set agreement is solvable.
struct UpperBound {
  int k = 0;
  std::string method;    ///< dom | edom | cov | cov-sequence
  std::optional<int> i;  ///< seed size for cov and cov-sequence
  std::string cite;
};

/// k-set agreement is impossible (k <= 0 is reported as vacuous).
struct LowerBound {
  int k = 0;
  std::string method;  ///< simple-dom | general-formula | symmetric-formula | multi-round | star-family
  std::string cite;
  Applicability applicability = Applicability::AllAlgorithms;
  bool vacuous = false;
};

struct BoundsReport {
  int n = 0;
  int rounds = 1;
  std::string model;
  std::vector<UpperBound> upper;
  std::vector<LowerBound> lower;
  std::optional<int> best_upper;          ///< smallest solvable k
  std::optional<int> largest_impossible;  ///< largest non-vacuous impossible k
  std::optional<bool> tight;              ///< best_upper - 1 == largest impossible k (0 if none)
  std::vector<std::string> notes;
};

struct BoundsOptions {
  ProductOptions products;
  GraphChoice choice = GraphChoice::Multiset;
};

/// Solvable k values in `rounds` rounds, from the r-fold generator products
/// and from covering sequences. Product budget failures leave the sequence bound.
auto upper_bounds(const Model& m, int rounds, const BoundsOptions& opts = {}) -> BoundsReport;

/// One-round impossibility results (valid for every algorithm).
auto lower_bound_one_round(const Model& m, const BoundsOptions& opts = {}) -> BoundsReport;

/// Impossibility in `rounds` rounds for oblivious algorithms, on the r-fold products.
auto lower_bound_multi(const Model& m, int rounds, const BoundsOptions& opts = {}) -> BoundsReport;

/// Upper and lower bounds together. Throws ConsistencyViolation when an
/// impossible k is not below every solvable k.
auto bounds_report(const Model& m, int rounds, const BoundsOptions& opts = {}) -> BoundsReport;

/// Closed-form report for the symmetric model of unions of s stars on n processes.
auto star_family_report(int n, int s) -> BoundsReport;

/// The symmetric model of all unions of s stars on n processes.
auto star_family_model(int n, int s) -> Model;

struct AuditRun {
  int k = 0;
  int values = 0;
  Verdict verdict = Verdict::Budget;
  SolveStats stats;
};

struct AuditOptions {
  BoundsOptions bounds;
  SolveOptions solve;
};

struct AuditReport {
  BoundsReport bounds;
  std::vector<AuditRun> runs;   ///< k = 1, 2, ... until the first SAT or budget stop
  std::optional<int> threshold; ///< smallest k with SAT at values = k + 1, all smaller k UNSAT
  bool budget_stopped = false;
};

/// Runs the bounds and the oracle across k and checks
/// largest impossible < threshold <= best upper. Throws ConsistencyViolation on failure.
auto audit(const Model& m, int rounds, const AuditOptions& opts = {}) -> AuditReport;

}  // namespace kset
