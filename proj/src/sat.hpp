#pragma once

// Small CDCL solver used by the solvability oracle. Not part of the public API.

#include <cstdint>
#include <vector>

namespace kset::detail {

/// Literal 2v is variable v, literal 2v+1 its negation.
inline constexpr auto pos(int v) -> int { return 2 * v; }
inline constexpr auto neg(int v) -> int { return 2 * v + 1; }

class SatSolver {
public:
  enum class Result { Sat, Unsat, Budget };

  auto new_var() -> int;
  auto vars() const -> int { return static_cast<int>(assign_.size()); }
  /// Adds a clause at level 0; returns false once the formula is trivially unsatisfiable.
  auto add_clause(std::vector<int> lits) -> bool;

  /// Budget counts decisions plus conflicts.
  auto solve(std::uint64_t budget) -> Result;
  auto model_value(int v) const -> bool { return model_[v]; }
  auto work() const -> std::uint64_t { return work_; }

private:
  struct Clause {
    std::vector<int> lits;
    bool learnt = false;
    int lbd = 0;
  };

  auto value(int lit) const -> int;  // 1 true, 0 false, -1 unassigned
  void enqueue(int lit, int reason);
  auto propagate() -> int;  // conflicting clause or -1
  void analyze(int conflict, std::vector<int>& learnt, int& back_level);
  void backtrack(int level);
  auto pick_branch() -> int;
  void bump(int v);
  void heap_insert(int v);
  auto heap_pop() -> int;
  void heap_up(int i);
  void heap_down(int i);
  void attach(int c);
  void reduce_learnts();
  auto level() const -> int { return static_cast<int>(trail_lim_.size()); }

  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> watches_;  // per literal: clauses watching its negation becoming true
  std::vector<std::int8_t> assign_;        // per variable: -1, 0, 1
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<char> phase_;
  std::vector<double> activity_;
  std::vector<int> heap_;
  std::vector<int> heap_pos_;
  std::vector<int> trail_;
  std::vector<int> trail_lim_;
  std::vector<char> seen_;
  std::vector<bool> model_;
  std::size_t qhead_ = 0;
  double var_inc_ = 1.0;
  bool unsat_ = false;
  std::uint64_t work_ = 0;
  std::size_t learnt_count_ = 0;
};

}  // namespace kset::detail
