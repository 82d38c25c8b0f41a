#include "sat.hpp"

#include <algorithm>

namespace kset::detail {

namespace {

// Luby restart sequence 1 1 2 1 1 2 4 ...
auto luby(std::uint64_t i) -> std::uint64_t {
  std::uint64_t size = 1;
  int seq = 0;
  while (size < i + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != i) {
    size = (size - 1) >> 1;
    --seq;
    i %= size;
  }
  return std::uint64_t{1} << seq;
}

}  // namespace

auto SatSolver::new_var() -> int {
  const int v = vars();
  assign_.push_back(-1);
  level_.push_back(0);
  reason_.push_back(-1);
  phase_.push_back(0);
  activity_.push_back(0.0);
  heap_pos_.push_back(-1);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return v;
}

auto SatSolver::value(int lit) const -> int {
  const int a = assign_[lit >> 1];
  if (a < 0) return -1;
  return (lit & 1) ? 1 - a : a;
}

auto SatSolver::add_clause(std::vector<int> lits) -> bool {
  if (unsat_) return false;
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<int> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && (lits[i] ^ 1) == lits[i + 1]) return true;  // tautology
    const int val = value(lits[i]);
    if (val == 1) return true;
    if (val == -1) kept.push_back(lits[i]);
  }
  if (kept.empty()) {
    unsat_ = true;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept.front(), -1);
    if (propagate() >= 0) unsat_ = true;
    return !unsat_;
  }
  clauses_.push_back({std::move(kept), false, 0});
  attach(static_cast<int>(clauses_.size()) - 1);
  return true;
}

void SatSolver::attach(int c) {
  watches_[clauses_[c].lits[0]].push_back(c);
  watches_[clauses_[c].lits[1]].push_back(c);
}

void SatSolver::enqueue(int lit, int reason) {
  const int v = lit >> 1;
  assign_[v] = (lit & 1) ? 0 : 1;
  level_[v] = level();
  reason_[v] = reason;
  trail_.push_back(lit);
}

auto SatSolver::propagate() -> int {
  while (qhead_ < trail_.size()) {
    const int false_lit = trail_[qhead_++] ^ 1;
    auto& ws = watches_[false_lit];
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ws.size()) {
      const int c = ws[i++];
      auto& lits = clauses_[c].lits;
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
      if (value(lits[0]) == 1) {
        ws[j++] = c;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (value(lits[k]) != 0) {
          std::swap(lits[1], lits[k]);
          watches_[lits[1]].push_back(c);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = c;
      if (value(lits[0]) == 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        return c;
      }
      enqueue(lits[0], c);
    }
    ws.resize(j);
  }
  return -1;
}

void SatSolver::analyze(int conflict, std::vector<int>& learnt, int& back_level) {
  learnt.assign(1, 0);
  int pending = 0;
  int p = -1;
  auto idx = static_cast<std::ptrdiff_t>(trail_.size()) - 1;
  int c = conflict;
  do {
    const auto& lits = clauses_[c].lits;
    for (std::size_t i = (p == -1 ? 0 : 1); i < lits.size(); ++i) {
      const int v = lits[i] >> 1;
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      bump(v);
      if (level_[v] == level()) {
        ++pending;
      } else {
        learnt.push_back(lits[i]);
      }
    }
    while (!seen_[trail_[idx] >> 1]) --idx;
    p = trail_[idx--];
    c = reason_[p >> 1];
    seen_[p >> 1] = 0;
    --pending;
  } while (pending > 0);
  learnt[0] = p ^ 1;

  back_level = 0;
  std::size_t at = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    if (level_[learnt[i] >> 1] > back_level) {
      back_level = level_[learnt[i] >> 1];
      at = i;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[at]);
  for (int lit : learnt) seen_[lit >> 1] = 0;
}

void SatSolver::backtrack(int lvl) {
  if (level() <= lvl) return;
  for (auto i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[lvl]);) {
    const int v = trail_[i] >> 1;
    phase_[v] = static_cast<char>(assign_[v]);
    assign_[v] = -1;
    reason_[v] = -1;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(trail_lim_[lvl]);
  trail_lim_.resize(lvl);
  qhead_ = trail_.size();
}

void SatSolver::bump(int v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(heap_pos_[v]);
}

// Max-heap on activity, ties to the lower variable index.
namespace {
auto before(const std::vector<double>& act, int a, int b) -> bool {
  return act[a] > act[b] || (act[a] == act[b] && a < b);
}
}  // namespace

void SatSolver::heap_insert(int v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_pos_[v]);
}

auto SatSolver::heap_pop() -> int {
  const int top = heap_.front();
  heap_pos_[top] = -1;
  heap_.front() = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_pos_[heap_.front()] = 0;
    heap_down(0);
  }
  return top;
}

void SatSolver::heap_up(int i) {
  const int v = heap_[i];
  while (i > 0) {
    const int parent = (i - 1) / 2;
    if (!before(activity_, v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = i;
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

void SatSolver::heap_down(int i) {
  const int v = heap_[i];
  const int size = static_cast<int>(heap_.size());
  while (true) {
    int child = 2 * i + 1;
    if (child >= size) break;
    if (child + 1 < size && before(activity_, heap_[child + 1], heap_[child])) ++child;
    if (!before(activity_, heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = i;
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

auto SatSolver::pick_branch() -> int {
  while (!heap_.empty()) {
    const int v = heap_pop();
    if (assign_[v] < 0) return v;
  }
  return -1;
}

// Runs at level 0 only, so no kept clause is the reason of a live implication.
void SatSolver::reduce_learnts() {
  std::vector<int> learnt;
  for (int c = 0; c < static_cast<int>(clauses_.size()); ++c) {
    if (clauses_[c].learnt) learnt.push_back(c);
  }
  std::sort(learnt.begin(), learnt.end(), [&](int a, int b) {
    const auto& x = clauses_[a];
    const auto& y = clauses_[b];
    if (x.lbd != y.lbd) return x.lbd < y.lbd;
    return x.lits.size() < y.lits.size();
  });
  std::vector<char> drop(clauses_.size(), 0);
  for (std::size_t i = learnt.size() / 2; i < learnt.size(); ++i) {
    if (clauses_[learnt[i]].lbd > 2) drop[learnt[i]] = 1;
  }
  std::vector<Clause> kept;
  kept.reserve(clauses_.size());
  learnt_count_ = 0;
  for (std::size_t c = 0; c < clauses_.size(); ++c) {
    if (drop[c]) continue;
    if (clauses_[c].learnt) ++learnt_count_;
    kept.push_back(std::move(clauses_[c]));
  }
  clauses_ = std::move(kept);
  for (auto& w : watches_) w.clear();
  for (int c = 0; c < static_cast<int>(clauses_.size()); ++c) attach(c);
  for (int lit : trail_) reason_[lit >> 1] = -1;
}

auto SatSolver::solve(std::uint64_t budget) -> Result {
  if (unsat_) return Result::Unsat;
  if (propagate() >= 0) return Result::Unsat;

  std::uint64_t restarts = 0;
  std::uint64_t conflicts_here = 0;
  std::uint64_t restart_limit = 100 * luby(0);
  std::size_t max_learnts = std::max<std::size_t>(clauses_.size() / 3, 5000);
  std::vector<int> learnt;

  while (true) {
    const int conflict = propagate();
    if (conflict >= 0) {
      if (++work_ > budget) return Result::Budget;
      if (level() == 0) return Result::Unsat;
      int back_level = 0;
      analyze(conflict, learnt, back_level);
      backtrack(back_level);
      if (learnt.size() == 1) {
        enqueue(learnt.front(), -1);
      } else {
        std::vector<int> levels;
        for (int lit : learnt) levels.push_back(level_[lit >> 1]);
        std::sort(levels.begin(), levels.end());
        const int lbd = static_cast<int>(std::unique(levels.begin(), levels.end()) - levels.begin());
        clauses_.push_back({learnt, true, lbd});
        ++learnt_count_;
        const int c = static_cast<int>(clauses_.size()) - 1;
        attach(c);
        enqueue(learnt.front(), c);
      }
      var_inc_ /= 0.95;
      ++conflicts_here;
      continue;
    }
    if (conflicts_here >= restart_limit) {
      backtrack(0);
      conflicts_here = 0;
      restart_limit = 100 * luby(++restarts);
      if (learnt_count_ > max_learnts) {
        reduce_learnts();
        max_learnts = max_learnts * 11 / 10;
      }
    }
    const int v = pick_branch();
    if (v < 0) {
      model_.assign(assign_.size(), false);
      for (std::size_t i = 0; i < assign_.size(); ++i) model_[i] = assign_[i] == 1;
      return Result::Sat;
    }
    if (++work_ > budget) return Result::Budget;
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(phase_[v] ? pos(v) : neg(v), -1);
  }
}

}  // namespace kset::detail
