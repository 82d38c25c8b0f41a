#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kset {

/// Malformed input: out-of-range processes, mismatched process counts, bad files.
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A quantity requested outside the range where it is defined.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An enumeration ran past its configured work budget. Never a refutation.
class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(const std::string& what, std::uint64_t budget)
      : std::runtime_error(what + " (budget " + std::to_string(budget) + ")"), budget_(budget) {}
  auto budget() const -> std::uint64_t { return budget_; }

private:
  std::uint64_t budget_;
};

/// Lower and upper bounds (or the oracle) disagree. Always fatal.
class ConsistencyViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Work counter with a hard ceiling.
class WorkBudget {
public:
  WorkBudget(std::uint64_t limit, std::string what) : limit_(limit), what_(std::move(what)) {}

  void charge(std::uint64_t units = 1) {
    used_ += units;
    if (used_ > limit_) throw BudgetExceeded(what_, limit_);
  }
  auto used() const -> std::uint64_t { return used_; }
  auto limit() const -> std::uint64_t { return limit_; }

private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
  std::string what_;
};

}  // namespace kset
