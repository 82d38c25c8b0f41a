#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ksetlab/process_set.hpp"

namespace kset {

using Value = int;

/// Set of (process, initial value) pairs, at most one value per process.
/// Stored as a member mask plus a value slot per process; absent slots stay 0
/// so that equality and ordering are structural.
class FlatView {
public:
  FlatView() = default;
  explicit FlatView(std::span<const std::pair<ProcessId, Value>> entries);

  /// {(q, assignment[q]) | q in heard}.
  static auto of(ProcessSet heard, std::span<const Value> assignment) -> FlatView;

  auto members() const -> ProcessSet { return members_; }
  auto value_of(ProcessId q) const -> Value { return values_[q]; }
  auto size() const -> int { return members_.size(); }
  auto empty() const -> bool { return members_.empty(); }

  /// Distinct values heard, as a bitmask over values (values < 32).
  auto value_mask() const -> std::uint32_t;
  auto entries() const -> std::vector<std::pair<ProcessId, Value>>;
  auto to_string() const -> std::string;

  auto operator==(const FlatView&) const -> bool = default;
  auto operator<=>(const FlatView&) const = default;

private:
  ProcessSet members_;
  std::array<std::uint8_t, kMaxProcesses> values_{};
};

struct FlatViewHash {
  auto operator()(const FlatView& v) const noexcept -> std::size_t;
};

/// Opaque vertex payload: inputs, cover indices, hand-built fixtures.
struct Label {
  int value = 0;
  auto operator==(const Label&) const -> bool = default;
  auto operator<=>(const Label&) const = default;
};

/// Vertex payload of a colored simplex: an opaque label, an uninterpreted view
/// (set of processes heard) or an interpreted flat view.
using View = std::variant<Label, ProcessSet, FlatView>;

auto view_to_string(const View& v) -> std::string;

}  // namespace kset
