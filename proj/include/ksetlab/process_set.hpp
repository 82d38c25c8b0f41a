#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace kset {

/// Largest process count supported. Rows of a graph fit one 16-bit word.
inline constexpr int kMaxProcesses = 16;

using ProcessId = int;

/// A subset of the process set [0, n), stored as a bitmask.
class ProcessSet {
public:
  constexpr ProcessSet() = default;
  constexpr explicit ProcessSet(std::uint32_t bits) : bits_(bits) {}
  constexpr ProcessSet(std::initializer_list<ProcessId> members) {
    for (auto p : members) insert(p);
  }

  static constexpr auto full(int n) -> ProcessSet {
    return ProcessSet(n >= 32 ? ~0u : ((1u << n) - 1u));
  }
  static constexpr auto singleton(ProcessId p) -> ProcessSet { return ProcessSet(1u << p); }

  constexpr auto bits() const -> std::uint32_t { return bits_; }
  constexpr auto size() const -> int { return std::popcount(bits_); }
  constexpr auto empty() const -> bool { return bits_ == 0; }
  constexpr auto contains(ProcessId p) const -> bool { return (bits_ >> p) & 1u; }
  constexpr auto includes(ProcessSet other) const -> bool { return (other.bits_ & ~bits_) == 0; }

  constexpr void insert(ProcessId p) { bits_ |= 1u << p; }
  constexpr void erase(ProcessId p) { bits_ &= ~(1u << p); }

  /// Lowest member; undefined on the empty set.
  constexpr auto first() const -> ProcessId { return std::countr_zero(bits_); }

  auto members() const -> std::vector<ProcessId> {
    std::vector<ProcessId> out;
    out.reserve(size());
    for (auto b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (auto b = bits_; b != 0; b &= b - 1) f(static_cast<ProcessId>(std::countr_zero(b)));
  }

  constexpr auto operator|(ProcessSet o) const -> ProcessSet { return ProcessSet(bits_ | o.bits_); }
  constexpr auto operator&(ProcessSet o) const -> ProcessSet { return ProcessSet(bits_ & o.bits_); }
  constexpr auto operator-(ProcessSet o) const -> ProcessSet { return ProcessSet(bits_ & ~o.bits_); }
  constexpr auto operator|=(ProcessSet o) -> ProcessSet& { bits_ |= o.bits_; return *this; }
  constexpr auto operator&=(ProcessSet o) -> ProcessSet& { bits_ &= o.bits_; return *this; }

  constexpr auto operator==(const ProcessSet&) const -> bool = default;
  constexpr auto operator<=>(const ProcessSet&) const = default;

private:
  std::uint32_t bits_ = 0;
};

/// Calls f(ProcessSet) for every subset of [0, n) with exactly k members,
/// in increasing bitmask order. Stops early when f returns false.
template <typename F>
auto for_each_subset_of_size(int n, int k, F&& f) -> bool {
  if (k < 0 || k > n) return true;
  if (k == 0) return f(ProcessSet{});
  std::uint32_t s = (1u << k) - 1u;
  const std::uint32_t limit = 1u << n;
  while (s < limit) {
    if (!f(ProcessSet(s))) return false;
    // Gosper's hack: next integer with the same popcount.
    const std::uint32_t c = s & (~s + 1u);
    const std::uint32_t r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return true;
}

/// Calls f(ProcessSet) for every subset of `universe` (including empty and full).
template <typename F>
void for_each_subset_of(ProcessSet universe, F&& f) {
  const std::uint32_t u = universe.bits();
  std::uint32_t s = 0;
  while (true) {
    f(ProcessSet(s));
    if (s == u) break;
    s = (s - u) & u;
  }
}

}  // namespace kset
