#include "ksetlab/views.hpp"

#include <sstream>

#include "ksetlab/errors.hpp"

namespace kset {

FlatView::FlatView(std::span<const std::pair<ProcessId, Value>> entries) {
  for (const auto& [q, v] : entries) {
    if (q < 0 || q >= kMaxProcesses) throw InvalidInput("flat view process outside range");
    if (v < 0 || v > 255) throw InvalidInput("flat view value outside [0, 255]");
    if (members_.contains(q) && values_[q] != v) {
      throw InvalidInput("flat view holds two values for process " + std::to_string(q));
    }
    members_.insert(q);
    values_[q] = static_cast<std::uint8_t>(v);
  }
}

auto FlatView::of(ProcessSet heard, std::span<const Value> assignment) -> FlatView {
  FlatView f;
  f.members_ = heard;
  heard.for_each([&](ProcessId q) { f.values_[q] = static_cast<std::uint8_t>(assignment[q]); });
  return f;
}

auto FlatView::value_mask() const -> std::uint32_t {
  std::uint32_t mask = 0;
  members_.for_each([&](ProcessId q) { mask |= 1u << values_[q]; });
  return mask;
}

auto FlatView::entries() const -> std::vector<std::pair<ProcessId, Value>> {
  std::vector<std::pair<ProcessId, Value>> out;
  members_.for_each([&](ProcessId q) { out.emplace_back(q, values_[q]); });
  return out;
}

auto FlatView::to_string() const -> std::string {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [q, v] : entries()) {
    os << (first ? "" : ",") << "(" << q << "," << v << ")";
    first = false;
  }
  os << "}";
  return os.str();
}

auto FlatViewHash::operator()(const FlatView& v) const noexcept -> std::size_t {
  std::size_t h = v.members().bits();
  v.members().for_each([&](ProcessId q) {
    h = h * 1000003u ^ (static_cast<std::size_t>(q) << 8 | static_cast<std::size_t>(v.value_of(q)));
  });
  return h;
}

auto view_to_string(const View& v) -> std::string {
  struct Printer {
    auto operator()(const Label& l) const -> std::string { return std::to_string(l.value); }
    auto operator()(const ProcessSet& s) const -> std::string {
      std::string out = "{";
      bool first = true;
      s.for_each([&](ProcessId p) {
        out += (first ? "" : ",") + std::to_string(p);
        first = false;
      });
      return out + "}";
    }
    auto operator()(const FlatView& f) const -> std::string { return f.to_string(); }
  };
  return std::visit(Printer{}, v);
}

}  // namespace kset
