#include "ksetlab/budgets.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <string>

#include "ksetlab/errors.hpp"

namespace kset {

auto Budgets::defaults() -> Budgets {
  Budgets b;
  const char* raw = std::getenv(kBudgetEnvVar);
  if (raw == nullptr) return b;
  std::uint64_t value = 0;
  const char* end = raw + std::strlen(raw);
  const auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc{} || ptr != end || value == 0) {
    throw InvalidInput(std::string(kBudgetEnvVar) + " must be a positive integer, got '" + raw + "'");
  }
  b.products = b.scenarios = b.search_nodes = b.simplices = b.shelling = value;
  return b;
}

}  // namespace kset
