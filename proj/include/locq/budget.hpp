#pragma once

#include <cstdint>

namespace locq {

// Default cap for exhaustive enumerations (graphs, complete vectors,
// nullspace elements, orbit members). Callers can always pass their own.
inline constexpr std::uint64_t kDefaultBudget = 5'000'000;

// base^exp, saturating at UINT64_MAX instead of wrapping.
std::uint64_t ipow_sat(std::uint64_t base, unsigned exp);

}  // namespace locq
