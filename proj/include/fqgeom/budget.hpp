#pragma once

#include <cstdint>

namespace fqgeom {

inline constexpr std::uint64_t kDefaultTupleBudget = 1'000'000'000;       // exhaustive tuple scans
inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;   // matrix enumeration

// FQGEOM_BUDGET overrides both limits when set to a positive integer.
std::uint64_t tuple_budget();
std::uint64_t enumeration_budget();

} // namespace fqgeom
