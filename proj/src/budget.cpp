#include "fqgeom/budget.hpp"

#include <cstdlib>

namespace fqgeom {

namespace {

std::uint64_t env_budget(std::uint64_t fallback) {
    const char* raw = std::getenv("FQGEOM_BUDGET");
    if (!raw || !*raw) return fallback;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || v == 0) return fallback;
    return static_cast<std::uint64_t>(v);
}

} // namespace

std::uint64_t tuple_budget() { return env_budget(kDefaultTupleBudget); }
std::uint64_t enumeration_budget() { return env_budget(kDefaultEnumerationBudget); }

} // namespace fqgeom
