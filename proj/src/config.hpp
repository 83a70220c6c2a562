#pragma once

#include <atomic>
#include <cstdlib>
#include <string>

#include "errors.hpp"

namespace branchcover {

// Process-wide resource bounds.  The group-order bound may be overridden by the
// BRANCHCOVER_MAX_ORDER environment variable or programmatically (C API).
namespace config {

inline constexpr unsigned kDefaultMaxGroupOrder = 256;
inline constexpr unsigned kHardMaxGroupOrder = 65535; // element ids are 16-bit
inline constexpr unsigned long long kDefaultLcmCap = 1000000;

inline std::atomic<unsigned>& max_group_order_slot() {
    static std::atomic<unsigned> v{0}; // 0 = not yet initialized
    return v;
}

inline std::atomic<unsigned long long>& lcm_cap_slot() {
    static std::atomic<unsigned long long> v{kDefaultLcmCap};
    return v;
}

inline unsigned max_group_order() {
    unsigned v = max_group_order_slot().load();
    if (v != 0) return v;
    unsigned resolved = kDefaultMaxGroupOrder;
    if (const char* env = std::getenv("BRANCHCOVER_MAX_ORDER")) {
        char* end = nullptr;
        unsigned long parsed = std::strtoul(env, &end, 10);
        require(end != env && *end == '\0' && parsed >= 1 &&
                    parsed <= kHardMaxGroupOrder,
                "BRANCHCOVER_MAX_ORDER must be an integer in [1, 65535], got '" +
                    std::string(env) + "'");
        resolved = static_cast<unsigned>(parsed);
    }
    max_group_order_slot().store(resolved);
    return resolved;
}

// bound == 0 resets to default/env resolution on next query.
inline void set_max_group_order(unsigned bound) {
    require(bound <= kHardMaxGroupOrder, "group order bound exceeds 65535");
    max_group_order_slot().store(bound);
}

inline unsigned long long lcm_cap() { return lcm_cap_slot().load(); }
inline void set_lcm_cap(unsigned long long cap) {
    require(cap >= 1, "lcm cap must be positive");
    lcm_cap_slot().store(cap);
}

} // namespace config
} // namespace branchcover
