#pragma once

#include <stdexcept>
#include <string>

namespace branchcover {

// Bad user input: malformed spec strings, invalid tables, out-of-domain arguments.
struct invalid_input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configured resource bound (group order, cyclotomic lcm cap, search size)
// would be exceeded.
struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal invariant that must hold for every valid input failed; indicates
// a bug, never a user error.
struct internal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Division by zero in exact arithmetic.
struct division_by_zero_error : std::domain_error {
    using std::domain_error::domain_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw invalid_input_error(msg);
}

inline void ensure(bool cond, const std::string& msg) {
    if (!cond) throw internal_error(msg);
}

} // namespace branchcover
