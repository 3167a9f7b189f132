#pragma once

#include <stdexcept>

namespace pg {

/// Invariant or budget failure inside a solver (exit code 2 territory).
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Configured deadline exceeded; the bench harness accounts for these.
struct TimeoutError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace pg
