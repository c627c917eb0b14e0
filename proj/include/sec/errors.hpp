#pragma once

#include <stdexcept>

namespace sec {

// Malformed or out-of-contract input data (bad image dimensions, unreadable
// files, invalid distributions, ...).  CLI maps this to exit code 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure at runtime (diverged training, non-finite intermediates).
// CLI maps this to exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sec
