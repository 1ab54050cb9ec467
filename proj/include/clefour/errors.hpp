#pragma once

#include <stdexcept>

namespace clefour {

// Argument outside the mathematical domain of the routine.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative process (series, quadrature, fit) failed to reach tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter region the implementation deliberately does not cover.
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace clefour
