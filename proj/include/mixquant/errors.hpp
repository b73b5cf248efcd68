#pragma once

#include <stdexcept>
#include <string>

namespace mixquant {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidArg : Error {
    using Error::Error;
};

// Root/fixed-point solver failed to reach the requested residual.
struct NonConvergence : Error {
    double best_residual;
    explicit NonConvergence(const std::string& what, double residual)
        : Error(what + " (best residual " + std::to_string(residual) + ")"),
          best_residual(residual) {}
};

struct ZeroMass : Error {
    using Error::Error;
};

struct NoRealSolution : Error {
    using Error::Error;
};

struct DegenerateCell : Error {
    using Error::Error;
};

struct AssertionFailure : Error {
    using Error::Error;
};

}  // namespace mixquant
