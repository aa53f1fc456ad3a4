#pragma once

#include <stdexcept>
#include <string>

namespace mixhk {

// Structural mismatch between inputs (agent counts, dimensions, vertex counts).
struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input outside the mathematical domain of an operation.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Request exceeds a hard size cap (e.g. exhaustive Cheeger search).
struct SizeLimitError : std::runtime_error {
    explicit SizeLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

// A stated precondition of a check failed (distinct from the check itself failing).
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Iterative numerics failed to converge; carries the final residual.
struct NumericalError : std::runtime_error {
    NumericalError(const std::string& msg, double residual)
        : std::runtime_error(msg), residual(residual) {}
    double residual;
};

// Schedule draw inconsistent with the configured interaction mode.
struct InvalidScheduleError : std::runtime_error {
    explicit InvalidScheduleError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mixhk
