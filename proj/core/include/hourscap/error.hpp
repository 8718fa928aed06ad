#pragma once

#include <stdexcept>
#include <string>

namespace hourscap {

// Non-finite or out-of-range argument to a model function.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Parameter set violates a model invariant. `path()` names the offending
// field (e.g. "economy.omega").
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string path, const std::string& message)
        : std::invalid_argument(path + ": " + message), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Fixed-point search for the pre-policy state did not settle.
class ConvergenceError : public SolverError {
public:
    ConvergenceError(const std::string& message, double residual)
        : SolverError(message), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

// A ratio metric with a zero or negative denominator.
class MetricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Calibration target outside the range the instrument can reach.
class InfeasibleTargetError : public std::runtime_error {
public:
    InfeasibleTargetError(const std::string& message, double lo, double hi)
        : std::runtime_error(message), lo_(lo), hi_(hi) {}

    double achievable_lo() const noexcept { return lo_; }
    double achievable_hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

}  // namespace hourscap
