#pragma once

#include <stdexcept>
#include <string>

namespace magsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration (missing key, bad unit, unknown field).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A closed-form or linear mean-field solve hit a vanishing determinant.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// The drift matrix has an eigenvalue with non-negative real part.
class StabilityError : public Error {
public:
    using Error::Error;
};

/// An iteration (fixed point, time integration) ran out of budget.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what, double last_residual = 0.0)
        : Error(what), last_residual_(last_residual) {}
    double last_residual() const noexcept { return last_residual_; }

private:
    double last_residual_;
};

/// Non-finite input to a numerical kernel or a failed internal consistency check.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A quantity that has no value at the requested point (e.g. a transmission
/// coefficient at zero probe power).
class UndefinedError : public Error {
public:
    using Error::Error;
};

} // namespace magsim
