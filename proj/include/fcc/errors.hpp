// errors.hpp: Exception types shared by all pipeline stages

#pragma once

#include <stdexcept>
#include <string>

namespace fcc {

// Invalid argument outside an operation's domain (negative frequency, bad beta, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The collective-coordinate mapping cannot be applied to the given spectral density.
struct MappingError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Configuration rejected by validation (CLI exit code 2).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Quadrature, integration or linear algebra failed to meet its tolerance.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Representative selection or null-space solve found the wrong multiplicity.
struct DegeneracyError : NumericalError {
    using NumericalError::NumericalError;
};

// A post-hoc invariant check failed; a larger truncation is needed.
struct ConvergenceError : NumericalError {
    using NumericalError::NumericalError;
};

// Performance ratio requested outside the regime where it is defined.
struct UndefinedResult : std::domain_error {
    using std::domain_error::domain_error;
};

// Heat/work sign pattern that matches no operating regime.
struct InconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace fcc
