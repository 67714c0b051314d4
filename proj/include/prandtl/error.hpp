#pragma once

#include <stdexcept>
#include <string>

namespace prandtl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (bad argument, wrong state).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The requested integral of the profile exceeds the sampled mass.
class InsufficientMass : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// A numerical procedure failed (no convergence, breakdown, invariant lost).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Malformed configuration or input file.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace prandtl
