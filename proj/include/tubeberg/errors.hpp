#pragma once

#include <stdexcept>
#include <string>

namespace tubeberg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Point lies on or outside the tube (or the ball), or too close to the boundary.
class DomainError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Parameters for which the requested integral is infinite.
class DivergentIntegral : public Error {
public:
    using Error::Error;
};

/// Numeric contract violated (branch guard, metric consistency, image leaving the tube).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Malformed or invalid document (measure, lattice, grid).
class FormatError : public Error {
public:
    using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace tubeberg
