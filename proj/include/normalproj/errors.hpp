#pragma once

#include <stdexcept>
#include <string>

namespace normalproj {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Precondition violated (negative degree, arity mismatch, zero point, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A monomial division that was required to be exact left a remainder.
class DivisibilityError : public Error {
public:
    using Error::Error;
};

/// The parameterization's denominator vanishes at the requested parameters.
class PoleError : public Error {
public:
    using Error::Error;
};

/// The surface has an identically zero normal field.
class DegeneracyError : public Error {
public:
    using Error::Error;
};

/// Malformed or version-mismatched serialized data.
class FormatError : public Error {
public:
    using Error::Error;
};

/// A stored matrix does not belong to the given surface.
class HashMismatch : public FormatError {
public:
    using FormatError::FormatError;
};

/// No multiplication pencil fits inside the current row basis.
class NeedsDegreeBump : public Error {
public:
    using Error::Error;
};

/// An iterative numerical kernel failed to converge.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

/// The evaluated matrix has a corank too large for a finite fiber.
class NonFiniteFiber : public Error {
public:
    using Error::Error;
};

}  // namespace normalproj
