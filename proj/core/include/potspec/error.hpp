#pragma once

#include <stdexcept>
#include <string>

namespace potspec {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (e.g. Bessel order < -1/2).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An iterative numeric procedure failed to converge.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Schatten exponent outside the supported range.
class UnsupportedExponent : public Error {
public:
    using Error::Error;
};

/// Requested series does not converge for the given exponent.
class DivergentSeries : public Error {
public:
    using Error::Error;
};

/// Truncation budget exhausted before the tail bound reached the tolerance.
class TruncationError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Malformed or degenerate geometry.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// Mesh too coarse (or too fine for dense storage).
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// Mismatched dimensions between mesh, operator kind, or vectors.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Violated precondition of an operation (non-symmetric input, unequal measures, ...).
class ContractError : public Error {
public:
    using Error::Error;
};

/// Malformed domain spec or configuration input.
class SpecError : public Error {
public:
    using Error::Error;
};

/// Kernel evaluated at its singularity.
class SingularityError : public Error {
public:
    using Error::Error;
};

}  // namespace potspec
