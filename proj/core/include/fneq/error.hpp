#pragma once

#include <stdexcept>
#include <string>

namespace fneq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller supplied data or parameters that violate a precondition.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// A direction was requested for a vector with zero L2 norm.
class ZeroNormError : public Error {
public:
    using Error::Error;
};

/// A value falls outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Stored codes or files are inconsistent with their codebooks or headers.
class CorruptionError : public Error {
public:
    using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace fneq
