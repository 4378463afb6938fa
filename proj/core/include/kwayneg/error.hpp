#pragma once

#include <stdexcept>
#include <string>

namespace kwayneg {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An object violates one of its invariants (norm, trace, Hermiticity, unitarity).
class ValidationError : public Error {
public:
    using Error::Error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// An iterative method failed to converge.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Malformed input text.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A computed result breaks a contract that should hold by construction.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace kwayneg
