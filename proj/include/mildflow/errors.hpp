#pragma once

#include <stdexcept>
#include <string>

namespace mildflow {

/// Input violates an operation's precondition (bad exponents, grid mismatch,
/// malformed config). Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// File could not be read or written. Maps to CLI exit code 2.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// NaN, overflow or detected instability inside a computation.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mildflow
