#pragma once

#include <stdexcept>
#include <string>

namespace tropmod {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input data (maps to CLI exit code 2).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A configured size guard was exceeded.
class CapExceeded : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

} // namespace tropmod
