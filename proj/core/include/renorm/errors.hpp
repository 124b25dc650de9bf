#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace renorm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed textual input; `position` is a 0-based byte offset.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

/// A certified window became too small to answer the question asked.
struct PrecisionError : Error {
    using Error::Error;
};

/// Precondition violation (non-invertible leading term, pole where a limit
/// was requested, non-unipotent matrix, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Two independent computations of the same quantity disagree.  Raised by
/// the built-in cross-checks; always indicates a bug or exhausted precision.
struct ConsistencyError : Error {
    using Error::Error;
};

}  // namespace renorm
