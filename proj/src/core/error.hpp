#pragma once

#include <stdexcept>
#include <string>

namespace gtsp {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File could not be opened or read.
struct IoError : Error {
    using Error::Error;
};

// Malformed instance/config text; carries a 1-based line number when known.
struct ParseError : Error {
    explicit ParseError(const std::string& what, int line = 0)
        : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what), line_number(line) {}
    int line_number;
};

// Recognized file but unsupported variant (e.g. an edge weight kind we reject).
struct FormatError : Error {
    using Error::Error;
};

// Bad argument: out-of-range index, invalid move, inconsistent configuration.
struct InvalidInput : Error {
    using Error::Error;
};

// A tour or partition violates a structural invariant.
struct InfeasibleError : Error {
    using Error::Error;
};

}  // namespace gtsp
