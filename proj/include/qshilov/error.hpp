#pragma once

#include <stdexcept>
#include <string>

namespace qshilov {

// Thrown on mathematically invalid input (division by zero, bad indices,
// mismatched presentations, non-weight vectors, ...).
struct MathError : std::runtime_error {
    explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by the text parsers; carries a character position.
struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& what, size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

} // namespace qshilov
