#pragma once

#include <stdexcept>
#include <string>

namespace tolbip {

// Thrown when an input exceeds a hard capacity bound (brute-force vertex
// caps, exhausted sampling pools). Distinct from std::invalid_argument so
// callers can tell "you asked for too much" from "you asked for nonsense".
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by text parsers (graph files, experiment configs); the message
// carries a line number.
struct ParseError : std::runtime_error {
    ParseError(size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_no(line) {}
    size_t line_no;
};

} // namespace tolbip
