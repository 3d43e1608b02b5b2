#pragma once

#include <stdexcept>
#include <string>

namespace kcurve {

// Precondition violations: points outside a domain, mismatched grids,
// ordering requirements not met.
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Operation not defined for the given inputs (e.g. a distortion
// coefficient that is infinite where a finite value is required).
struct NotApplicableError : std::runtime_error {
    explicit NotApplicableError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input table; carries the 1-based line number.
struct ParseError : std::runtime_error {
    ParseError(const std::string& file, int line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
          line_number(line) {}
    int line_number;
};

}  // namespace kcurve
