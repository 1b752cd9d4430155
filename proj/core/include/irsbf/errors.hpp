#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace irsbf {

/// An instance is structurally inconsistent (length mismatch, zero-magnitude
/// channel, breakpoints built for a different instance, ...).
class InstanceError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numeric parameter is outside its admissible range.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed text input; carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace irsbf
