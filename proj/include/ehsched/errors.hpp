#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ehsched {

// An algorithm was invoked outside the regime it is defined for
// (e.g. Lazy on a trace whose first harvest cannot ever carry the payload).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A lower-bound configuration or trace pair that the engine cannot evaluate.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed scenario or report text. line() is 1-based; 0 means "whole input".
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace ehsched
