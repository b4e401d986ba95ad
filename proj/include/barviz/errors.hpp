#pragma once

#include <stdexcept>
#include <string>

namespace barviz {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input file could not be parsed; carries a 1-based line number.
struct parse_error : error {
    parse_error(std::size_t line, const std::string& what)
        : error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

/// An operation was called outside its contract (unknown vertex, wrong size, ...).
struct precondition_error : error {
    using error::error;
};

/// A search ran out of its node budget before reaching a definitive answer.
struct budget_error : error {
    using error::error;
};

/// Self-verification of a constructed artifact failed. Always a bug; never swallowed.
struct internal_error : error {
    using error::error;
};

}  // namespace barviz
