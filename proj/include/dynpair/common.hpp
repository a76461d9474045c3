#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace dynpair {

using Letter = int;             // index into an alphabet
using Word = std::vector<Letter>;

// Labeled edge of a finite graph presentation (edge shifts, path automata).
struct Edge {
    int source;
    int target;
    Letter letter;

    auto operator<=>(const Edge&) const = default;
};

// Error taxonomy. Everything user-facing derives from Error so the CLI can
// map exception kind -> exit code.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text; carries a position for diagnostics.
struct ParseError : Error {
    int line = 0;
    int column = 0;
    ParseError(const std::string& msg, int line_, int column_)
        : Error(msg + " (line " + std::to_string(line_) + ", column " +
                std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}
};

// Well-formed text, inconsistent content (e.g. forbidden word over a
// different alphabet).
struct SemanticError : Error {
    using Error::Error;
};

// A named point/family/state that does not exist.
struct UnknownNameError : Error {
    using Error::Error;
};

// Operation applied to the empty shift where a nonempty one is required.
struct EmptyShiftError : Error {
    using Error::Error;
};

// A sliding-block rule that misses an allowed block of its source.
struct RuleNotTotalError : Error {
    using Error::Error;
};

struct NondeterministicInputError : Error {
    using Error::Error;
};

// Hard resource caps (determinization size, word enumeration, ...).
struct ResourceLimitError : Error {
    using Error::Error;
};

// iterate_operator seed moved against the declared direction.
struct DirectionError : Error {
    using Error::Error;
};

inline std::string word_to_string(const Word& w, const std::vector<std::string>& alphabet) {
    std::string out;
    for (Letter a : w) out += alphabet.at(static_cast<size_t>(a));
    return out;
}

}  // namespace dynpair
