#pragma once

#include <stdexcept>
#include <string>

#include "talu/automaton.hpp"

namespace talu {

struct ParseError : std::runtime_error {
    int line;
    int column;

    ParseError(int line_, int column_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ", column "
                             + std::to_string(column_) + ": " + what_),
          line(line_), column(column_)
    {
    }
};

// Parses the line-oriented model format:
//
//   clocks x y;
//   state q0 init;
//   state q2 inv: x<=3;
//   trans q0 -> q1 [x>=5 && w<=2] {y};
//
// '#' starts a comment. Equality atoms are expanded right away; diagonal
// constraints and invariants with lower-bound atoms are rejected.
TimedAutomaton parse_model(const std::string& text);

// Canonical textual form; parse_model(serialize_model(ta)) reproduces ta.
std::string serialize_model(const TimedAutomaton& ta);

// FNV-1a hash of the canonical textual form, for stats records.
std::string model_digest(const TimedAutomaton& ta);

} // namespace talu
