#pragma once

#include <string_view>

#include "stipsim/machine.hpp"

namespace stipsim {

// Parses the machine description format:
//
//   states: q0 q1 acc rej        # whitespace-separated identifiers
//   input_alphabet: 0 1 +
//   tape_alphabet: 0 1 + _
//   blank: _
//   start: q0
//   accept: acc
//   reject: rej
//   q0 0 -> q1 0 R               # one transition per line
//
// Symbols are single visible ASCII characters; '#' starts a comment. Raises
// ParseError with the offending line number; spec-level violations (partial
// table, duplicate rules, unknown names) are diagnosed too.
MachineSpec parse_machine(std::string_view text);

MachineSpec parse_machine_file(const std::string& path);

}  // namespace stipsim
