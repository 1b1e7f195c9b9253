#pragma once

#include <string>
#include <vector>

#include "stipsim/machine.hpp"

namespace stipsim {

// Helper for building explicit transition tables in code. Undefined
// (state, symbol) pairs are filled at build time with a transition to a
// designated sink state (writing the symbol back, moving right), which keeps
// the table total as the description format requires.
class TableBuilder {
 public:
  TableBuilder(std::string input_alphabet, std::string tape_alphabet, Symbol blank)
      : input_(std::move(input_alphabet)), tape_(std::move(tape_alphabet)), blank_(blank) {}

  void state(const std::string& name) { states_.push_back(name); }

  // One rule per symbol in syms; write == 0 means "rewrite the read symbol".
  void on(const std::string& from, std::string_view syms, const std::string& to, Symbol write,
          Move m) {
    for (Symbol c : syms)
      rules_.push_back(TransitionRule{from, c, to, write == 0 ? c : write, m});
  }

  MachineSpec build(const std::string& start, const std::string& accept,
                    const std::string& reject, const std::string& sink) {
    for (const std::string& s : states_) {
      if (s == accept || s == reject) continue;
      for (Symbol c : tape_) {
        bool covered = false;
        for (const TransitionRule& r : rules_)
          if (r.from_state == s && r.read == c) {
            covered = true;
            break;
          }
        if (!covered) rules_.push_back(TransitionRule{s, c, sink, c, Move::Right});
      }
    }
    return MachineSpec::create(states_, input_, tape_, blank_, start, accept, reject, rules_);
  }

 private:
  std::string input_;
  std::string tape_;
  Symbol blank_;
  std::vector<std::string> states_;
  std::vector<TransitionRule> rules_;
};

// The two hand-encoded table machines.
MachineSpec pr_machine_spec();
MachineSpec p4_machine_spec();

}  // namespace stipsim
