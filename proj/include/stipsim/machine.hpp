#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stipsim/errors.hpp"
#include "stipsim/ticks.hpp"

namespace stipsim {

using Symbol = char;
using StateId = int;

enum class Move : char { Left = 'L', Right = 'R' };

struct Transition {
  StateId next = -1;
  Symbol write = 0;
  Move move = Move::Right;
  bool defined() const { return next >= 0; }
};

// One line of a transition table: state symbol -> state symbol L|R.
struct TransitionRule {
  std::string from_state;
  Symbol read;
  std::string to_state;
  Symbol write;
  Move move;
};

// Finite control of a deterministic single-tape machine. Immutable after
// construction and safe to share across concurrent runs.
class MachineSpec {
 public:
  // Validates every invariant: alphabets consistent, blank outside the input
  // alphabet, accept != reject, no transitions out of halting states, and the
  // table total on (states \ {accept, reject}) x tape_alphabet.
  static MachineSpec create(std::vector<std::string> states,
                            std::string input_alphabet, std::string tape_alphabet,
                            Symbol blank, const std::string& start,
                            const std::string& accept, const std::string& reject,
                            const std::vector<TransitionRule>& rules);

  const std::vector<std::string>& states() const { return state_names_; }
  const std::string& state_name(StateId s) const { return state_names_[static_cast<std::size_t>(s)]; }
  std::optional<StateId> state_id(std::string_view name) const;

  const std::string& input_alphabet() const { return input_alphabet_; }
  const std::string& tape_alphabet() const { return tape_alphabet_; }
  Symbol blank() const { return blank_; }

  StateId start_state() const { return start_; }
  StateId accept_state() const { return accept_; }
  StateId reject_state() const { return reject_; }
  bool is_halting(StateId s) const { return s == accept_ || s == reject_; }

  bool is_input_symbol(Symbol c) const;
  bool is_tape_symbol(Symbol c) const;

  const Transition& transition(StateId s, Symbol c) const;

  // Canonical machine description text; parse_machine(to_text()) reproduces
  // the spec exactly.
  std::string to_text() const;

  friend bool operator==(const MachineSpec& a, const MachineSpec& b);

 private:
  MachineSpec() = default;

  std::vector<std::string> state_names_;
  std::unordered_map<std::string, StateId> state_index_;
  std::string input_alphabet_;
  std::string tape_alphabet_;
  Symbol blank_ = '_';
  StateId start_ = 0, accept_ = 0, reject_ = 0;
  std::vector<Transition> table_;  // dense: state * 128 + symbol
};

// Two-way infinite tape with implicit blanks beyond the written extent.
// Maintains a position-weighted content hash incrementally so per-step
// configuration digests cost O(1) regardless of tape size.
class Tape {
 public:
  explicit Tape(Symbol blank = '_');

  Symbol blank() const { return blank_; }
  Symbol read(long i) const;
  void write(long i, Symbol c);
  void write_string(long start, std::string_view s);

  // Blank-invariant: padding never changes the hash.
  std::uint64_t content_hash() const { return hash_; }

  // Trimmed extent [left, right] of non-blank cells; empty() when all blank.
  bool all_blank() const;
  long left() const;
  long right() const;
  std::string window(long start, std::size_t len) const;
  // "left:cells" over the trimmed extent; canonical for exact comparison.
  std::string canonical() const;

 private:
  void ensure(long i);
  static std::uint64_t position_weight(long i);

  Symbol blank_;
  std::vector<Symbol> cells_;
  std::vector<std::uint64_t> pows_;  // weight of each cell position
  long origin_ = 0;                  // tape index of cells_[0]
  std::uint64_t hash_ = 0;
  std::array<std::uint64_t, 256> weight_{};
};

// Instantaneous machine state; steps counts transitions taken.
struct Configuration {
  StateId state = 0;
  Tape tape;
  long head = 0;
  std::uint64_t steps = 0;
};

enum class Verdict { Accept, Reject };

std::string_view verdict_name(Verdict v);

// Tagged run result. ProvenDiverging only ever comes out of stipulated runs,
// where the accompanying record carries the cycle certificate.
struct RunOutcome {
  enum class Kind { Halted, BudgetExhausted, ProvenDiverging };

  Kind kind = Kind::BudgetExhausted;
  std::optional<Verdict> verdict;  // Halted only
  std::uint64_t steps = 0;         // transitions executed
  Tick ticks;                      // steps * T_t
  std::uint64_t budget = 0;        // BudgetExhausted only

  bool halted() const { return kind == Kind::Halted; }
};

// One transition per the table; exactly one cell written, head moved one
// position, steps incremented by one. Stepping a halted configuration is a
// contract violation.
Configuration tm_step(const MachineSpec& spec, const Configuration& cfg);

// Bare run: input written at cells [0, len), head 0, start state, no
// perturbation. budget >= 1.
std::pair<RunOutcome, Configuration> tm_run(const MachineSpec& spec,
                                            std::string_view input,
                                            std::uint64_t budget);

// Total time of an N-step run; the unit time is one tick.
Tick run_time(std::uint64_t n_steps);

Configuration initial_configuration(const MachineSpec& spec, std::string_view input,
                                    long origin = 0);

}  // namespace stipsim
