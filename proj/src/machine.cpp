#include "stipsim/machine.hpp"

#include <algorithm>

#include "stipsim/hashing.hpp"

namespace stipsim {

namespace {

constexpr std::size_t kSymbolSlots = 128;

bool visible_ascii(Symbol c) { return c > 0x20 && c < 0x7f; }

std::uint64_t weight_seed(unsigned char c) {
  // Fixed per-symbol weights; splitmix of the code point.
  Rng r(0x5eedf00d + c);
  return r.next() | 1;
}

}  // namespace

MachineSpec MachineSpec::create(std::vector<std::string> states,
                                std::string input_alphabet, std::string tape_alphabet,
                                Symbol blank, const std::string& start,
                                const std::string& accept, const std::string& reject,
                                const std::vector<TransitionRule>& rules) {
  MachineSpec m;
  if (states.empty()) throw ParseError(0, "machine has no states");
  m.state_names_ = std::move(states);
  for (std::size_t i = 0; i < m.state_names_.size(); ++i) {
    const std::string& name = m.state_names_[i];
    if (name.empty()) throw ParseError(0, "empty state name");
    if (!m.state_index_.emplace(name, static_cast<StateId>(i)).second)
      throw ParseError(0, "duplicate state '" + name + "'");
  }

  auto check_symbols = [](const std::string& a, const char* what) {
    std::string seen;
    for (Symbol c : a) {
      if (!visible_ascii(c))
        throw ParseError(0, std::string(what) + " contains a non-printable symbol");
      if (seen.find(c) != std::string::npos)
        throw ParseError(0, std::string(what) + " repeats symbol '" + std::string(1, c) + "'");
      seen += c;
    }
  };
  check_symbols(input_alphabet, "input alphabet");
  check_symbols(tape_alphabet, "tape alphabet");
  if (tape_alphabet.empty()) throw ParseError(0, "empty tape alphabet");
  for (Symbol c : input_alphabet)
    if (tape_alphabet.find(c) == std::string::npos)
      throw ParseError(0, "input symbol '" + std::string(1, c) + "' not in tape alphabet");
  if (tape_alphabet.find(blank) == std::string::npos)
    throw ParseError(0, "blank symbol not in tape alphabet");
  if (input_alphabet.find(blank) != std::string::npos)
    throw ParseError(0, "blank symbol must not be in the input alphabet");
  m.input_alphabet_ = std::move(input_alphabet);
  m.tape_alphabet_ = std::move(tape_alphabet);
  m.blank_ = blank;

  auto lookup = [&m](const std::string& name, const char* what) {
    auto it = m.state_index_.find(name);
    if (it == m.state_index_.end())
      throw ParseError(0, std::string(what) + " state '" + name + "' not declared");
    return it->second;
  };
  m.start_ = lookup(start, "start");
  m.accept_ = lookup(accept, "accept");
  m.reject_ = lookup(reject, "reject");
  if (m.accept_ == m.reject_) throw ParseError(0, "accept and reject states must differ");

  m.table_.assign(m.state_names_.size() * kSymbolSlots, Transition{});
  for (const TransitionRule& r : rules) {
    StateId from = lookup(r.from_state, "transition source");
    StateId to = lookup(r.to_state, "transition target");
    if (m.is_halting(from))
      throw ParseError(0, "transition out of halting state '" + r.from_state + "'");
    if (!m.is_tape_symbol(r.read))
      throw ParseError(0, "transition reads unknown symbol '" + std::string(1, r.read) + "'");
    if (!m.is_tape_symbol(r.write))
      throw ParseError(0, "transition writes unknown symbol '" + std::string(1, r.write) + "'");
    Transition& slot =
        m.table_[static_cast<std::size_t>(from) * kSymbolSlots + static_cast<unsigned char>(r.read)];
    if (slot.defined())
      throw ParseError(0, "duplicate transition for (" + r.from_state + ", '" +
                              std::string(1, r.read) + "')");
    slot = Transition{to, r.write, r.move};
  }

  // The transition function is total on non-halting states.
  for (std::size_t s = 0; s < m.state_names_.size(); ++s) {
    if (m.is_halting(static_cast<StateId>(s))) continue;
    for (Symbol c : m.tape_alphabet_) {
      if (!m.table_[s * kSymbolSlots + static_cast<unsigned char>(c)].defined())
        throw ParseError(0, "partial transition table: no rule for (" + m.state_names_[s] +
                                ", '" + std::string(1, c) + "')");
    }
  }
  return m;
}

std::optional<StateId> MachineSpec::state_id(std::string_view name) const {
  auto it = state_index_.find(std::string(name));
  if (it == state_index_.end()) return std::nullopt;
  return it->second;
}

bool MachineSpec::is_input_symbol(Symbol c) const {
  return input_alphabet_.find(c) != std::string::npos;
}

bool MachineSpec::is_tape_symbol(Symbol c) const {
  return tape_alphabet_.find(c) != std::string::npos;
}

const Transition& MachineSpec::transition(StateId s, Symbol c) const {
  return table_[static_cast<std::size_t>(s) * kSymbolSlots + static_cast<unsigned char>(c)];
}

std::string MachineSpec::to_text() const {
  std::string out;
  out += "states:";
  for (const auto& s : state_names_) out += " " + s;
  out += "\ninput_alphabet:";
  for (Symbol c : input_alphabet_) out += std::string(" ") + c;
  out += "\ntape_alphabet:";
  for (Symbol c : tape_alphabet_) out += std::string(" ") + c;
  out += std::string("\nblank: ") + blank_;
  out += "\nstart: " + state_names_[static_cast<std::size_t>(start_)];
  out += "\naccept: " + state_names_[static_cast<std::size_t>(accept_)];
  out += "\nreject: " + state_names_[static_cast<std::size_t>(reject_)];
  out += "\n";
  for (std::size_t s = 0; s < state_names_.size(); ++s) {
    for (Symbol c : tape_alphabet_) {
      const Transition& t = table_[s * kSymbolSlots + static_cast<unsigned char>(c)];
      if (!t.defined()) continue;
      out += state_names_[s] + " " + c + " -> " + state_names_[static_cast<std::size_t>(t.next)] +
             " " + t.write + " " + static_cast<char>(t.move) + "\n";
    }
  }
  return out;
}

bool operator==(const MachineSpec& a, const MachineSpec& b) {
  return a.state_names_ == b.state_names_ && a.input_alphabet_ == b.input_alphabet_ &&
         a.tape_alphabet_ == b.tape_alphabet_ && a.blank_ == b.blank_ && a.start_ == b.start_ &&
         a.accept_ == b.accept_ && a.reject_ == b.reject_ && a.table_.size() == b.table_.size() &&
         std::equal(a.table_.begin(), a.table_.end(), b.table_.begin(),
                    [](const Transition& x, const Transition& y) {
                      return x.next == y.next && x.write == y.write && x.move == y.move;
                    });
}

Tape::Tape(Symbol blank) : blank_(blank) {
  for (std::size_t c = 0; c < weight_.size(); ++c)
    weight_[c] = weight_seed(static_cast<unsigned char>(c));
  weight_[static_cast<unsigned char>(blank_)] = 0;
}

Symbol Tape::read(long i) const {
  long j = i - origin_;
  if (j < 0 || j >= static_cast<long>(cells_.size())) return blank_;
  return cells_[static_cast<std::size_t>(j)];
}

// Positions get independent pseudo-random odd weights derived from the
// absolute index, so the content hash does not depend on growth history.
std::uint64_t Tape::position_weight(long i) {
  Rng r(static_cast<std::uint64_t>(i) ^ 0xc0ffee5eedull);
  return r.next() | 1;
}

void Tape::ensure(long i) {
  if (cells_.empty()) {
    origin_ = i;
    cells_.push_back(blank_);
    pows_.push_back(position_weight(i));
    return;
  }
  if (i < origin_) {
    long grow = origin_ - i;
    cells_.insert(cells_.begin(), static_cast<std::size_t>(grow), blank_);
    pows_.insert(pows_.begin(), static_cast<std::size_t>(grow), 0);
    origin_ = i;
    for (long k = 0; k < grow; ++k)
      pows_[static_cast<std::size_t>(k)] = position_weight(origin_ + k);
  }
  while (i >= origin_ + static_cast<long>(cells_.size())) {
    pows_.push_back(position_weight(origin_ + static_cast<long>(cells_.size())));
    cells_.push_back(blank_);
  }
}

void Tape::write(long i, Symbol c) {
  ensure(i);
  std::size_t j = static_cast<std::size_t>(i - origin_);
  Symbol old = cells_[j];
  if (old == c) return;
  hash_ -= weight_[static_cast<unsigned char>(old)] * pows_[j];
  hash_ += weight_[static_cast<unsigned char>(c)] * pows_[j];
  cells_[j] = c;
}

void Tape::write_string(long start, std::string_view s) {
  for (std::size_t k = 0; k < s.size(); ++k) write(start + static_cast<long>(k), s[k]);
}

bool Tape::all_blank() const {
  for (Symbol c : cells_)
    if (c != blank_) return false;
  return true;
}

long Tape::left() const {
  for (std::size_t j = 0; j < cells_.size(); ++j)
    if (cells_[j] != blank_) return origin_ + static_cast<long>(j);
  return 0;
}

long Tape::right() const {
  for (std::size_t j = cells_.size(); j > 0; --j)
    if (cells_[j - 1] != blank_) return origin_ + static_cast<long>(j - 1);
  return -1;
}

std::string Tape::window(long start, std::size_t len) const {
  std::string out(len, blank_);
  for (std::size_t k = 0; k < len; ++k) out[k] = read(start + static_cast<long>(k));
  return out;
}

std::string Tape::canonical() const {
  if (all_blank()) return "|";
  long l = left(), r = right();
  return std::to_string(l) + ":" + window(l, static_cast<std::size_t>(r - l + 1));
}

std::string_view verdict_name(Verdict v) {
  return v == Verdict::Accept ? "accept" : "reject";
}

Configuration initial_configuration(const MachineSpec& spec, std::string_view input,
                                    long origin) {
  for (Symbol c : input)
    if (!spec.is_input_symbol(c))
      throw EncodingError("input symbol '" + std::string(1, c) + "' outside the input alphabet");
  Configuration cfg;
  cfg.state = spec.start_state();
  cfg.tape = Tape(spec.blank());
  cfg.tape.write_string(origin, input);
  cfg.head = origin;
  cfg.steps = 0;
  return cfg;
}

Configuration tm_step(const MachineSpec& spec, const Configuration& cfg) {
  if (spec.is_halting(cfg.state))
    throw ContractError("tm_step on a halted configuration (state " +
                        spec.state_name(cfg.state) + ")");
  Symbol sym = cfg.tape.read(cfg.head);
  const Transition& t = spec.transition(cfg.state, sym);
  if (!t.defined())
    throw ContractError("tape symbol '" + std::string(1, sym) + "' outside the tape alphabet");
  Configuration next = cfg;
  next.state = t.next;
  next.tape.write(cfg.head, t.write);
  next.head = cfg.head + (t.move == Move::Left ? -1 : 1);
  next.steps = cfg.steps + 1;
  return next;
}

std::pair<RunOutcome, Configuration> tm_run(const MachineSpec& spec, std::string_view input,
                                            std::uint64_t budget) {
  if (budget < 1) throw ContractError("budget must be >= 1");
  Configuration cfg = initial_configuration(spec, input);
  // In-place loop; semantics identical to iterating tm_step.
  while (!spec.is_halting(cfg.state) && cfg.steps < budget) {
    Symbol sym = cfg.tape.read(cfg.head);
    const Transition& t = spec.transition(cfg.state, sym);
    cfg.state = t.next;
    cfg.tape.write(cfg.head, t.write);
    cfg.head += (t.move == Move::Left ? -1 : 1);
    ++cfg.steps;
  }
  RunOutcome out;
  out.steps = cfg.steps;
  out.ticks = run_time(cfg.steps);
  if (spec.is_halting(cfg.state)) {
    out.kind = RunOutcome::Kind::Halted;
    out.verdict = cfg.state == spec.accept_state() ? Verdict::Accept : Verdict::Reject;
  } else {
    out.kind = RunOutcome::Kind::BudgetExhausted;
    out.budget = budget;
  }
  return {out, std::move(cfg)};
}

Tick run_time(std::uint64_t n_steps) { return Tick(n_steps); }

}  // namespace stipsim
