#include "stipsim/engine.hpp"

#include "stipsim/hashing.hpp"

namespace stipsim {

std::string ScannerControl::key() const {
  std::string out = std::to_string(phase);
  for (const Rat& r : regs) {
    out += ';';
    out += r.get_str();
  }
  return out;
}

std::uint64_t ScannerControl::hash() const {
  // Cheap per-tick digest; no allocation. Exact comparisons always go
  // through key(), so collisions here are harmless.
  std::uint64_t h = fnv1a_u64(static_cast<std::uint64_t>(phase));
  for (const Rat& r : regs) {
    h = hash_mix(h, mpz_fdiv_ui(r.get_num().get_mpz_t(), 0xfffffffbu));
    h = hash_mix(h, mpz_fdiv_ui(r.get_den().get_mpz_t(), 0xfffffffbu));
    h = hash_mix(h, static_cast<std::uint64_t>(mpz_sgn(r.get_num().get_mpz_t()) + 1));
  }
  return h;
}

TmEngine::TmEngine(const MachineSpec& spec, std::string_view input, long origin)
    : spec_(&spec), cfg_(initial_configuration(spec, input, origin)) {}

Verdict TmEngine::verdict() const {
  if (!halted()) throw ContractError("verdict() on a running machine");
  return cfg_.state == spec_->accept_state() ? Verdict::Accept : Verdict::Reject;
}

void TmEngine::step() {
  if (halted())
    throw ContractError("step() on a halted configuration (state " +
                        spec_->state_name(cfg_.state) + ")");
  Symbol sym = cfg_.tape.read(cfg_.head);
  const Transition& t = spec_->transition(cfg_.state, sym);
  if (!t.defined())
    throw ContractError("tape symbol '" + std::string(1, sym) + "' outside the tape alphabet");
  cfg_.state = t.next;
  cfg_.tape.write(cfg_.head, t.write);
  cfg_.head += (t.move == Move::Left ? -1 : 1);
  ++cfg_.steps;
}

std::uint64_t TmEngine::control_hash() const {
  return fnv1a_u64(static_cast<std::uint64_t>(cfg_.state));
}

std::string TmEngine::control_key() const { return spec_->state_name(cfg_.state); }

ScanEngine::ScanEngine(std::shared_ptr<const ScannerProgram> prog, std::string_view input,
                       long origin)
    : prog_(std::move(prog)), ctl_(prog_->initial()), tape_('_') {
  for (Symbol c : input)
    if (prog_->input_alphabet().find(c) == std::string::npos)
      throw EncodingError("input symbol '" + std::string(1, c) + "' outside the input alphabet");
  tape_.write_string(origin, input);
  head_ = origin;
}

Verdict ScanEngine::verdict() const {
  if (!halted()) throw ContractError("verdict() on a running machine");
  return status_ == ScanStatus::Accept ? Verdict::Accept : Verdict::Reject;
}

void ScanEngine::step() {
  if (halted()) throw ContractError("step() on a halted scanner machine");
  ScannerAction a = prog_->step(ctl_, tape_.read(head_));
  if (a.move < -1 || a.move > 1) throw ContractError("scanner moved more than one cell");
  if (a.write) tape_.write(head_, *a.write);
  head_ += a.move;
  status_ = a.status;
  ++steps_;
}

std::unique_ptr<RunEngine> Machine::start(std::string_view input, long origin) const {
  if (const MachineSpec* spec = std::get_if<MachineSpec>(&impl_))
    return std::make_unique<TmEngine>(*spec, input, origin);
  return std::make_unique<ScanEngine>(
      std::get<std::shared_ptr<const ScannerProgram>>(impl_), input, origin);
}

bool Machine::accepts_input(std::string_view s) const {
  if (const MachineSpec* spec = std::get_if<MachineSpec>(&impl_)) {
    for (Symbol c : s)
      if (!spec->is_input_symbol(c)) return false;
    return true;
  }
  const auto& prog = std::get<std::shared_ptr<const ScannerProgram>>(impl_);
  for (Symbol c : s)
    if (prog->input_alphabet().find(c) == std::string::npos) return false;
  return true;
}

std::string Machine::name() const {
  if (std::holds_alternative<MachineSpec>(impl_)) return "tm";
  return std::get<std::shared_ptr<const ScannerProgram>>(impl_)->name();
}

std::uint64_t configuration_digest(const RunEngine& e) {
  std::uint64_t h = e.control_hash();
  h = hash_mix(h, static_cast<std::uint64_t>(e.head()));
  h = hash_mix(h, e.tape().content_hash());
  return h;
}

}  // namespace stipsim
