#pragma once

#include <memory>
#include <variant>

#include "stipsim/machine.hpp"
#include "stipsim/scanner.hpp"

namespace stipsim {

// One in-flight run of some machine. Engines are single-run and
// single-threaded; distinct runs share nothing mutable.
class RunEngine {
 public:
  virtual ~RunEngine() = default;

  virtual bool halted() const = 0;
  virtual Verdict verdict() const = 0;  // pre: halted()
  virtual void step() = 0;              // one transition, one tick; pre: !halted()
  virtual std::uint64_t steps() const = 0;

  virtual Tape& tape() = 0;
  virtual const Tape& tape() const = 0;
  virtual long head() const = 0;

  // Control-state digest and canonical key (tape excluded).
  virtual std::uint64_t control_hash() const = 0;
  virtual std::string control_key() const = 0;
};

class TmEngine final : public RunEngine {
 public:
  TmEngine(const MachineSpec& spec, std::string_view input, long origin);

  bool halted() const override { return spec_->is_halting(cfg_.state); }
  Verdict verdict() const override;
  void step() override;
  std::uint64_t steps() const override { return cfg_.steps; }
  Tape& tape() override { return cfg_.tape; }
  const Tape& tape() const override { return cfg_.tape; }
  long head() const override { return cfg_.head; }
  std::uint64_t control_hash() const override;
  std::string control_key() const override;

  const Configuration& configuration() const { return cfg_; }

 private:
  const MachineSpec* spec_;
  Configuration cfg_;
};

class ScanEngine final : public RunEngine {
 public:
  ScanEngine(std::shared_ptr<const ScannerProgram> prog, std::string_view input, long origin);

  bool halted() const override { return status_ != ScanStatus::Running; }
  Verdict verdict() const override;
  void step() override;
  std::uint64_t steps() const override { return steps_; }
  Tape& tape() override { return tape_; }
  const Tape& tape() const override { return tape_; }
  long head() const override { return head_; }
  std::uint64_t control_hash() const override { return ctl_.hash(); }
  std::string control_key() const override { return ctl_.key(); }

  const ScannerControl& control() const { return ctl_; }

 private:
  std::shared_ptr<const ScannerProgram> prog_;
  ScannerControl ctl_;
  ScanStatus status_ = ScanStatus::Running;
  Tape tape_;
  long head_ = 0;
  std::uint64_t steps_ = 0;
};

// Value handle over either machine kind; both expose identical step
// semantics at one tick per step.
class Machine {
 public:
  /* implicit */ Machine(MachineSpec spec) : impl_(std::move(spec)) {}
  /* implicit */ Machine(std::shared_ptr<const ScannerProgram> prog)
      : impl_(std::move(prog)) {}

  std::unique_ptr<RunEngine> start(std::string_view input, long origin = 0) const;
  bool accepts_input(std::string_view s) const;
  std::string name() const;

  const MachineSpec* tm_spec() const { return std::get_if<MachineSpec>(&impl_); }

 private:
  std::variant<MachineSpec, std::shared_ptr<const ScannerProgram>> impl_;
};

// Digest of the full instantaneous state (control + head + tape content).
std::uint64_t configuration_digest(const RunEngine& e);

}  // namespace stipsim
