#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stipsim/machine.hpp"
#include "stipsim/rational.hpp"

namespace stipsim {

enum class ScanStatus { Running, Accept, Reject };

// Control state of a scanner machine: a phase plus exact-rational registers.
// Everything the program remembers lives here, so two runs in identical
// control states reading identical cells behave identically.
struct ScannerControl {
  int phase = 0;
  std::vector<Rat> regs;

  std::string key() const;  // canonical serialization
  std::uint64_t hash() const;
  friend bool operator==(const ScannerControl& a, const ScannerControl& b) {
    return a.phase == b.phase && a.regs == b.regs;
  }
};

// What one step does: optionally rewrite the current cell, move the head by
// at most one position, report the new status. Exactly one cell is read or
// written per step and each step costs one tick.
struct ScannerAction {
  std::optional<Symbol> write;
  int move = 0;  // -1, 0, +1
  ScanStatus status = ScanStatus::Running;
};

// Problem-specific finite-control program driving a single tape head. The
// stepping interface hands the program one cell per tick; it can never see
// more, which is what lets mid-computation input rewrites perturb multi-pass
// computations.
class ScannerProgram {
 public:
  virtual ~ScannerProgram() = default;
  virtual std::string name() const = 0;
  // Symbols this program accepts in its input region.
  virtual const std::string& input_alphabet() const = 0;
  virtual ScannerControl initial() const = 0;
  // Pure function of (control, symbol); mutates ctl to the successor control.
  virtual ScannerAction step(ScannerControl& ctl, Symbol sym) const = 0;
};

}  // namespace stipsim
