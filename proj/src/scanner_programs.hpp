#pragma once

#include <memory>

#include "stipsim/scanner.hpp"

namespace stipsim {

// Factories for the problem-specific scanner programs. Matrix programs read
// the dimension header [n][w] off the tape, so one program instance covers
// every instance size.
std::shared_ptr<const ScannerProgram> make_p1_program();
std::shared_ptr<const ScannerProgram> make_p2_program();
std::shared_ptr<const ScannerProgram> make_p3_program();
std::shared_ptr<const ScannerProgram> make_p5_program();
std::shared_ptr<const ScannerProgram> make_p6_program();
std::shared_ptr<const ScannerProgram> make_pr_scan_program();
std::shared_ptr<const ScannerProgram> make_p4_scan_program();

}  // namespace stipsim
