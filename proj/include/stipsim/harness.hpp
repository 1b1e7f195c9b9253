#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stipsim/problems.hpp"
#include "stipsim/stipulation.hpp"
#include "stipsim/transform.hpp"

namespace stipsim {

// Assembled from CLI flags and/or a `key: value` config file.
struct ExperimentConfig {
  std::optional<ProblemId> problem;
  std::optional<std::string> machine_file;
  // Encoded input strings; the first is the primary input, the full list is
  // the stipulation stream (and the grid's input rows).
  std::vector<std::string> inputs;
  std::optional<Tick> interval;
  std::vector<Tick> interval_list;
  std::uint64_t budget = 1000000;
  std::uint64_t seed = 1;
  long region_start = 0;
  std::string out_path;
};

// Parses the line-based config format:
//
//   problem: pr                      # or machine-file: path
//   inputs: [110+101010, 1100+10110]
//   interval: inf
//   interval-list: inf, 49, 12, 1
//   region_start: 0
//   budget: 1000000
//   seed: 1
//   out: sweep.csv
//   lhs: 110                         # problem-specific structured fields
//   rhs: 101010                      # (define one more input)
//   assign: TTTTTTTT
//   matrix_a: 1 2; 3 4
//   matrix_b: 5 6; 7 8
//   u: 1011
//   k: 2
//
// '#' comments. Structured fields are encoded once the problem is known and
// appended to inputs.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig parse_config_file(const std::string& path);

// Validated machine + encoded inputs, ready to drive.
struct ResolvedExperiment {
  ExperimentConfig cfg;
  std::optional<ProblemInstance> instance;  // problem mode
  std::optional<Machine> file_machine;      // machine-file mode

  const Machine& machine() const;
};

ResolvedExperiment resolve(ExperimentConfig cfg);

struct DriveResult {
  std::string human;  // printable report
  std::string csv;
  int exit_code = 0;  // 0 halted, 2 diverging-or-budget (run command)
};

// Bare run + one stipulated run; reports N, f(P), f(P,T), f_n, case, outcome
// and rewrite count.
DriveResult drive_run(const ResolvedExperiment& ex);

// One stipulated run per interval, sorted by T descending, with the
// inflection threshold row always included. CSV schema:
// T,fn,f,case,outcome,steps,rewrites
DriveResult drive_sweep(const ResolvedExperiment& ex);

// Outcome matrix: one row per input, one column per interval.
DriveResult drive_grid(const ResolvedExperiment& ex);

// Pure arithmetic: no simulation.
DriveResult drive_classify(std::uint64_t n_steps, Tick t, std::optional<Rat> c);

// Bare (unstipulated) run of either machine kind at origin 0.
std::pair<RunOutcome, std::unique_ptr<RunEngine>> bare_run(const Machine& machine,
                                                           std::string_view input,
                                                           std::uint64_t budget);

// RFC-4180-style field quoting.
std::string csv_field(std::string_view s);

}  // namespace stipsim
