#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "stipsim/harness.hpp"
#include "stipsim/machine_text.hpp"

namespace {

using namespace stipsim;

struct CommonFlags {
  std::string config_path;
  std::string problem;
  std::string machine_file;
  std::vector<std::string> inputs;
  std::vector<std::string> stream;
  std::string interval;
  std::string interval_list;
  std::string budget;
  std::string seed;
  std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("config", flags.config_path, "config file (key: value lines)");
  cmd->add_option("--problem", flags.problem, "problem: pr|p1|p2|p3|p4|p5|p6");
  cmd->add_option("--machine-file", flags.machine_file, "machine description file");
  cmd->add_option("--input", flags.inputs, "encoded input string (repeatable)");
  cmd->add_option("--stream", flags.stream, "additional stream entries (repeatable)");
  cmd->add_option("--interval", flags.interval, "variation interval in ticks, or inf");
  cmd->add_option("--interval-list", flags.interval_list, "comma-separated interval list");
  cmd->add_option("--budget", flags.budget, "step budget (default 1000000)");
  cmd->add_option("--seed", flags.seed, "report seed stamp");
  cmd->add_option("--out", flags.out, "CSV output path (default stdout)");
}

ExperimentConfig assemble(const CommonFlags& flags) {
  ExperimentConfig cfg;
  if (!flags.config_path.empty()) cfg = parse_config_file(flags.config_path);

  std::string overrides;
  if (!flags.problem.empty()) overrides += "problem: " + flags.problem + "\n";
  if (!flags.machine_file.empty()) overrides += "machine-file: " + flags.machine_file + "\n";
  if (!flags.interval.empty()) overrides += "interval: " + flags.interval + "\n";
  if (!flags.interval_list.empty()) overrides += "interval-list: " + flags.interval_list + "\n";
  if (!flags.budget.empty()) overrides += "budget: " + flags.budget + "\n";
  if (!flags.seed.empty()) overrides += "seed: " + flags.seed + "\n";
  ExperimentConfig over = parse_config(overrides);

  if (over.problem) cfg.problem = over.problem, cfg.machine_file.reset();
  if (over.machine_file) cfg.machine_file = over.machine_file, cfg.problem.reset();
  if (over.interval) cfg.interval = over.interval;
  if (!over.interval_list.empty()) cfg.interval_list = over.interval_list;
  if (!flags.budget.empty()) cfg.budget = over.budget;
  if (!flags.seed.empty()) cfg.seed = over.seed;
  if (!flags.out.empty()) cfg.out_path = flags.out;
  for (const std::string& s : flags.inputs) cfg.inputs.push_back(s);
  for (const std::string& s : flags.stream) cfg.inputs.push_back(s);
  return cfg;
}

void emit(const DriveResult& result, const std::string& out_path, bool human_to_stdout) {
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + out_path + "'");
    out << result.csv;
    if (human_to_stdout) std::cout << result.human;
  } else if (human_to_stdout) {
    std::cout << result.human;
  } else {
    std::cout << result.csv;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"co-simulation of a machine under periodic input rewrites"};
  app.require_subcommand(1);

  CommonFlags run_flags, sweep_flags, grid_flags;
  CLI::App* run = app.add_subcommand("run", "bare run + one stipulated run");
  add_common(run, run_flags);
  CLI::App* sweep = app.add_subcommand("sweep", "stipulated runs across an interval list");
  add_common(sweep, sweep_flags);
  CLI::App* grid = app.add_subcommand("grid", "outcome matrix: inputs x intervals");
  add_common(grid, grid_flags);

  std::string cls_n, cls_t, cls_c, cls_out;
  CLI::App* classify = app.add_subcommand("classify", "pure transform arithmetic, no simulation");
  classify->add_option("N", cls_n, "bare step count")->required();
  classify->add_option("T", cls_t, "variation interval (ticks or inf)")->required();
  classify->add_option("c", cls_c, "exponent constant (default N)");
  classify->add_option("--out", cls_out, "CSV output path");

  std::string check_path;
  CLI::App* parse_check = app.add_subcommand("parse-check", "validate a machine file");
  parse_check->add_option("file", check_path, "machine description file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      ExperimentConfig cfg = assemble(run_flags);
      DriveResult r = drive_run(resolve(cfg));
      emit(r, cfg.out_path, true);
      return r.exit_code;
    }
    if (sweep->parsed()) {
      ExperimentConfig cfg = assemble(sweep_flags);
      DriveResult r = drive_sweep(resolve(cfg));
      emit(r, cfg.out_path, false);
      return r.exit_code;
    }
    if (grid->parsed()) {
      ExperimentConfig cfg = assemble(grid_flags);
      DriveResult r = drive_grid(resolve(cfg));
      emit(r, cfg.out_path, false);
      return r.exit_code;
    }
    if (classify->parsed()) {
      auto n = Tick::parse(cls_n);
      auto t = Tick::parse(cls_t);
      if (!n || n->is_infinite() || !t) throw ConfigError("classify needs N and T");
      std::optional<Rat> c;
      if (!cls_c.empty()) c = rat_from_string(cls_c);
      DriveResult r = drive_classify(n->count(), *t, c);
      emit(r, cls_out, cls_out.empty());
      return 0;
    }
    if (parse_check->parsed()) {
      MachineSpec spec = parse_machine_file(check_path);
      std::cout << "ok: " << spec.states().size() << " states, "
                << spec.tape_alphabet().size() << " tape symbols, blank '" << spec.blank()
                << "', start " << spec.state_name(spec.start_state()) << "\n";
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const EncodingError& e) {
    std::cerr << "encoding error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
