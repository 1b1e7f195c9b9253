#include "stipsim/harness.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "stipsim/machine_text.hpp"

namespace stipsim {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(trim(s.substr(pos)));
      break;
    }
    out.push_back(trim(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

std::optional<ProblemId> problem_from_name(std::string_view name) {
  for (ProblemId id : {ProblemId::Pr, ProblemId::P1, ProblemId::P2, ProblemId::P3,
                       ProblemId::P4, ProblemId::P5, ProblemId::P6})
    if (problem_name(id) == name) return id;
  return std::nullopt;
}

Tick parse_tick(const std::string& s, int line) {
  auto t = Tick::parse(s);
  if (!t) throw ParseError(line, "expected a tick count or 'inf', got '" + s + "'");
  return *t;
}

std::uint64_t parse_u64(const std::string& s, int line) {
  auto t = Tick::parse(s);
  if (!t || t->is_infinite()) throw ParseError(line, "expected an integer, got '" + s + "'");
  return t->count();
}

// "1 2; 3 4" -> rows of rational entries.
RatMatrix parse_matrix(const std::string& text, int line) {
  RatMatrix m;
  for (const std::string& row_text : split(text, ';')) {
    std::vector<Rat> row;
    std::istringstream in(row_text);
    std::string tok;
    while (in >> tok) {
      try {
        row.push_back(rat_from_string(tok));
      } catch (const ParseError&) {
        throw ParseError(line, "bad matrix entry '" + tok + "'");
      }
    }
    if (!row.empty()) m.push_back(std::move(row));
  }
  if (m.empty()) throw ParseError(line, "empty matrix");
  return m;
}

IntMatrix to_int_matrix(const RatMatrix& m, int line) {
  IntMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (const Rat& v : m[i]) {
      if (!rat_is_integer(v)) throw ParseError(line, "matrix entries must be integers here");
      out[i].push_back(v.get_num());
    }
  return out;
}

struct StructuredFields {
  std::optional<std::string> lhs, rhs, assign, u;
  std::optional<std::uint64_t> k;
  std::optional<RatMatrix> matrix_a, matrix_b;
  int line = 0;

  bool any() const { return lhs || rhs || assign || u || k || matrix_a || matrix_b; }

  StructuredInput build(ProblemId id) const {
    auto missing = [&](const char* what) -> ParseError {
      return ParseError(line, std::string("problem ") + std::string(problem_name(id)) +
                                  " needs field '" + what + "'");
    };
    switch (id) {
      case ProblemId::Pr:
        if (!lhs) throw missing("lhs");
        if (!rhs) throw missing("rhs");
        return PrInput{*lhs, *rhs};
      case ProblemId::P1: {
        if (!assign) throw missing("assign");
        if (assign->size() != 8) throw ParseError(line, "assign must be 8 T/F letters");
        P1Input p;
        for (std::size_t i = 0; i < 8; ++i) {
          char c = (*assign)[i];
          if (c != 'T' && c != 'F') throw ParseError(line, "assign must be 8 T/F letters");
          p.assign[i] = c == 'T';
        }
        return p;
      }
      case ProblemId::P2:
        if (!matrix_a) throw missing("matrix_a");
        if (!matrix_b) throw missing("matrix_b");
        return P2Input{to_int_matrix(*matrix_a, line), to_int_matrix(*matrix_b, line)};
      case ProblemId::P3:
        if (!matrix_a) throw missing("matrix_a");
        if (!matrix_b) throw missing("matrix_b");
        return P3Input{to_int_matrix(*matrix_a, line), to_int_matrix(*matrix_b, line)};
      case ProblemId::P4:
        if (!u) throw missing("u");
        if (!k) throw missing("k");
        return P4Input{*u, *k};
      case ProblemId::P5:
        if (!matrix_a) throw missing("matrix_a");
        return P5Input{*matrix_a};
      case ProblemId::P6:
        if (!matrix_a) throw missing("matrix_a");
        return P6Input{to_int_matrix(*matrix_a, line)};
    }
    throw ParseError(line, "unknown problem");
  }
};

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  StructuredFields fields;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                          : eol - pos);
    ++number;
    if (std::size_t hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (eol == std::string_view::npos)
      pos = text.size() + 1;
    else
      pos = eol + 1;
    if (line.empty()) continue;

    std::size_t colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(number, "expected 'key: value'");
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));

    if (key == "problem") {
      auto id = problem_from_name(value);
      if (!id) throw ParseError(number, "unknown problem '" + value + "'");
      cfg.problem = *id;
    } else if (key == "machine-file") {
      cfg.machine_file = value;
    } else if (key == "inputs") {
      if (value.size() < 2 || value.front() != '[' || value.back() != ']')
        throw ParseError(number, "inputs must be a [comma, separated, list]");
      for (const std::string& s : split(value.substr(1, value.size() - 2), ','))
        if (!s.empty()) cfg.inputs.push_back(s);
    } else if (key == "interval") {
      cfg.interval = parse_tick(value, number);
    } else if (key == "interval-list") {
      for (const std::string& s : split(value, ','))
        if (!s.empty()) cfg.interval_list.push_back(parse_tick(s, number));
    } else if (key == "region_start") {
      bool negative = !value.empty() && value[0] == '-';
      std::uint64_t mag = parse_u64(negative ? value.substr(1) : value, number);
      cfg.region_start = negative ? -static_cast<long>(mag) : static_cast<long>(mag);
    } else if (key == "budget") {
      cfg.budget = parse_u64(value, number);
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, number);
    } else if (key == "out") {
      cfg.out_path = value;
    } else if (key == "lhs") {
      fields.lhs = value, fields.line = number;
    } else if (key == "rhs") {
      fields.rhs = value, fields.line = number;
    } else if (key == "assign") {
      fields.assign = value, fields.line = number;
    } else if (key == "u") {
      fields.u = value, fields.line = number;
    } else if (key == "k") {
      fields.k = parse_u64(value, number), fields.line = number;
    } else if (key == "matrix_a") {
      fields.matrix_a = parse_matrix(value, number), fields.line = number;
    } else if (key == "matrix_b") {
      fields.matrix_b = parse_matrix(value, number), fields.line = number;
    } else {
      throw ParseError(number, "unknown key '" + key + "'");
    }
  }

  if (fields.any()) {
    if (!cfg.problem)
      throw ParseError(fields.line, "structured input fields need a 'problem:' line");
    ProblemInstance inst = build_problem(*cfg.problem);
    cfg.inputs.push_back(inst.encode(fields.build(*cfg.problem)));
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

const Machine& ResolvedExperiment::machine() const {
  if (instance) return instance->machine;
  return *file_machine;
}

ResolvedExperiment resolve(ExperimentConfig cfg) {
  ResolvedExperiment ex{std::move(cfg), std::nullopt, std::nullopt};
  if (ex.cfg.problem && ex.cfg.machine_file)
    throw ConfigError("give either a problem or a machine file, not both");
  if (ex.cfg.problem) {
    ex.instance = build_problem(*ex.cfg.problem);
    for (const std::string& s : ex.cfg.inputs) ex.instance->decode(s);  // domain check
  } else if (ex.cfg.machine_file) {
    ex.file_machine = Machine(parse_machine_file(*ex.cfg.machine_file));
  } else {
    throw ConfigError("no problem or machine file given");
  }
  for (const std::string& s : ex.cfg.inputs)
    if (!ex.machine().accepts_input(s))
      throw EncodingError("input '" + s + "' uses symbols outside the input alphabet");
  return ex;
}

std::pair<RunOutcome, std::unique_ptr<RunEngine>> bare_run(const Machine& machine,
                                                           std::string_view input,
                                                           std::uint64_t budget) {
  if (budget < 1) throw ConfigError("budget must be >= 1");
  auto engine = machine.start(input, 0);
  while (!engine->halted() && engine->steps() < budget) engine->step();
  RunOutcome out;
  out.steps = engine->steps();
  out.ticks = run_time(out.steps);
  if (engine->halted()) {
    out.kind = RunOutcome::Kind::Halted;
    out.verdict = engine->verdict();
  } else {
    out.kind = RunOutcome::Kind::BudgetExhausted;
    out.budget = budget;
  }
  return {out, std::move(engine)};
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::string bounds_str(const RatBounds& b) {
  if (b.exact) return rat_to_string(b.lo);
  const RatBounds r = round_outward(b, 64);
  return rat_to_string(r.lo) + "~" + rat_to_string(r.hi);
}

std::string halted_code(const ResolvedExperiment& ex, Verdict verdict, const Tape& tape,
                        std::size_t region_len) {
  if (ex.instance && ex.instance->is_function_problem && verdict == Verdict::Accept)
    return "halt:" + ex.instance->read_output(tape, ex.cfg.region_start, region_len);
  return std::string(verdict_name(verdict));
}

std::string outcome_code(const ResolvedExperiment& ex, const StipulatedRunRecord& rec,
                         std::size_t region_len) {
  switch (rec.outcome.kind) {
    case RunOutcome::Kind::Halted:
      return halted_code(ex, *rec.outcome.verdict, rec.final_tape, region_len);
    case RunOutcome::Kind::ProvenDiverging:
      return "cycle";
    case RunOutcome::Kind::BudgetExhausted:
      return "budget";
  }
  return "?";
}

std::string bare_code(const ResolvedExperiment& ex, std::string_view input) {
  auto [outcome, engine] = bare_run(ex.machine(), input, ex.cfg.budget);
  if (!outcome.halted()) return "budget";
  return halted_code(ex, *outcome.verdict, engine->tape(), input.size());
}

struct TransformRow {
  std::string fn = "-", f = "-", case_label = "-";
};

// Transform columns for a measured bare N (c = N * T_t form).
TransformRow transform_row(std::uint64_t n, Tick t) {
  TransformRow row;
  if (n < 1) return row;
  TransformParams params = TransformParams::with_c_n(n, t);
  NormalizedValue fn = f_normalized(params);
  TransformValue f = f_transform(params);
  TransformCase c = classify_case(fn, f, rat_from_u64(n));
  row.fn = rat_to_string(fn.value);
  row.f = bounds_str(f.value);
  row.case_label = std::string(case_name(c));
  return row;
}

StipulationSchedule schedule_for(const ResolvedExperiment& ex, Tick interval,
                                 std::size_t first_input) {
  std::vector<std::string> stream;
  const std::size_t n = ex.cfg.inputs.size();
  for (std::size_t i = 0; i < n; ++i) stream.push_back(ex.cfg.inputs[(first_input + i) % n]);
  return StipulationSchedule::create(interval, std::move(stream), ex.cfg.region_start);
}

std::string machine_label(const ResolvedExperiment& ex) {
  if (ex.instance) return std::string(problem_name(ex.instance->id));
  return *ex.cfg.machine_file;
}

}  // namespace

DriveResult drive_run(const ResolvedExperiment& ex) {
  if (ex.cfg.inputs.empty()) throw ConfigError("run needs an input");
  const Tick interval = ex.cfg.interval.value_or(Tick::infinity());
  const std::string& input = ex.cfg.inputs.front();

  auto [bare, bare_engine] = bare_run(ex.machine(), input, ex.cfg.budget);
  StipulatedRunRecord rec = stip_run(ex.machine(), schedule_for(ex, interval, 0), ex.cfg.budget);

  DriveResult result;
  std::ostringstream human;
  human << "machine: " << machine_label(ex) << "\n";
  human << "input: " << input << "\n";
  std::string n_text = bare.halted() ? std::to_string(bare.steps) : "budget-exhausted";
  TransformRow tr;
  if (bare.halted()) tr = transform_row(bare.steps, interval);
  human << "N: " << n_text << "\n";
  human << "f(P): " << (bare.halted() ? std::to_string(bare.steps) + " ticks" : "-") << "\n";
  human << "T: " << interval.to_string() << "\n";
  human << "f(P,T): " << tr.f << "\n";
  human << "f_n: " << tr.fn << "\n";
  human << "case: " << tr.case_label << "\n";
  const std::string code = outcome_code(ex, rec, input.size());
  human << "outcome: " << code << "\n";
  human << "rewrites: " << rec.rewrite_count << "\n";
  result.human = human.str();

  std::ostringstream csv;
  csv << "# seed: " << ex.cfg.seed << "\n";
  csv << "machine,input,T,N,fP,f,fn,case,outcome,steps,rewrites\n";
  csv << csv_field(machine_label(ex)) << ',' << csv_field(input) << ',' << interval.to_string()
      << ',' << n_text << ',' << (bare.halted() ? std::to_string(bare.steps) : "-") << ','
      << csv_field(tr.f) << ',' << csv_field(tr.fn) << ',' << tr.case_label << ','
      << csv_field(code) << ',' << rec.outcome.steps << ',' << rec.rewrite_count << "\n";
  result.csv = csv.str();
  result.exit_code = rec.outcome.halted() ? 0 : 2;
  return result;
}

DriveResult drive_sweep(const ResolvedExperiment& ex) {
  if (ex.cfg.inputs.empty()) throw ConfigError("sweep needs an input");
  const std::string& input = ex.cfg.inputs.front();

  auto [bare, bare_engine] = bare_run(ex.machine(), input, ex.cfg.budget);
  if (!bare.halted())
    throw ConfigError("bare run exhausted its budget; sweep needs a measured N");
  const std::uint64_t n = bare.steps;

  std::vector<Tick> ticks = ex.cfg.interval_list;
  if (ticks.empty()) {
    ticks = {Tick::infinity(), Tick(4 * n), Tick(2 * n), Tick(n + 1),
             Tick(n),          Tick(n - 1), Tick(n / 2), Tick(1)};
  }
  ticks.push_back(inflection_threshold(n));
  std::sort(ticks.begin(), ticks.end(), [](Tick a, Tick b) { return b < a; });
  ticks.erase(std::unique(ticks.begin(), ticks.end()), ticks.end());
  ticks.erase(std::remove_if(ticks.begin(), ticks.end(),
                             [](Tick t) { return !t.is_infinite() && t.count() < 1; }),
              ticks.end());

  struct Row {
    Tick t;
    TransformRow tr;
    std::string code;
    std::uint64_t steps, rewrites;
    bool halted;
  };
  std::vector<Row> rows;
  for (Tick t : ticks) {
    StipulatedRunRecord rec = stip_run(ex.machine(), schedule_for(ex, t, 0), ex.cfg.budget);
    rows.push_back(Row{t, transform_row(n, t), outcome_code(ex, rec, input.size()),
                       rec.outcome.steps, rec.rewrite_count, rec.outcome.halted()});
  }

  // Empirical upward-closure of the halting set: every interval above the
  // smallest halting one should halt too. Violations are reported, not hidden.
  std::optional<Tick> smallest_halting;
  for (const Row& r : rows)
    if (r.halted && (!smallest_halting || r.t < *smallest_halting)) smallest_halting = r.t;
  std::vector<std::string> violations;
  if (smallest_halting)
    for (const Row& r : rows)
      if (!r.halted && *smallest_halting < r.t) violations.push_back(r.t.to_string());

  std::ostringstream csv;
  csv << "# seed: " << ex.cfg.seed << "\n";
  csv << "# machine: " << machine_label(ex) << "\n";
  csv << "# input: " << input << "\n";
  csv << "# N: " << n << "\n";
  csv << "# inflection_threshold: " << inflection_threshold(n).to_string() << "\n";
  csv << "T,fn,f,case,outcome,steps,rewrites\n";
  for (const Row& r : rows)
    csv << r.t.to_string() << ',' << csv_field(r.tr.fn) << ',' << csv_field(r.tr.f) << ','
        << r.tr.case_label << ',' << csv_field(r.code) << ',' << r.steps << ',' << r.rewrites
        << "\n";
  if (violations.empty()) {
    csv << "# halting-upward-closed: yes\n";
  } else {
    csv << "# halting-upward-closed: violation at T=";
    for (std::size_t i = 0; i < violations.size(); ++i) csv << (i ? " " : "") << violations[i];
    csv << "\n";
  }

  DriveResult result;
  result.csv = csv.str();
  result.human = result.csv;
  result.exit_code = 0;
  return result;
}

DriveResult drive_grid(const ResolvedExperiment& ex) {
  if (ex.cfg.inputs.size() < 2) throw ConfigError("grid needs at least 2 inputs");
  if (ex.cfg.interval_list.size() < 2) throw ConfigError("grid needs at least 2 intervals");

  std::vector<std::string> bare_codes;
  for (const std::string& input : ex.cfg.inputs) bare_codes.push_back(bare_code(ex, input));

  std::ostringstream csv;
  csv << "# seed: " << ex.cfg.seed << "\n";
  csv << "# machine: " << machine_label(ex) << "\n";
  for (std::size_t i = 0; i < ex.cfg.inputs.size(); ++i)
    csv << "# input " << (i + 1) << ": " << ex.cfg.inputs[i] << "\n";
  csv << "n\\T";
  for (Tick t : ex.cfg.interval_list) csv << ',' << t.to_string();
  csv << "\n";
  for (std::size_t i = 0; i < ex.cfg.inputs.size(); ++i) {
    csv << (i + 1);
    for (Tick t : ex.cfg.interval_list) {
      StipulatedRunRecord rec = stip_run(ex.machine(), schedule_for(ex, t, i), ex.cfg.budget);
      std::string code = outcome_code(ex, rec, ex.cfg.inputs[i].size());
      if (t.is_infinite() && code != bare_codes[i])
        throw ContractError("T=inf grid cell differs from the bare verdict");
      csv << ',' << csv_field(code);
    }
    csv << "\n";
  }

  DriveResult result;
  result.csv = csv.str();
  result.human = result.csv;
  result.exit_code = 0;
  return result;
}

DriveResult drive_classify(std::uint64_t n_steps, Tick t, std::optional<Rat> c) {
  if (n_steps < 1) throw DomainError("classify needs N >= 1");
  TransformParams params = c ? TransformParams::with_c(n_steps, t, *c)
                             : TransformParams::with_c_n(n_steps, t);
  NormalizedValue fn = f_normalized(params);
  TransformValue f = f_transform(params);
  std::ostringstream human;
  human << "N: " << n_steps << "\n";
  human << "T: " << t.to_string() << "\n";
  human << "c: " << rat_to_string(params.c) << "\n";
  human << "f(P): " << n_steps << " ticks\n";
  human << "f(P,T): " << bounds_str(f.value) << "\n";
  human << "f_n: " << rat_to_string(fn.value) << " (" << region_name(fn.region) << ")\n";
  DriveResult result;
  std::string case_label = "-";
  if (!c || *c == rat_from_u64(n_steps)) {
    TransformCase tc = classify_case(fn, f, rat_from_u64(n_steps));
    case_label = std::string(case_name(tc));
  }
  human << "case: " << case_label << "\n";
  result.human = human.str();
  std::ostringstream csv;
  csv << "N,T,c,fP,f,fn,region,case\n";
  csv << n_steps << ',' << t.to_string() << ',' << rat_to_string(params.c) << ',' << n_steps << ','
      << csv_field(bounds_str(f.value)) << ',' << csv_field(rat_to_string(fn.value)) << ','
      << region_name(fn.region) << ',' << case_label << "\n";
  result.csv = csv.str();
  return result;
}

}  // namespace stipsim
