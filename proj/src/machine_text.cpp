#include "stipsim/machine_text.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace stipsim {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                          : eol - pos);
    ++number;
    if (std::size_t hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    Line line{number, {}};
    std::string token;
    for (char c : raw) {
      if (c == ' ' || c == '\t' || c == '\r') {
        if (!token.empty()) line.tokens.push_back(std::move(token)), token.clear();
      } else {
        token += c;
      }
    }
    if (!token.empty()) line.tokens.push_back(std::move(token));
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return lines;
}

Symbol single_symbol(const Line& line, const std::string& token) {
  if (token.size() != 1)
    throw ParseError(line.number, "symbol '" + token + "' must be a single character");
  return token[0];
}

}  // namespace

MachineSpec parse_machine(std::string_view text) {
  std::vector<Line> lines = tokenize(text);
  std::size_t at = 0;

  auto header = [&](const char* key, std::size_t min_args) -> const Line& {
    if (at >= lines.size())
      throw ParseError(lines.empty() ? 1 : lines.back().number, std::string("expected '") + key +
                                                                    "' header before end of file");
    const Line& line = lines[at];
    if (line.tokens[0] != key)
      throw ParseError(line.number,
                       "expected '" + std::string(key) + "', got '" + line.tokens[0] + "'");
    if (line.tokens.size() < 1 + min_args)
      throw ParseError(line.number, std::string("'") + key + "' needs at least " +
                                        std::to_string(min_args) + " value(s)");
    ++at;
    return line;
  };

  const Line& states_line = header("states:", 1);
  std::vector<std::string> states(states_line.tokens.begin() + 1, states_line.tokens.end());

  const Line& input_line = header("input_alphabet:", 0);
  std::string input_alphabet;
  for (std::size_t i = 1; i < input_line.tokens.size(); ++i)
    input_alphabet += single_symbol(input_line, input_line.tokens[i]);

  const Line& tape_line = header("tape_alphabet:", 1);
  std::string tape_alphabet;
  for (std::size_t i = 1; i < tape_line.tokens.size(); ++i)
    tape_alphabet += single_symbol(tape_line, tape_line.tokens[i]);

  const Line& blank_line = header("blank:", 1);
  Symbol blank = single_symbol(blank_line, blank_line.tokens[1]);
  const std::string start = header("start:", 1).tokens[1];
  const std::string accept = header("accept:", 1).tokens[1];
  const std::string reject = header("reject:", 1).tokens[1];

  std::vector<TransitionRule> rules;
  for (; at < lines.size(); ++at) {
    const Line& line = lines[at];
    if (line.tokens.size() != 6 || line.tokens[2] != "->")
      throw ParseError(line.number,
                       "expected transition 'state symbol -> state symbol L|R'");
    TransitionRule r;
    r.from_state = line.tokens[0];
    r.read = single_symbol(line, line.tokens[1]);
    r.to_state = line.tokens[3];
    r.write = single_symbol(line, line.tokens[4]);
    if (line.tokens[5] == "L")
      r.move = Move::Left;
    else if (line.tokens[5] == "R")
      r.move = Move::Right;
    else
      throw ParseError(line.number, "move must be L or R, got '" + line.tokens[5] + "'");
    rules.push_back(std::move(r));
  }

  // Re-raise spec-level diagnostics against the transition block so the user
  // gets a line anchor even for whole-table problems like partial tables.
  try {
    return MachineSpec::create(std::move(states), std::move(input_alphabet),
                               std::move(tape_alphabet), blank, start, accept, reject, rules);
  } catch (const ParseError& e) {
    if (e.line > 0) throw;
    throw ParseError(lines.empty() ? 1 : lines.back().number, e.what());
  }
}

MachineSpec parse_machine_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open machine file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_machine(buf.str());
}

}  // namespace stipsim
