#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "stipsim/engine.hpp"
#include "stipsim/rational.hpp"

namespace stipsim {

enum class ProblemId { Pr, P1, P2, P3, P4, P5, P6 };

std::string_view problem_name(ProblemId id);

using IntMatrix = std::vector<std::vector<mpz_class>>;
using RatMatrix = std::vector<std::vector<Rat>>;

// Structured inputs, one variant per problem.
struct PrInput {
  std::string lhs, rhs;  // binary numerals
  friend bool operator==(const PrInput&, const PrInput&) = default;
};
struct P1Input {
  std::array<bool, 8> assign{};  // x1..x8
  friend bool operator==(const P1Input&, const P1Input&) = default;
};
struct P2Input {
  IntMatrix a, b;
  friend bool operator==(const P2Input&, const P2Input&) = default;
};
struct P3Input {
  IntMatrix a, b;
  friend bool operator==(const P3Input&, const P3Input&) = default;
};
struct P4Input {
  std::string u;
  std::uint64_t k = 1;
  friend bool operator==(const P4Input&, const P4Input&) = default;
};
struct P5Input {
  RatMatrix a;  // invertible
  friend bool operator==(const P5Input&, const P5Input&) = default;
};
struct P6Input {
  IntMatrix q;  // natural entries, full rank
  friend bool operator==(const P6Input&, const P6Input&) = default;
};

using StructuredInput =
    std::variant<PrInput, P1Input, P2Input, P3Input, P4Input, P5Input, P6Input>;

// Direct host-arithmetic answer; output is the canonical result text for
// function problems and empty for decision problems.
struct OracleResult {
  Verdict verdict = Verdict::Accept;
  std::string output;
};

struct ProblemInstance {
  ProblemId id;
  std::string name;
  Machine machine;
  // Structural repetitions of the inner computation (2 for Pr/P1, 4 for P2,
  // 3 for P3, 1 for P5/P6); 0 for P4, whose count K comes from the input.
  unsigned repeat_count = 1;
  bool is_function_problem = false;

  std::function<std::string(const StructuredInput&)> encode;
  std::function<StructuredInput(std::string_view)> decode;
  std::function<OracleResult(const StructuredInput&)> oracle;
  // Decodes the machine's output region into the same canonical text the
  // oracle produces. Function problems only.
  std::function<std::string(const Tape&, long region_start, std::size_t region_len)> read_output;
};

ProblemInstance build_pr();
ProblemInstance build_p1();
ProblemInstance build_p2();
ProblemInstance build_p3();
ProblemInstance build_p4();
ProblemInstance build_p5();
ProblemInstance build_p6();

ProblemInstance build_problem(ProblemId id);

// Scanner-machine realizations of the two hand-encoded table machines; they
// must agree with the tables on every verdict (step counts may differ).
Machine pr_scanner_machine();
Machine p4_scanner_machine();

// The fixed 3-SAT formula evaluated by P1: literals as signed 1-based
// variable indices.
inline constexpr std::array<std::array<int, 3>, 3> kP1Clauses = {
    {{1, -5, 7}, {-2, -4, 8}, {-2, -3, 6}}};

// Exact linear algebra used by oracles and scanner programs.
IntMatrix int_matrix_multiply(const IntMatrix& a, const IntMatrix& b);
bool is_identity(const IntMatrix& m);
// Gauss-Jordan with first-nonzero pivoting; empty result when singular.
std::optional<RatMatrix> gauss_jordan_inverse(const RatMatrix& a);
// Independent route: adjugate over cofactor-expansion determinants (n <= 4),
// last-nonzero-pivot elimination otherwise.
std::optional<RatMatrix> reference_inverse(const RatMatrix& a);
std::string matrix_canonical(const RatMatrix& m);
std::string matrix_canonical(const IntMatrix& m);
RatMatrix to_rat_matrix(const IntMatrix& m);

}  // namespace stipsim
