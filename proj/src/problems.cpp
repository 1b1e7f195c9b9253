#include "stipsim/problems.hpp"

#include <algorithm>

#include "scanner_programs.hpp"
#include "stipsim/table_builder.hpp"

namespace stipsim {

std::string_view problem_name(ProblemId id) {
  switch (id) {
    case ProblemId::Pr: return "pr";
    case ProblemId::P1: return "p1";
    case ProblemId::P2: return "p2";
    case ProblemId::P3: return "p3";
    case ProblemId::P4: return "p4";
    case ProblemId::P5: return "p5";
    case ProblemId::P6: return "p6";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Exact linear algebra.

IntMatrix int_matrix_multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

bool is_identity(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

RatMatrix to_rat_matrix(const IntMatrix& m) {
  RatMatrix r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (const mpz_class& v : m[i]) r[i].emplace_back(v);
  return r;
}

std::optional<RatMatrix> gauss_jordan_inverse(const RatMatrix& a) {
  const std::size_t n = a.size();
  RatMatrix work = a;
  RatMatrix inv(n, std::vector<Rat>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    // first nonzero pivot at or below the diagonal
    std::size_t pivot = col;
    while (pivot < n && work[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(work[pivot], work[col]);
    std::swap(inv[pivot], inv[col]);
    const Rat p = work[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      work[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || work[r][col] == 0) continue;
      const Rat factor = work[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        work[r][j] -= factor * work[col][j];
        inv[r][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

namespace {

Rat cofactor_determinant(const RatMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Rat det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    RatMatrix minor(n - 1, std::vector<Rat>(n - 1));
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) minor[r - 1][cc++] = m[r][c];
    }
    Rat term = m[0][j] * cofactor_determinant(minor);
    det += (j % 2 == 0) ? term : -term;
  }
  return det;
}

}  // namespace

std::optional<RatMatrix> reference_inverse(const RatMatrix& a) {
  const std::size_t n = a.size();
  if (n <= 4) {
    // adjugate over cofactor-expansion determinants
    const Rat det = cofactor_determinant(a);
    if (det == 0) return std::nullopt;
    RatMatrix inv(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        RatMatrix minor(n - 1, std::vector<Rat>(n - 1));
        for (std::size_t r = 0, rr = 0; r < n; ++r) {
          if (r == i) continue;
          for (std::size_t c = 0, cc = 0; c < n; ++c) {
            if (c == j) continue;
            minor[rr][cc++] = a[r][c];
          }
          ++rr;
        }
        Rat cof = cofactor_determinant(minor);
        if ((i + j) % 2 == 1) cof = -cof;
        inv[j][i] = cof / det;  // adjugate transposes
      }
    }
    return inv;
  }
  // independent elimination route: eliminate columns right-to-left picking
  // the last usable pivot
  RatMatrix work = a;
  RatMatrix inv(n, std::vector<Rat>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = n; col-- > 0;) {
    std::size_t pivot = col + 1;
    while (pivot-- > 0)
      if (work[pivot][col] != 0) break;
    if (work[pivot][col] == 0) return std::nullopt;
    std::swap(work[pivot], work[col]);
    std::swap(inv[pivot], inv[col]);
    const Rat p = work[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      work[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || work[r][col] == 0) continue;
      const Rat factor = work[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        work[r][j] -= factor * work[col][j];
        inv[r][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

std::string matrix_canonical(const RatMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (j) out += ',';
      out += m[i][j].get_str();
    }
  }
  return out;
}

std::string matrix_canonical(const IntMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (j) out += ',';
      out += m[i][j].get_str();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Encoders and their inverses.

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw EncodingError(msg);
}

void require_binary(const std::string& s, const char* what) {
  require(!s.empty(), std::string(what) + " must be nonempty");
  for (char c : s)
    require(c == '0' || c == '1', std::string(what) + " must be a binary numeral");
}

std::size_t digits10(const mpz_class& v) {
  mpz_class a = abs(v);
  return mpz_sizeinbase(a.get_mpz_t(), 10);
}

void check_square(const IntMatrix& m, const char* what) {
  require(!m.empty() && m.size() <= 9, std::string(what) + " must be n x n with 1 <= n <= 9");
  for (const auto& row : m)
    require(row.size() == m.size(), std::string(what) + " must be square");
}

std::string pad_digits(const mpz_class& v, std::size_t w) {
  const mpz_class a = abs(v);
  std::string d = a.get_str();
  require(d.size() <= w, "entry too wide for the chosen width");
  return std::string(w - d.size(), '0') + d;
}

// [n][w] + sign/digit entries for two square matrices, row-major A then B.
std::string encode_int_pair(const IntMatrix& a, const IntMatrix& b) {
  check_square(a, "matrix A");
  check_square(b, "matrix B");
  require(a.size() == b.size(), "matrices must have matching dimensions");
  std::size_t w = 1;
  for (const auto* m : {&a, &b})
    for (const auto& row : *m)
      for (const auto& v : row) w = std::max(w, digits10(v));
  require(w <= 9, "entries limited to 9 digits");
  std::string out;
  out += static_cast<char>('0' + a.size());
  out += static_cast<char>('0' + w);
  for (const auto* m : {&a, &b})
    for (const auto& row : *m)
      for (const auto& v : row) {
        out += v < 0 ? '-' : '+';
        out += pad_digits(v, w);
      }
  return out;
}

std::pair<IntMatrix, IntMatrix> decode_int_pair(std::string_view s) {
  require(s.size() >= 2, "truncated matrix encoding");
  const std::size_t n = static_cast<std::size_t>(s[0] - '0');
  const std::size_t w = static_cast<std::size_t>(s[1] - '0');
  require(n >= 1 && n <= 9 && w >= 1 && w <= 9, "bad matrix header");
  require(s.size() == 2 + 2 * n * n * (w + 1), "matrix encoding has the wrong length");
  std::size_t at = 2;
  auto read_matrix = [&] {
    IntMatrix m(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const char sign = s[at++];
        require(sign == '+' || sign == '-', "bad entry sign");
        mpz_class v(std::string(s.substr(at, w)), 10);
        at += w;
        m[i][j] = sign == '-' ? mpz_class(-v) : v;
      }
    return m;
  };
  IntMatrix a = read_matrix(), b = read_matrix();
  return {std::move(a), std::move(b)};
}

// [n][w] + sign num '/' den entries.
std::string encode_rat_matrix(const RatMatrix& a) {
  require(!a.empty() && a.size() <= 9, "matrix must be n x n with 1 <= n <= 9");
  for (const auto& row : a) require(row.size() == a.size(), "matrix must be square");
  std::size_t w = 1;
  for (const auto& row : a)
    for (const Rat& v : row) {
      w = std::max(w, digits10(v.get_num()));
      w = std::max(w, digits10(v.get_den()));
    }
  require(w <= 9, "entries limited to 9 digits");
  std::string out;
  out += static_cast<char>('0' + a.size());
  out += static_cast<char>('0' + w);
  for (const auto& row : a)
    for (const Rat& v : row) {
      out += v < 0 ? '-' : '+';
      out += pad_digits(v.get_num(), w);
      out += '/';
      out += pad_digits(v.get_den(), w);
    }
  return out;
}

RatMatrix decode_rat_matrix(std::string_view s) {
  require(s.size() >= 2, "truncated matrix encoding");
  const std::size_t n = static_cast<std::size_t>(s[0] - '0');
  const std::size_t w = static_cast<std::size_t>(s[1] - '0');
  require(n >= 1 && n <= 9 && w >= 1 && w <= 9, "bad matrix header");
  require(s.size() == 2 + n * n * (2 * w + 2), "matrix encoding has the wrong length");
  std::size_t at = 2;
  RatMatrix m(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const char sign = s[at++];
      require(sign == '+' || sign == '-', "bad entry sign");
      mpz_class num(std::string(s.substr(at, w)), 10);
      at += w;
      require(s[at] == '/', "missing '/' in rational entry");
      ++at;
      mpz_class den(std::string(s.substr(at, w)), 10);
      at += w;
      require(den != 0, "zero denominator");
      m[i][j] = make_rat(sign == '-' ? mpz_class(-num) : num, den);
    }
  return m;
}

// [n][w] + natural fixed-width entries.
std::string encode_nat_matrix(const IntMatrix& q) {
  check_square(q, "matrix Q");
  std::size_t w = 1;
  for (const auto& row : q)
    for (const auto& v : row) {
      require(v >= 0, "entries must be natural numbers");
      w = std::max(w, digits10(v));
    }
  require(w <= 9, "entries limited to 9 digits");
  std::string out;
  out += static_cast<char>('0' + q.size());
  out += static_cast<char>('0' + w);
  for (const auto& row : q)
    for (const auto& v : row) out += pad_digits(v, w);
  return out;
}

IntMatrix decode_nat_matrix(std::string_view s) {
  require(s.size() >= 2, "truncated matrix encoding");
  const std::size_t n = static_cast<std::size_t>(s[0] - '0');
  const std::size_t w = static_cast<std::size_t>(s[1] - '0');
  require(n >= 1 && n <= 9 && w >= 1 && w <= 9, "bad matrix header");
  require(s.size() == 2 + n * n * w, "matrix encoding has the wrong length");
  std::size_t at = 2;
  IntMatrix m(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = mpz_class(std::string(s.substr(at, w)), 10);
      at += w;
    }
  return m;
}

std::string window_until_blank(const Tape& tape, long start) {
  std::string out;
  for (long i = start; tape.read(i) != tape.blank(); ++i) out += tape.read(i);
  return out;
}

mpz_class binary_value(const std::string& s) {
  mpz_class v = 0;
  for (char c : s) v = v * 2 + (c - '0');
  return v;
}

template <typename T>
const T& as(const StructuredInput& in, const char* what) {
  const T* p = std::get_if<T>(&in);
  if (!p) throw EncodingError(std::string("structured input is not a ") + what + " input");
  return *p;
}

}  // namespace

// ---------------------------------------------------------------------------
// Instances.

ProblemInstance build_pr() {
  ProblemInstance inst{ProblemId::Pr, "pr", Machine(pr_machine_spec()), 2, false, {}, {}, {}, {}};
  inst.encode = [](const StructuredInput& in) {
    const auto& pr = as<PrInput>(in, "pr");
    require_binary(pr.lhs, "lhs");
    require_binary(pr.rhs, "rhs");
    return pr.lhs + "+" + pr.rhs;
  };
  inst.decode = [](std::string_view s) -> StructuredInput {
    const std::size_t plus = s.find('+');
    require(plus != std::string_view::npos && s.rfind('+') == plus,
            "expected exactly one '+' in the numeral pair");
    PrInput pr{std::string(s.substr(0, plus)), std::string(s.substr(plus + 1))};
    require_binary(pr.lhs, "lhs");
    require_binary(pr.rhs, "rhs");
    return pr;
  };
  inst.oracle = [](const StructuredInput& in) {
    const auto& pr = as<PrInput>(in, "pr");
    const mpz_class sum = binary_value(pr.lhs) + binary_value(pr.rhs);
    return OracleResult{mpz_even_p(sum.get_mpz_t()) ? Verdict::Accept : Verdict::Reject, ""};
  };
  return inst;
}

ProblemInstance build_p1() {
  ProblemInstance inst{ProblemId::P1, "p1", Machine(make_p1_program()), 2, false, {}, {}, {}, {}};
  inst.encode = [](const StructuredInput& in) {
    const auto& p = as<P1Input>(in, "p1");
    std::string s;
    for (bool v : p.assign) s += v ? 'T' : 'F';
    return s;
  };
  inst.decode = [](std::string_view s) -> StructuredInput {
    require(s.size() == 8, "assignment must cover x1..x8");
    P1Input p;
    for (std::size_t i = 0; i < 8; ++i) {
      require(s[i] == 'T' || s[i] == 'F', "assignment symbols are T/F");
      p.assign[i] = s[i] == 'T';
    }
    return p;
  };
  inst.oracle = [](const StructuredInput& in) {
    const auto& p = as<P1Input>(in, "p1");
    bool formula = true;
    for (const auto& clause : kP1Clauses) {
      bool sat = false;
      for (int lit : clause) {
        const bool v = p.assign[static_cast<std::size_t>(std::abs(lit) - 1)];
        sat = sat || (lit > 0 ? v : !v);
      }
      formula = formula && sat;
    }
    return OracleResult{formula ? Verdict::Accept : Verdict::Reject, ""};
  };
  return inst;
}

ProblemInstance build_p2() {
  ProblemInstance inst{ProblemId::P2, "p2", Machine(make_p2_program()), 4, false, {}, {}, {}, {}};
  inst.encode = [](const StructuredInput& in) {
    const auto& p = as<P2Input>(in, "p2");
    return encode_int_pair(p.a, p.b);
  };
  inst.decode = [](std::string_view s) -> StructuredInput {
    auto [a, b] = decode_int_pair(s);
    return P2Input{std::move(a), std::move(b)};
  };
  inst.oracle = [](const StructuredInput& in) {
    const auto& p = as<P2Input>(in, "p2");
    const IntMatrix c = int_matrix_multiply(p.a, p.b);
    const std::size_t n = c.size();
    const bool ge = c[0][0] * c[0][n - 1] >= c[n - 1][n - 1] * c[n - 1][0];
    return OracleResult{ge ? Verdict::Accept : Verdict::Reject, ""};
  };
  return inst;
}

ProblemInstance build_p3() {
  ProblemInstance inst{ProblemId::P3, "p3", Machine(make_p3_program()), 3, false, {}, {}, {}, {}};
  inst.encode = [](const StructuredInput& in) {
    const auto& p = as<P3Input>(in, "p3");
    return encode_int_pair(p.a, p.b);
  };
  inst.decode = [](std::string_view s) -> StructuredInput {
    auto [a, b] = decode_int_pair(s);
    return P3Input{std::move(a), std::move(b)};
  };
  inst.oracle = [](const StructuredInput& in) {
    const auto& p = as<P3Input>(in, "p3");
    const bool id = is_identity(int_matrix_multiply(p.a, p.b));
    return OracleResult{id ? Verdict::Accept : Verdict::Reject, ""};
  };
  return inst;
}

ProblemInstance build_p4() {
  ProblemInstance inst{ProblemId::P4, "p4", Machine(p4_machine_spec()), 0, true, {}, {}, {}, {}};
  inst.encode = [](const StructuredInput& in) {
    const auto& p = as<P4Input>(in, "p4");
    require_binary(p.u, "u");
    if (p.k < 1) throw DomainError("K must be >= 1");
    require(p.k <= 64, "K limited to 64 in encodings");
    return p.u + "=" + std::string(static_cast<std::size_t>(p.k), '*');
  };
  inst.decode = [](std::string_view s) -> StructuredInput {
    const std::size_t hash = s.find('=');
    require(hash != std::string_view::npos, "missing '=' separator");
    P4Input p{std::string(s.substr(0, hash)), s.size() - hash - 1};
    require_binary(p.u, "u");
    if (p.k < 1) throw DomainError("K must be >= 1");
    for (char c : s.substr(hash + 1)) require(c == '*', "count area must be stars");
    return p;
  };
  inst.oracle = [](const StructuredInput& in) {
    const auto& p = as<P4Input>(in, "p4");
    const auto ones = std::count(p.u.begin(), p.u.end(), '1');
    return OracleResult{Verdict::Accept, std::to_string(ones)};
  };
  inst.read_output = [](const Tape& tape, long region_start, std::size_t region_len) {
    const std::string strip =
        window_until_blank(tape, region_start + static_cast<long>(region_len) + 1);
    return std::to_string(std::count(strip.begin(), strip.end(), '|'));
  };
  return inst;
}

ProblemInstance build_p5() {
  ProblemInstance inst{ProblemId::P5, "p5", Machine(make_p5_program()), 1, true, {}, {}, {}, {}};
  inst.encode = [](const StructuredInput& in) {
    const auto& p = as<P5Input>(in, "p5");
    if (!gauss_jordan_inverse(p.a)) throw DomainError("matrix A must be invertible");
    return encode_rat_matrix(p.a);
  };
  inst.decode = [](std::string_view s) -> StructuredInput {
    P5Input p{decode_rat_matrix(s)};
    if (!gauss_jordan_inverse(p.a)) throw DomainError("matrix A must be invertible");
    return p;
  };
  inst.oracle = [](const StructuredInput& in) {
    const auto& p = as<P5Input>(in, "p5");
    auto inv = reference_inverse(p.a);
    if (!inv) throw DomainError("matrix A must be invertible");
    return OracleResult{Verdict::Accept, matrix_canonical(*inv)};
  };
  inst.read_output = [](const Tape& tape, long region_start, std::size_t region_len) {
    return window_until_blank(tape, region_start + static_cast<long>(region_len) + 1);
  };
  return inst;
}

ProblemInstance build_p6() {
  ProblemInstance inst{ProblemId::P6, "p6", Machine(make_p6_program()), 1, true, {}, {}, {}, {}};
  inst.encode = [](const StructuredInput& in) {
    const auto& p = as<P6Input>(in, "p6");
    if (!gauss_jordan_inverse(to_rat_matrix(p.q))) throw DomainError("matrix Q must have full rank");
    return encode_nat_matrix(p.q);
  };
  inst.decode = [](std::string_view s) -> StructuredInput {
    P6Input p{decode_nat_matrix(s)};
    if (!gauss_jordan_inverse(to_rat_matrix(p.q))) throw DomainError("matrix Q must have full rank");
    return p;
  };
  inst.oracle = [](const StructuredInput& in) {
    // (Q^-1)^-1 = Q algebraically; the oracle asserts a halt with Q itself.
    const auto& p = as<P6Input>(in, "p6");
    return OracleResult{Verdict::Accept, matrix_canonical(to_rat_matrix(p.q))};
  };
  inst.read_output = [](const Tape& tape, long region_start, std::size_t region_len) {
    return window_until_blank(tape, region_start + static_cast<long>(region_len) + 1);
  };
  return inst;
}

ProblemInstance build_problem(ProblemId id) {
  switch (id) {
    case ProblemId::Pr: return build_pr();
    case ProblemId::P1: return build_p1();
    case ProblemId::P2: return build_p2();
    case ProblemId::P3: return build_p3();
    case ProblemId::P4: return build_p4();
    case ProblemId::P5: return build_p5();
    case ProblemId::P6: return build_p6();
  }
  throw ContractError("unknown problem id");
}

Machine pr_scanner_machine() { return Machine(make_pr_scan_program()); }
Machine p4_scanner_machine() { return Machine(make_p4_scan_program()); }

}  // namespace stipsim
