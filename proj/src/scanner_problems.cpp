#include "scanner_programs.hpp"

#include <optional>

#include "stipsim/problems.hpp"

namespace stipsim {

namespace {

// Shared conventions. Register 0 always mirrors the head position relative
// to the region start; every returned action keeps it in sync. Phases that
// only shuffle control state fall through inside step()'s dispatch loop, so
// each call still performs exactly one cell access.
constexpr int kPos = 0;

ScannerAction act_move(ScannerControl& c, int d) {
  c.regs[kPos] += d;
  return ScannerAction{std::nullopt, d, ScanStatus::Running};
}

ScannerAction act_write(ScannerControl& c, Symbol s, int d) {
  c.regs[kPos] += d;
  return ScannerAction{s, d, ScanStatus::Running};
}

ScannerAction act_halt(ScanStatus st) { return ScannerAction{std::nullopt, 0, st}; }

long geti(const ScannerControl& c, int r) {
  return mpz_get_si(c.regs[static_cast<std::size_t>(r)].get_num().get_mpz_t());
}

void seti(ScannerControl& c, int r, long v) { c.regs[static_cast<std::size_t>(r)] = Rat(static_cast<long>(v)); }

int digit_of(Symbol s) { return s >= '0' && s <= '9' ? s - '0' : 0; }

// Walks the head one cell per tick toward regs[target_reg]; true once there.
bool seek_done(ScannerControl& c, int target_reg, ScannerAction& out) {
  long pos = geti(c, kPos);
  long target = geti(c, target_reg);
  if (pos == target) return true;
  out = act_move(c, pos < target ? 1 : -1);
  return false;
}

// ---------------------------------------------------------------------------
// P1: evaluate the fixed 3-CNF formula twice on the T/F assignment cells.

class P1Program final : public ScannerProgram {
  enum Regs { R_POS = 0, R_EVAL, R_CLAUSE, R_LIT, R_SAT, R_FORMULA, R_R0, R_R1, R_TARGET, R_COUNT };
  enum Phases { PH_EVAL_START, PH_CLAUSE, PH_LIT, PH_SEEK, PH_READ, PH_DONE };

 public:
  std::string name() const override { return "p1-scan"; }
  const std::string& input_alphabet() const override {
    static const std::string a = "TF";
    return a;
  }
  ScannerControl initial() const override {
    ScannerControl c;
    c.phase = PH_EVAL_START;
    c.regs.assign(R_COUNT, Rat(0));
    return c;
  }

  ScannerAction step(ScannerControl& c, Symbol sym) const override {
    for (;;) {
      switch (c.phase) {
        case PH_EVAL_START:
          seti(c, R_CLAUSE, 0);
          seti(c, R_FORMULA, 1);
          c.phase = PH_CLAUSE;
          continue;
        case PH_CLAUSE:
          if (geti(c, R_CLAUSE) == 3) {
            c.phase = PH_DONE;
            continue;
          }
          seti(c, R_LIT, 0);
          seti(c, R_SAT, 0);
          c.phase = PH_LIT;
          continue;
        case PH_LIT: {
          if (geti(c, R_LIT) == 3) {
            if (geti(c, R_SAT) == 0) seti(c, R_FORMULA, 0);
            seti(c, R_CLAUSE, geti(c, R_CLAUSE) + 1);
            c.phase = PH_CLAUSE;
            continue;
          }
          int lit = kP1Clauses[static_cast<std::size_t>(geti(c, R_CLAUSE))]
                              [static_cast<std::size_t>(geti(c, R_LIT))];
          seti(c, R_TARGET, std::abs(lit) - 1);
          c.phase = PH_SEEK;
          continue;
        }
        case PH_SEEK: {
          ScannerAction a;
          if (!seek_done(c, R_TARGET, a)) return a;
          c.phase = PH_READ;
          continue;
        }
        case PH_READ: {
          int lit = kP1Clauses[static_cast<std::size_t>(geti(c, R_CLAUSE))]
                              [static_cast<std::size_t>(geti(c, R_LIT))];
          bool value = sym == 'T';
          bool lit_true = lit > 0 ? value : !value;
          if (lit_true) seti(c, R_SAT, 1);
          seti(c, R_LIT, geti(c, R_LIT) + 1);
          c.phase = PH_LIT;
          return act_move(c, 0);
        }
        case PH_DONE: {
          if (geti(c, R_EVAL) == 0) {
            seti(c, R_R0, geti(c, R_FORMULA));
            seti(c, R_EVAL, 1);
            c.phase = PH_EVAL_START;
            continue;
          }
          seti(c, R_R1, geti(c, R_FORMULA));
          if (geti(c, R_R0) == geti(c, R_R1))
            return act_halt(geti(c, R_R0) ? ScanStatus::Accept : ScanStatus::Reject);
          // disagreement: evaluate again from the start
          seti(c, R_EVAL, 0);
          c.phase = PH_EVAL_START;
          continue;
        }
      }
    }
  }
};

// ---------------------------------------------------------------------------
// P2 / P3: repeated product of the two matrices encoded as
// [n][w] followed by 2*n*n signed fixed-width entries.

class ProductProgram final : public ScannerProgram {
 public:
  enum class Mode { Corners, Identity };

  ProductProgram(Mode mode, int rounds, std::string prog_name)
      : mode_(mode), rounds_(rounds), name_(std::move(prog_name)) {}

  std::string name() const override { return name_; }
  const std::string& input_alphabet() const override {
    static const std::string a = "0123456789+-";
    return a;
  }

 private:
  enum Regs {
    R_POS = 0, R_N, R_W, R_RET, R_TARGET, R_VAL, R_IDX, R_DIGITS, R_SIGN,
    R_I, R_J, R_K, R_ACC, R_AVAL, R_ROUND, R_YES, R_NO, R_FLAG,
    R_C11, R_C1N, R_CN1, R_CNN, R_COUNT
  };
  enum Phases {
    PH_N, PH_W, PH_ENTRY, PH_SEEK, PH_SIGN, PH_DIGIT,
    PH_ROUND, PH_CELL, PH_MAC, PH_SAVE_A, PH_ACC, PH_CELL_DONE, PH_ROUND_EVAL, PH_VERDICT
  };

  Mode mode_;
  int rounds_;
  std::string name_;

 public:
  ScannerControl initial() const override {
    ScannerControl c;
    c.phase = PH_N;
    c.regs.assign(R_COUNT, Rat(0));
    return c;
  }

  ScannerAction step(ScannerControl& c, Symbol sym) const override {
    for (;;) {
      const long n = geti(c, R_N);
      switch (c.phase) {
        case PH_N:
          seti(c, R_N, digit_of(sym));
          c.phase = PH_W;
          return act_move(c, 1);
        case PH_W:
          seti(c, R_W, digit_of(sym));
          c.phase = PH_ROUND;
          return act_move(c, 0);

        // entry-read subroutine: regs[R_IDX] -> regs[R_VAL], resumes R_RET
        case PH_ENTRY:
          seti(c, R_TARGET, 2 + geti(c, R_IDX) * (geti(c, R_W) + 1));
          c.phase = PH_SEEK;
          continue;
        case PH_SEEK: {
          ScannerAction a;
          if (!seek_done(c, R_TARGET, a)) return a;
          c.phase = PH_SIGN;
          continue;
        }
        case PH_SIGN:
          seti(c, R_SIGN, sym == '-' ? -1 : 1);
          seti(c, R_VAL, 0);
          seti(c, R_DIGITS, geti(c, R_W));
          c.phase = PH_DIGIT;
          return act_move(c, 1);
        case PH_DIGIT:
          seti(c, R_VAL, geti(c, R_VAL) * 10 + digit_of(sym));
          seti(c, R_DIGITS, geti(c, R_DIGITS) - 1);
          if (geti(c, R_DIGITS) > 0) return act_move(c, 1);
          c.regs[R_VAL] = c.regs[R_VAL] * geti(c, R_SIGN);
          c.phase = static_cast<int>(geti(c, R_RET));
          return act_move(c, 0);

        case PH_ROUND:
          seti(c, R_I, 0);
          seti(c, R_J, 0);
          seti(c, R_FLAG, mode_ == Mode::Identity ? 1 : 0);  // "still identity"
          c.phase = PH_CELL;
          continue;
        case PH_CELL:
          seti(c, R_K, 0);
          c.regs[R_ACC] = 0;
          c.phase = PH_MAC;
          continue;
        case PH_MAC:
          if (geti(c, R_K) == n) {
            c.phase = PH_CELL_DONE;
            continue;
          }
          seti(c, R_IDX, geti(c, R_I) * n + geti(c, R_K));
          seti(c, R_RET, PH_SAVE_A);
          c.phase = PH_ENTRY;
          continue;
        case PH_SAVE_A:
          c.regs[R_AVAL] = c.regs[R_VAL];
          seti(c, R_IDX, n * n + geti(c, R_K) * n + geti(c, R_J));
          seti(c, R_RET, PH_ACC);
          c.phase = PH_ENTRY;
          continue;
        case PH_ACC:
          c.regs[R_ACC] += c.regs[R_AVAL] * c.regs[R_VAL];
          seti(c, R_K, geti(c, R_K) + 1);
          c.phase = PH_MAC;
          continue;
        case PH_CELL_DONE: {
          const long i = geti(c, R_I), j = geti(c, R_J);
          if (mode_ == Mode::Corners) {
            if (i == 0 && j == 0) c.regs[R_C11] = c.regs[R_ACC];
            if (i == 0 && j == n - 1) c.regs[R_C1N] = c.regs[R_ACC];
            if (i == n - 1 && j == 0) c.regs[R_CN1] = c.regs[R_ACC];
            if (i == n - 1 && j == n - 1) c.regs[R_CNN] = c.regs[R_ACC];
          } else {
            const Rat expected = (i == j) ? 1 : 0;
            if (c.regs[R_ACC] != expected) seti(c, R_FLAG, 0);
          }
          if (j + 1 < n) {
            seti(c, R_J, j + 1);
          } else if (i + 1 < n) {
            seti(c, R_J, 0);
            seti(c, R_I, i + 1);
          } else {
            c.phase = PH_ROUND_EVAL;
            continue;
          }
          c.phase = PH_CELL;
          continue;
        }
        case PH_ROUND_EVAL: {
          bool yes;
          if (mode_ == Mode::Corners)
            yes = c.regs[R_C11] * c.regs[R_C1N] >= c.regs[R_CNN] * c.regs[R_CN1];
          else
            yes = geti(c, R_FLAG) == 1;
          seti(c, yes ? R_YES : R_NO, geti(c, yes ? R_YES : R_NO) + 1);
          seti(c, R_ROUND, geti(c, R_ROUND) + 1);
          if (geti(c, R_ROUND) < rounds_) {
            c.phase = PH_ROUND;
            continue;
          }
          c.phase = PH_VERDICT;
          continue;
        }
        case PH_VERDICT:
          if (geti(c, R_YES) == rounds_) return act_halt(ScanStatus::Accept);
          if (geti(c, R_NO) == rounds_) return act_halt(ScanStatus::Reject);
          // answers disagree: compute again from the start
          seti(c, R_ROUND, 0);
          seti(c, R_YES, 0);
          seti(c, R_NO, 0);
          c.phase = PH_ROUND;
          continue;
      }
    }
  }
};

// ---------------------------------------------------------------------------
// P5: invert A (read off the tape), prove A * inv = I against the live tape,
// write the inverse to the output area.
// P6: double-invert Q, compare against the live tape, write the result.
// Entry formats differ; everything else is shared.

class InverseProgram final : public ScannerProgram {
 public:
  enum class Kind { SingleInverse /* P5 */, DoubleInverse /* P6 */ };

  explicit InverseProgram(Kind kind) : kind_(kind) {}

  std::string name() const override {
    return kind_ == Kind::SingleInverse ? "p5-scan" : "p6-scan";
  }
  const std::string& input_alphabet() const override {
    static const std::string rational = "0123456789+-/";
    static const std::string natural = "0123456789";
    return kind_ == Kind::SingleInverse ? rational : natural;
  }

 private:
  enum Regs {
    R_POS = 0, R_N, R_W, R_RET, R_TARGET, R_VAL, R_DEN, R_IDX, R_DIGITS, R_SIGN,
    R_I, R_J, R_K, R_ACC, R_AVAL, R_EMIT, R_RESTARTS, R_MAT  // R_MAT..: n*n read + n*n result
  };
  enum Phases {
    PH_N, PH_W, PH_ENTRY, PH_SEEK, PH_SIGN, PH_NUM, PH_SLASH, PH_DEN,
    PH_READ_ALL, PH_STORE, PH_INVERT, PH_VER_CELL, PH_VER_MAC, PH_VER_ACC, PH_VER_CHECK,
    PH_CMP, PH_CMP_READ, PH_OUT, PH_OUT_SEEK, PH_OUT_EMIT
  };

  Kind kind_;

  long entry_width(long w) const {
    return kind_ == Kind::SingleInverse ? 2 * w + 2 : w;
  }
  long region_len(long n, long w) const { return 2 + n * n * entry_width(w); }

  RatMatrix stored(const ScannerControl& c, int base) const {
    const long n = geti(c, R_N);
    RatMatrix m(static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n)));
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j)
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            c.regs[static_cast<std::size_t>(base + i * n + j)];
    return m;
  }

  void store(ScannerControl& c, int base, const RatMatrix& m) const {
    const long n = geti(c, R_N);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j)
        c.regs[static_cast<std::size_t>(base + i * n + j)] =
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  std::string output_text(const ScannerControl& c) const {
    const long n = geti(c, R_N);
    return matrix_canonical(stored(c, R_MAT + static_cast<int>(n * n)));
  }

 public:
  ScannerControl initial() const override {
    ScannerControl c;
    c.phase = PH_N;
    c.regs.assign(R_MAT, Rat(0));
    return c;
  }

  ScannerAction step(ScannerControl& c, Symbol sym) const override {
    for (;;) {
      const long n = geti(c, R_N);
      switch (c.phase) {
        case PH_N: {
          seti(c, R_N, digit_of(sym));
          const long nn = digit_of(sym) * digit_of(sym);
          c.regs.resize(static_cast<std::size_t>(R_MAT + 2 * nn), Rat(0));
          c.phase = PH_W;
          return act_move(c, 1);
        }
        case PH_W:
          seti(c, R_W, digit_of(sym));
          seti(c, R_IDX, 0);
          c.phase = PH_READ_ALL;
          return act_move(c, 0);

        // entry-read subroutine: regs[R_IDX] -> regs[R_VAL], resumes R_RET.
        case PH_ENTRY:
          seti(c, R_TARGET, 2 + geti(c, R_IDX) * entry_width(geti(c, R_W)));
          c.phase = PH_SEEK;
          continue;
        case PH_SEEK: {
          ScannerAction a;
          if (!seek_done(c, R_TARGET, a)) return a;
          c.phase = kind_ == Kind::SingleInverse ? PH_SIGN : PH_NUM;
          if (kind_ == Kind::DoubleInverse) {
            seti(c, R_SIGN, 1);
            seti(c, R_VAL, 0);
            seti(c, R_DIGITS, geti(c, R_W));
          }
          continue;
        }
        case PH_SIGN:
          seti(c, R_SIGN, sym == '-' ? -1 : 1);
          seti(c, R_VAL, 0);
          seti(c, R_DIGITS, geti(c, R_W));
          c.phase = PH_NUM;
          return act_move(c, 1);
        case PH_NUM:
          seti(c, R_VAL, geti(c, R_VAL) * 10 + digit_of(sym));
          seti(c, R_DIGITS, geti(c, R_DIGITS) - 1);
          if (geti(c, R_DIGITS) > 0) return act_move(c, 1);
          if (kind_ == Kind::DoubleInverse) {
            c.regs[R_VAL] = c.regs[R_VAL] * geti(c, R_SIGN);
            c.phase = static_cast<int>(geti(c, R_RET));
            return act_move(c, 0);
          }
          c.phase = PH_SLASH;
          return act_move(c, 1);
        case PH_SLASH:  // on the '/'
          seti(c, R_DEN, 0);
          seti(c, R_DIGITS, geti(c, R_W));
          c.phase = PH_DEN;
          return act_move(c, 1);
        case PH_DEN:
          seti(c, R_DEN, geti(c, R_DEN) * 10 + digit_of(sym));
          seti(c, R_DIGITS, geti(c, R_DIGITS) - 1);
          if (geti(c, R_DIGITS) > 0) return act_move(c, 1);
          {
            long den = geti(c, R_DEN);
            if (den == 0) den = 1;  // only reachable under mid-run rewrites
            c.regs[R_VAL] = make_rat(mpz_class(geti(c, R_VAL) * geti(c, R_SIGN)), mpz_class(den));
          }
          c.phase = static_cast<int>(geti(c, R_RET));
          return act_move(c, 0);

        case PH_READ_ALL:
          if (geti(c, R_IDX) < n * n) {
            seti(c, R_RET, PH_STORE);
            c.phase = PH_ENTRY;
            continue;
          }
          c.phase = PH_INVERT;
          continue;
        case PH_STORE:
          c.regs[static_cast<std::size_t>(R_MAT + geti(c, R_IDX))] = c.regs[R_VAL];
          seti(c, R_IDX, geti(c, R_IDX) + 1);
          c.phase = PH_READ_ALL;
          continue;
        case PH_INVERT: {
          auto inv = gauss_jordan_inverse(stored(c, R_MAT));
          if (!inv) {
            // Unreadable/singular matrix: compute again from the start.
            seti(c, R_RESTARTS, geti(c, R_RESTARTS) + 1);
            seti(c, R_IDX, 0);
            c.phase = PH_READ_ALL;
            continue;
          }
          if (kind_ == Kind::DoubleInverse) {
            auto back = gauss_jordan_inverse(*inv);
            if (!back) {  // cannot happen for a true inverse
              seti(c, R_RESTARTS, geti(c, R_RESTARTS) + 1);
              seti(c, R_IDX, 0);
              c.phase = PH_READ_ALL;
              continue;
            }
            store(c, R_MAT + static_cast<int>(n * n), *back);
            seti(c, R_IDX, 0);
            c.phase = PH_CMP;
          } else {
            store(c, R_MAT + static_cast<int>(n * n), *inv);
            seti(c, R_I, 0);
            seti(c, R_J, 0);
            c.phase = PH_VER_CELL;
          }
          continue;
        }

        // P5 verification: recompute A * inv cell by cell, re-reading A's
        // entries from the live tape.
        case PH_VER_CELL:
          seti(c, R_K, 0);
          c.regs[R_ACC] = 0;
          c.phase = PH_VER_MAC;
          continue;
        case PH_VER_MAC:
          if (geti(c, R_K) == n) {
            c.phase = PH_VER_CHECK;
            continue;
          }
          seti(c, R_IDX, geti(c, R_I) * n + geti(c, R_K));
          seti(c, R_RET, PH_VER_ACC);
          c.phase = PH_ENTRY;
          continue;
        case PH_VER_ACC:
          c.regs[R_ACC] +=
              c.regs[R_VAL] *
              c.regs[static_cast<std::size_t>(R_MAT + n * n + geti(c, R_K) * n + geti(c, R_J))];
          seti(c, R_K, geti(c, R_K) + 1);
          c.phase = PH_VER_MAC;
          continue;
        case PH_VER_CHECK: {
          const Rat expected = geti(c, R_I) == geti(c, R_J) ? 1 : 0;
          if (c.regs[R_ACC] != expected) {
            seti(c, R_RESTARTS, geti(c, R_RESTARTS) + 1);
            seti(c, R_IDX, 0);
            c.phase = PH_READ_ALL;
            continue;
          }
          if (geti(c, R_J) + 1 < n) {
            seti(c, R_J, geti(c, R_J) + 1);
          } else if (geti(c, R_I) + 1 < n) {
            seti(c, R_J, 0);
            seti(c, R_I, geti(c, R_I) + 1);
          } else {
            seti(c, R_EMIT, 0);
            c.phase = PH_OUT;
            continue;
          }
          c.phase = PH_VER_CELL;
          continue;
        }

        // P6 verification: compare the double inverse against the live tape.
        case PH_CMP:
          if (geti(c, R_IDX) < n * n) {
            seti(c, R_RET, PH_CMP_READ);
            c.phase = PH_ENTRY;
            continue;
          }
          seti(c, R_EMIT, 0);
          c.phase = PH_OUT;
          continue;
        case PH_CMP_READ:
          if (c.regs[R_VAL] != c.regs[static_cast<std::size_t>(R_MAT + n * n + geti(c, R_IDX))]) {
            seti(c, R_RESTARTS, geti(c, R_RESTARTS) + 1);
            seti(c, R_IDX, 0);
            c.phase = PH_READ_ALL;
            continue;
          }
          seti(c, R_IDX, geti(c, R_IDX) + 1);
          c.phase = PH_CMP;
          continue;

        // Write the result text one character per tick, then halt.
        case PH_OUT: {
          const std::string out = output_text(c);
          if (geti(c, R_EMIT) >= static_cast<long>(out.size())) return act_halt(ScanStatus::Accept);
          seti(c, R_TARGET, region_len(n, geti(c, R_W)) + 1 + geti(c, R_EMIT));
          c.phase = PH_OUT_SEEK;
          continue;
        }
        case PH_OUT_SEEK: {
          ScannerAction a;
          if (!seek_done(c, R_TARGET, a)) return a;
          c.phase = PH_OUT_EMIT;
          continue;
        }
        case PH_OUT_EMIT: {
          const std::string out = output_text(c);
          const Symbol ch = out[static_cast<std::size_t>(geti(c, R_EMIT))];
          seti(c, R_EMIT, geti(c, R_EMIT) + 1);
          c.phase = PH_OUT;
          return act_write(c, ch, 0);
        }
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Scanner twin of the table machine for the double-sum parity problem.

class PrScanProgram final : public ScannerProgram {
  enum Regs { R_POS = 0, R_LHS, R_RHS, R_IN_RHS, R_PASS, R_S0, R_S1, R_TARGET, R_COUNT };
  enum Phases { PH_SEEK0, PH_READ, PH_DONE };

 public:
  std::string name() const override { return "pr-scan"; }
  const std::string& input_alphabet() const override {
    static const std::string a = "01+";
    return a;
  }
  ScannerControl initial() const override {
    ScannerControl c;
    c.phase = PH_SEEK0;
    c.regs.assign(R_COUNT, Rat(0));
    return c;
  }

  ScannerAction step(ScannerControl& c, Symbol sym) const override {
    for (;;) {
      switch (c.phase) {
        case PH_SEEK0: {
          seti(c, R_TARGET, 0);
          ScannerAction a;
          if (!seek_done(c, R_TARGET, a)) return a;
          c.regs[R_LHS] = 0;
          c.regs[R_RHS] = 0;
          seti(c, R_IN_RHS, 0);
          c.phase = PH_READ;
          continue;
        }
        case PH_READ: {
          if (sym == '0' || sym == '1') {
            int which = geti(c, R_IN_RHS) ? R_RHS : R_LHS;
            c.regs[which] = c.regs[which] * 2 + (sym - '0');
            return act_move(c, 1);
          }
          if (sym == '+') {
            seti(c, R_IN_RHS, 1);
            return act_move(c, 1);
          }
          // blank: the region is exhausted, this pass's sum is complete
          c.phase = PH_DONE;
          continue;
        }
        case PH_DONE: {
          Rat sum = c.regs[R_LHS] + c.regs[R_RHS];
          if (geti(c, R_PASS) == 0) {
            c.regs[R_S0] = sum;
            seti(c, R_PASS, 1);
            c.phase = PH_SEEK0;
            continue;
          }
          c.regs[R_S1] = sum;
          if (c.regs[R_S0] == c.regs[R_S1]) {
            mpz_class num = c.regs[R_S0].get_num();
            bool even = mpz_even_p(num.get_mpz_t()) != 0;
            return act_halt(even ? ScanStatus::Accept : ScanStatus::Reject);
          }
          seti(c, R_PASS, 0);  // sums differ: compute again from the start
          c.phase = PH_SEEK0;
          continue;
        }
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Scanner twin of the K-fold ones-counting table machine. Writes the same
// '=' + unary strip layout so one decoder serves both.

class P4ScanProgram final : public ScannerProgram {
  enum Regs {
    R_POS = 0, R_COUNT_CUR, R_COUNT_FIRST, R_PASS, R_K, R_ULEN, R_TARGET, R_EMIT, R_NREGS
  };
  enum Phases { PH_SEEK0, PH_SCAN_U, PH_SCAN_K, PH_PASS_DONE, PH_OUT, PH_OUT_SEEK, PH_OUT_EMIT };

 public:
  std::string name() const override { return "p4-scan"; }
  const std::string& input_alphabet() const override {
    static const std::string a = "01=*";
    return a;
  }
  ScannerControl initial() const override {
    ScannerControl c;
    c.phase = PH_SEEK0;
    c.regs.assign(R_NREGS, Rat(0));
    return c;
  }

  ScannerAction step(ScannerControl& c, Symbol sym) const override {
    for (;;) {
      switch (c.phase) {
        case PH_SEEK0: {
          seti(c, R_TARGET, 0);
          ScannerAction a;
          if (!seek_done(c, R_TARGET, a)) return a;
          seti(c, R_COUNT_CUR, 0);
          c.phase = PH_SCAN_U;
          continue;
        }
        case PH_SCAN_U:
          if (sym == '1') {
            seti(c, R_COUNT_CUR, geti(c, R_COUNT_CUR) + 1);
            return act_move(c, 1);
          }
          if (sym == '0') return act_move(c, 1);
          if (sym == '=') {
            if (geti(c, R_PASS) == 0) {
              seti(c, R_ULEN, geti(c, R_POS));
              seti(c, R_K, 0);
              c.phase = PH_SCAN_K;
              return act_move(c, 1);
            }
            c.phase = PH_PASS_DONE;
            continue;
          }
          return act_move(c, 1);  // scrambled region; keep scanning
        case PH_SCAN_K:
          if (sym == '*') {
            seti(c, R_K, geti(c, R_K) + 1);
            return act_move(c, 1);
          }
          c.phase = PH_PASS_DONE;
          continue;
        case PH_PASS_DONE:
          if (geti(c, R_PASS) == 0) seti(c, R_COUNT_FIRST, geti(c, R_COUNT_CUR));
          if (geti(c, R_COUNT_CUR) != geti(c, R_COUNT_FIRST)) {
            seti(c, R_PASS, 0);  // counts disagree: start counting again
            c.phase = PH_SEEK0;
            continue;
          }
          seti(c, R_PASS, geti(c, R_PASS) + 1);
          if (geti(c, R_PASS) < geti(c, R_K)) {
            c.phase = PH_SEEK0;
            continue;
          }
          seti(c, R_EMIT, 0);
          c.phase = PH_OUT;
          continue;
        case PH_OUT: {
          // '=' at the region end, then the unary strip.
          const long strip = geti(c, R_COUNT_FIRST);
          if (geti(c, R_EMIT) > strip) return act_halt(ScanStatus::Accept);
          seti(c, R_TARGET, geti(c, R_ULEN) + 1 + geti(c, R_K) + geti(c, R_EMIT));
          c.phase = PH_OUT_SEEK;
          continue;
        }
        case PH_OUT_SEEK: {
          ScannerAction a;
          if (!seek_done(c, R_TARGET, a)) return a;
          c.phase = PH_OUT_EMIT;
          continue;
        }
        case PH_OUT_EMIT: {
          const Symbol ch = geti(c, R_EMIT) == 0 ? '=' : '|';
          seti(c, R_EMIT, geti(c, R_EMIT) + 1);
          c.phase = PH_OUT;
          return act_write(c, ch, 0);
        }
      }
    }
  }
};

}  // namespace

std::shared_ptr<const ScannerProgram> make_p1_program() {
  return std::make_shared<P1Program>();
}
std::shared_ptr<const ScannerProgram> make_p2_program() {
  return std::make_shared<ProductProgram>(ProductProgram::Mode::Corners, 4, "p2-scan");
}
std::shared_ptr<const ScannerProgram> make_p3_program() {
  return std::make_shared<ProductProgram>(ProductProgram::Mode::Identity, 3, "p3-scan");
}
std::shared_ptr<const ScannerProgram> make_p5_program() {
  return std::make_shared<InverseProgram>(InverseProgram::Kind::SingleInverse);
}
std::shared_ptr<const ScannerProgram> make_p6_program() {
  return std::make_shared<InverseProgram>(InverseProgram::Kind::DoubleInverse);
}
std::shared_ptr<const ScannerProgram> make_pr_scan_program() {
  return std::make_shared<PrScanProgram>();
}
std::shared_ptr<const ScannerProgram> make_p4_scan_program() {
  return std::make_shared<P4ScanProgram>();
}

}  // namespace stipsim
