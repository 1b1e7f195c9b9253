#pragma once

// The shipped test corpus: structured inputs for every problem plus a
// stream partner of the same encoded length, generated deterministically.

#include <stdexcept>
#include <vector>

#include "stipsim/hashing.hpp"
#include "stipsim/problems.hpp"

namespace corpus {

using namespace stipsim;

struct CorpusCase {
  ProblemId id;
  StructuredInput input;
  StructuredInput partner;  // valid, same encoded length, different encoding
};

inline std::size_t digits10_of(const mpz_class& v) {
  const mpz_class a = abs(v);
  return mpz_sizeinbase(a.get_mpz_t(), 10);
}

// Nudges one entry without changing its digit width until the matrix is
// invertible again.
inline IntMatrix nudged_invertible_nat(const IntMatrix& q) {
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) {
      IntMatrix cand = q;
      const mpz_class v = q[i][j];
      const mpz_class up = v + 1;
      cand[i][j] = digits10_of(up) == digits10_of(v) ? up : v - 1;
      if (cand[i][j] < 0) continue;
      if (cand == q) continue;
      if (gauss_jordan_inverse(to_rat_matrix(cand))) return cand;
    }
  throw std::logic_error("no invertible neighbor found");
}

inline RatMatrix sign_flipped_invertible(const RatMatrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[i][j] == 0) continue;
      RatMatrix cand = a;
      cand[i][j] = -cand[i][j];
      if (gauss_jordan_inverse(cand)) return cand;
    }
  throw std::logic_error("no invertible sign flip found");
}

inline IntMatrix flip_first_nonzero(const IntMatrix& a) {
  IntMatrix cand = a;
  for (auto& row : cand)
    for (auto& v : row)
      if (v != 0) {
        v = -v;
        return cand;
      }
  throw std::logic_error("all-zero matrix in corpus");
}

inline IntMatrix random_nat_matrix(Rng& rng, std::size_t n, long max_entry) {
  IntMatrix m(n, std::vector<mpz_class>(n));
  do {
    for (auto& row : m)
      for (auto& v : row) v = static_cast<long>(rng.below(static_cast<std::uint64_t>(max_entry + 1)));
  } while (!gauss_jordan_inverse(to_rat_matrix(m)));
  return m;
}

inline std::vector<CorpusCase> build_corpus(std::uint64_t seed = 20250801) {
  Rng rng(seed);
  std::vector<CorpusCase> cases;

  auto pr_case = [&](const std::string& lhs, const std::string& rhs) {
    PrInput in{lhs, rhs};
    PrInput partner = in;
    partner.rhs[0] = partner.rhs[0] == '0' ? '1' : '0';
    cases.push_back({ProblemId::Pr, in, partner});
  };
  // the §-listed pairs plus the worked input
  pr_case("110", "101010");
  pr_case("1100", "100");
  pr_case("1010", "110");
  pr_case("100", "10");
  pr_case("1101110", "10");
  pr_case("1100", "10110");

  auto p1_case = [&](std::array<bool, 8> assign) {
    P1Input in{assign};
    P1Input partner = in;
    partner.assign[0] = !partner.assign[0];
    cases.push_back({ProblemId::P1, in, partner});
  };
  p1_case({true, true, true, true, true, true, true, true});
  p1_case({false, false, false, false, false, false, false, false});
  p1_case({false, true, true, true, true, false, false, false});  // clause 1 and 2 false
  {
    std::array<bool, 8> a{};
    for (auto& v : a) v = rng.below(2) != 0;
    p1_case(a);
  }

  auto p2_case = [&](IntMatrix a, IntMatrix b) {
    P2Input in{a, b};
    P2Input partner{flip_first_nonzero(a), b};
    cases.push_back({ProblemId::P2, in, partner});
  };
  p2_case({{1, 0}, {0, 1}}, {{1, 0}, {0, 1}});
  p2_case({{1, 2}, {3, 4}}, {{5, 6}, {7, 8}});
  p2_case({{-2, 3}, {1, -1}}, {{4, 0}, {-5, 2}});
  p2_case(random_nat_matrix(rng, 3, 9), random_nat_matrix(rng, 3, 9));

  auto p3_case = [&](IntMatrix a, IntMatrix b) {
    P3Input in{a, b};
    P3Input partner{flip_first_nonzero(a), b};
    cases.push_back({ProblemId::P3, in, partner});
  };
  p3_case({{1, 0}, {0, 1}}, {{1, 0}, {0, 1}});
  p3_case({{1, 1}, {0, 1}}, {{1, -1}, {0, 1}});
  p3_case({{2, 0}, {0, 2}}, {{1, 0}, {0, 1}});
  p3_case(random_nat_matrix(rng, 3, 9), random_nat_matrix(rng, 3, 9));

  auto p4_case = [&](const std::string& u, std::uint64_t k) {
    P4Input in{u, k};
    P4Input partner = in;
    partner.u[0] = partner.u[0] == '0' ? '1' : '0';
    cases.push_back({ProblemId::P4, in, partner});
  };
  p4_case("1011", 2);
  p4_case("0000", 3);
  p4_case("1", 1);

  auto p5_case = [&](RatMatrix a) {
    P5Input in{a};
    P5Input partner{sign_flipped_invertible(a)};
    cases.push_back({ProblemId::P5, in, partner});
  };
  p5_case({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
  p5_case({{Rat(2), Rat(1)}, {Rat(1), Rat(1)}});
  p5_case({{Rat(1), Rat(2)}, {Rat(3), Rat(4)}});
  p5_case(to_rat_matrix(random_nat_matrix(rng, 3, 9)));

  auto p6_case = [&](IntMatrix q) {
    P6Input in{q};
    P6Input partner{nudged_invertible_nat(q)};
    cases.push_back({ProblemId::P6, in, partner});
  };
  p6_case({{1, 0}, {0, 1}});
  p6_case({{1, 2}, {3, 4}});
  p6_case(random_nat_matrix(rng, 3, 9));

  return cases;
}

}  // namespace corpus
