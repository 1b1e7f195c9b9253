#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stipsim/transform.hpp"

using namespace stipsim;

namespace {

Rat rq(long num, long den = 1) { return make_rat(num, den); }

// Independent containment check: for x = p/q, lo <= 2^x <= hi iff
// lo^q <= 2^p <= hi^q (everything positive). No mpfr involved.
void check_pow2_enclosure(const Rat& x, const RatBounds& b) {
  REQUIRE(b.lo > 0);
  const mpz_class p = x.get_num(), q = x.get_den();
  auto side = [&](const Rat& r) {
    // compare r^q with 2^p exactly: r^q ? 2^p  <=>  num^q ? den^q * 2^p
    mpz_class nq, dq;
    mpz_pow_ui(nq.get_mpz_t(), r.get_num().get_mpz_t(), q.get_ui());
    mpz_pow_ui(dq.get_mpz_t(), r.get_den().get_mpz_t(), q.get_ui());
    mpz_class rhs = dq;
    if (p >= 0)
      rhs <<= p.get_ui();
    else
      nq <<= mpz_class(-p).get_ui();
    return cmp(nq, rhs);  // sign of r^q - 2^p
  };
  CHECK(side(b.lo) <= 0);
  CHECK(side(b.hi) >= 0);
}

}  // namespace

TEST_CASE("pow2 bounds: exact at integers, tight and correct elsewhere") {
  CHECK(pow2_bounds(rq(3)).lo == 8);
  CHECK(pow2_bounds(rq(-3)).lo == rq(1, 8));
  CHECK(pow2_bounds(rq(0)).lo == 1);

  for (auto [p, q] : {std::pair<long, long>{1, 2}, {3, 7}, {-5, 3}, {7, 5}, {-13, 11}, {1, 25}}) {
    Rat x = rq(p, q);
    RatBounds b = pow2_bounds(x);
    CHECK(!b.exact);
    CHECK(b.lo < b.hi);
    CHECK(b.width() < pow2_bounds(rq(-64)).lo);
    check_pow2_enclosure(x, b);
  }
}

TEST_CASE("log2 bounds: exact on powers of two, enclosing elsewhere") {
  CHECK(log2_bounds(rq(8)).lo == 3);
  CHECK(log2_bounds(rq(1, 16)).lo == -4);
  RatBounds b = log2_bounds(rq(3));
  CHECK(b.lo < b.hi);
  // 2^lo <= 3 <= 2^hi via the pow2 enclosures
  CHECK(pow2_bounds(b.lo).lo <= 3);
  CHECK(pow2_bounds(b.hi).hi >= 3);
}

TEST_CASE("f at the convergence point equals the bare time") {
  TransformValue v = f_transform(TransformParams::plain(5, Tick::infinity()));
  CHECK(v.value.exact);
  CHECK(v.value.lo == 5);
  CHECK(v.limit == TransformValue::Limit::Convergence);
}

TEST_CASE("f at T = 1 with c = 1 doubles the bare time") {
  TransformValue v = f_transform(TransformParams::plain(5, Tick(1)));
  CHECK(v.value.exact);
  CHECK(v.value.lo == 10);  // 5 / (1 - 1/2)
  CHECK(v.limit == TransformValue::Limit::MinInterval);
}

TEST_CASE("f at T = N with c = N equals twice the bare time") {
  TransformValue v = f_transform(TransformParams::with_c_n(5, Tick(5)));
  CHECK(v.value.exact);
  CHECK(v.value.lo == 10);
}

TEST_CASE("T = 0 is outside the domain") {
  CHECK_THROWS_AS(f_transform(TransformParams::plain(5, Tick(0))), DomainError);
  CHECK_THROWS_AS(f_normalized(TransformParams::plain(5, Tick(0))), DomainError);
}

TEST_CASE("normalization values and regions") {
  NormalizedValue a = f_normalized(TransformParams::plain(10, Tick::infinity()));
  CHECK(a.value == 0);
  CHECK(a.region == Region::Convergence);
  NormalizedValue b = f_normalized(TransformParams::plain(10, Tick(20)));
  CHECK(b.value == rq(1, 2));
  CHECK(b.region == Region::Subcritical);
  NormalizedValue c = f_normalized(TransformParams::plain(10, Tick(10)));
  CHECK(c.value == 1);
  CHECK(c.region == Region::Inflection);
  NormalizedValue d = f_normalized(TransformParams::plain(10, Tick(3)));
  CHECK(d.value == rq(10, 3));
  CHECK(d.region == Region::Supercritical);
}

TEST_CASE("case classification across the four regions") {
  auto classify_nt = [](std::uint64_t n, Tick t) {
    TransformParams p = TransformParams::with_c_n(n, t);
    return classify_case(f_normalized(p), f_transform(p), Rat(static_cast<long>(n)));
  };
  CHECK(classify_nt(48, Tick::infinity()) == TransformCase::I);
  CHECK(classify_nt(48, Tick(96)) == TransformCase::II);
  CHECK(classify_nt(48, Tick(48)) == TransformCase::III);
  CHECK(classify_nt(48, Tick(16)) == TransformCase::IV);

  // inconsistent inputs violate the case inequality
  TransformParams p = TransformParams::with_c_n(48, Tick(96));
  NormalizedValue fn = f_normalized(p);
  TransformValue f = f_transform(p);
  CHECK_THROWS_AS(classify_case(fn, f, Rat(1000)), ContractError);
}

TEST_CASE("case inequalities hold across a rational parameter lattice") {
  for (std::uint64_t n = 1; n <= 10; ++n) {
    for (std::uint64_t t = 1; t <= 25; ++t) {
      TransformParams p = TransformParams::with_c_n(n, Tick(t));
      NormalizedValue fn = f_normalized(p);
      TransformValue f = f_transform(p);
      TransformCase c = classify_case(fn, f, Rat(static_cast<long>(n)));
      if (fn.value < 1)
        CHECK(c == TransformCase::II);
      else if (fn.value == 1)
        CHECK(c == TransformCase::III);
      else
        CHECK(c == TransformCase::IV);
    }
    TransformParams p = TransformParams::with_c_n(n, Tick::infinity());
    CHECK(classify_case(f_normalized(p), f_transform(p), Rat(static_cast<long>(n))) ==
          TransformCase::I);
  }
}

TEST_CASE("f strictly decreases as T grows, with infimum N") {
  const std::uint64_t n = 7;
  Rat prev_lo;
  bool first = true;
  for (std::uint64_t t = 1; t <= 40; ++t) {
    TransformValue v = f_transform(TransformParams::with_c_n(n, Tick(t)));
    if (!first) CHECK(v.value.hi < prev_lo);
    prev_lo = v.value.lo;
    first = false;
    CHECK(v.value.lo > 7);
  }
  CHECK(f_transform(TransformParams::with_c_n(n, Tick::infinity())).value.lo == 7);
}

TEST_CASE("inflection threshold is N ticks") {
  CHECK(inflection_threshold(1) == Tick(1));
  CHECK(inflection_threshold(48) == Tick(48));
  CHECK_THROWS_AS(inflection_threshold(0), DomainError);
  // f_n = 1 exactly at the threshold
  NormalizedValue fn = f_normalized(TransformParams::plain(48, inflection_threshold(48)));
  CHECK(fn.region == Region::Inflection);
}

TEST_CASE("parameter substitution: M = 1 is the identity point") {
  ParamSubstitution s = substitute_params(SubstForm::M, rq(1));
  CHECK(s.x_infinite);
  CHECK(s.m.lo == 1);
  CHECK(s.f_scale.lo == 1);
  CHECK(f_from_m(9, s).lo == 9);
  CHECK(f_from_x(9, s).lo == 9);
  CHECK(f_from_f_scale(9, s).lo == 9);
}

TEST_CASE("parameter substitution: M = 1/2 maps to X = 1") {
  ParamSubstitution s = substitute_params(SubstForm::M, rq(1, 2));
  REQUIRE(!s.x_infinite);
  CHECK(s.x.exact);
  CHECK(s.x.lo == 1);
  CHECK(s.f_scale.lo == 2);
}

TEST_CASE("substitution domains are checked") {
  CHECK_THROWS_AS(substitute_params(SubstForm::M, rq(0)), DomainError);
  CHECK_THROWS_AS(substitute_params(SubstForm::M, rq(3, 2)), DomainError);
  CHECK_THROWS_AS(substitute_params(SubstForm::X, rq(0)), DomainError);
  CHECK_THROWS_AS(substitute_params(SubstForm::F, rq(1, 2)), DomainError);
}

TEST_CASE("the three substitution routes agree with f_transform") {
  // exactly representable points: X integer
  for (long x = 1; x <= 6; ++x) {
    ParamSubstitution s = substitute_params(SubstForm::X, rq(x));
    TransformValue direct = f_transform(TransformParams::plain(12, Tick(static_cast<std::uint64_t>(x))));
    CHECK(direct.value.exact);
    CHECK(f_from_x(12, s).lo == direct.value.lo);
    CHECK(f_from_m(12, s).lo == direct.value.lo);
    CHECK(f_from_f_scale(12, s).lo == direct.value.lo);
  }
  // inexact point: M = 1/3, X irrational; the routes must overlap within
  // the certified enclosures
  ParamSubstitution s = substitute_params(SubstForm::M, rq(1, 3));
  RatBounds via_m = f_from_m(10, s);
  RatBounds via_x = f_from_x(10, s);
  RatBounds via_f = f_from_f_scale(10, s);
  CHECK(via_m.exact);
  CHECK(via_m.lo == 30);
  CHECK(via_x.lo <= via_m.lo);
  CHECK(via_x.hi >= via_m.hi);
  CHECK(via_x.width() < rq(1, 1000000));
  CHECK(via_f.lo == 30);
}

TEST_CASE("substitution round trips") {
  // exact points round-trip exactly
  for (long k = 1; k <= 8; ++k) {
    ParamSubstitution from_x = substitute_params(SubstForm::X, rq(k));
    REQUIRE(from_x.m.exact);
    ParamSubstitution back = substitute_params(SubstForm::M, from_x.m.lo);
    CHECK(back.x.exact);
    CHECK(back.x.lo == rq(k));
    ParamSubstitution via_f = substitute_params(SubstForm::F, from_x.f_scale.lo);
    CHECK(via_f.m.lo == from_x.m.lo);
  }
  // inexact points round-trip within the enclosures
  ParamSubstitution s = substitute_params(SubstForm::M, rq(2, 5));
  REQUIRE(!s.x.exact);
  ParamSubstitution back_lo = substitute_params(SubstForm::X, s.x.lo);
  ParamSubstitution back_hi = substitute_params(SubstForm::X, s.x.hi);
  CHECK(back_lo.m.lo <= rq(2, 5));
  CHECK(back_hi.m.hi >= rq(2, 5));
}

TEST_CASE("frequency form matches the interval form of the normalization") {
  Rat fn_freq = normalized_from_frequencies(10, rq(1, 20), rq(1));
  NormalizedValue fn = f_normalized(TransformParams::plain(10, Tick(20)));
  CHECK(fn_freq == fn.value);
  CHECK(fn_freq == rq(1, 2));
  CHECK_THROWS_AS(normalized_from_frequencies(10, rq(0), rq(1)), DomainError);
}
