#include "stipsim/transform.hpp"

#include "stipsim/errors.hpp"

namespace stipsim {

namespace {

void validate(const TransformParams& p) {
  if (p.c <= 0) throw DomainError("constant c must be positive");
  if (!p.variation.is_infinite() && p.variation.count() < 1)
    throw DomainError("variation interval domain is (0, inf]: T = 0 rejected");
}

Rat n_rat(std::uint64_t n) { return rat_from_u64(n); }

// Enclosure of 2^-e for e > 0 with both ends strictly inside (0, 1).
// Directed rounding can land on 1 when e is tiny; precision is raised until
// the bound separates.
RatBounds pow2_neg_strict(const Rat& e) {
  if (!(e > 0)) throw DomainError("exponent must be positive");
  for (unsigned bits = 192; bits <= (1u << 16); bits *= 2) {
    RatBounds damp = pow2_bounds(-e, bits);
    if (damp.exact || damp.hi < 1) return damp;
  }
  throw ContractError("could not separate 2^(-e) from 1");
}

}  // namespace

TransformParams TransformParams::plain(std::uint64_t n_steps, Tick variation) {
  return with_c(n_steps, variation, 1);
}

TransformParams TransformParams::with_c_n(std::uint64_t n_steps, Tick variation) {
  if (n_steps < 1) throw DomainError("c = N*T_t form needs N >= 1");
  return with_c(n_steps, variation, rat_from_u64(n_steps));
}

TransformParams TransformParams::with_c(std::uint64_t n_steps, Tick variation, Rat c) {
  TransformParams p{n_steps, variation, std::move(c)};
  validate(p);
  return p;
}

TransformValue f_transform(const TransformParams& p) {
  validate(p);
  const Rat n = n_rat(p.n_steps);
  if (p.variation.is_infinite())
    return {RatBounds::point(n), TransformValue::Limit::Convergence};

  const auto limit = p.variation == Tick(1) ? TransformValue::Limit::MinInterval
                                            : TransformValue::Limit::None;
  const Rat exponent = rat_from_u64(p.variation.count()) / p.c;
  if (rat_is_integer(exponent)) {
    // f = N * 2^k / (2^k - 1), exact.
    const Rat pk = pow2_exact(exponent.get_num());
    return {RatBounds::point(n * pk / (pk - 1)), limit};
  }

  RatBounds damp = pow2_neg_strict(exponent);
  RatBounds f;
  f.lo = n / (1 - damp.lo);
  f.hi = n / (1 - damp.hi);
  f.exact = false;
  return {f, limit};
}

NormalizedValue f_normalized(const TransformParams& p) {
  validate(p);
  if (p.variation.is_infinite()) return {Rat(0), Region::Convergence};
  const Rat fn = n_rat(p.n_steps) / rat_from_u64(p.variation.count());
  Region region;
  if (fn == 0)
    region = Region::Convergence;
  else if (fn < 1)
    region = Region::Subcritical;
  else if (fn == 1)
    region = Region::Inflection;
  else
    region = Region::Supercritical;
  return {fn, region};
}

std::string_view region_name(Region r) {
  switch (r) {
    case Region::Convergence: return "convergence";
    case Region::Subcritical: return "subcritical";
    case Region::Inflection: return "inflection";
    case Region::Supercritical: return "supercritical";
  }
  return "?";
}

std::string_view case_name(TransformCase c) {
  switch (c) {
    case TransformCase::I: return "I";
    case TransformCase::II: return "II";
    case TransformCase::III: return "III";
    case TransformCase::IV: return "IV";
  }
  return "?";
}

TransformCase classify_case(const NormalizedValue& fn, const TransformValue& f,
                            const Rat& f_bare) {
  const Rat twice = 2 * f_bare;
  if (fn.value == 0) {
    if (!(f.value.exact && f.value.lo == f_bare))
      throw ContractError("case I requires f(P,T) = f(P) exactly");
    return TransformCase::I;
  }
  if (fn.value < 1) {
    if (!(f.value.lo > f_bare && f.value.hi < twice))
      throw ContractError("case II requires f(P) < f(P,T) < 2 f(P)");
    return TransformCase::II;
  }
  if (fn.value == 1) {
    if (!(f.value.exact && f.value.lo == twice))
      throw ContractError("case III requires f(P,T) = 2 f(P) exactly");
    return TransformCase::III;
  }
  if (!(f.value.lo > twice))
    throw ContractError("case IV requires f(P,T) > 2 f(P)");
  return TransformCase::IV;
}

Tick inflection_threshold(std::uint64_t n_steps) {
  if (n_steps < 1) throw DomainError("inflection threshold needs N >= 1");
  return Tick(n_steps);
}

namespace {

// X such that 2^-X = w, for w in (0,1): exact when w is a power of two.
void fill_x_from_damping(ParamSubstitution& s, const Rat& w) {
  RatBounds lg = log2_bounds(w);
  if (lg.exact) {
    s.x = RatBounds::point(-lg.lo);
  } else {
    s.x = RatBounds{-lg.hi, -lg.lo, false};
  }
}

}  // namespace

ParamSubstitution substitute_params(SubstForm form, const Rat& value) {
  ParamSubstitution s;
  switch (form) {
    case SubstForm::M: {
      if (!(value > 0 && value <= 1)) throw DomainError("M domain is (0, 1]");
      s.m = RatBounds::point(value);
      s.f_scale = RatBounds::point(1 / value);
      if (value == 1) {
        s.x_infinite = true;
      } else {
        fill_x_from_damping(s, 1 - value);
      }
      return s;
    }
    case SubstForm::X: {
      if (!(value > 0)) throw DomainError("X domain is (0, inf]");
      s.x = RatBounds::point(value);
      RatBounds damp = pow2_neg_strict(value);
      if (damp.exact) {
        Rat m = 1 - damp.lo;
        s.m = RatBounds::point(m);
        s.f_scale = RatBounds::point(1 / m);
      } else {
        s.m = RatBounds{1 - damp.hi, 1 - damp.lo, false};
        s.f_scale = RatBounds{1 / s.m.hi, 1 / s.m.lo, false};
      }
      return s;
    }
    case SubstForm::F: {
      if (!(value >= 1)) throw DomainError("F domain is [1, inf)");
      s.f_scale = RatBounds::point(value);
      Rat m = 1 / value;
      s.m = RatBounds::point(m);
      if (m == 1) {
        s.x_infinite = true;
      } else {
        fill_x_from_damping(s, 1 - m);
      }
      return s;
    }
  }
  throw ContractError("unknown substitution form");
}

ParamSubstitution substitute_params_x_infinite() {
  ParamSubstitution s;
  s.m = RatBounds::point(Rat(1));
  s.f_scale = RatBounds::point(Rat(1));
  s.x_infinite = true;
  return s;
}

RatBounds f_from_m(std::uint64_t n_steps, const ParamSubstitution& s) {
  const Rat n = n_rat(n_steps);
  if (s.m.exact) return RatBounds::point(n / s.m.lo);
  return RatBounds{n / s.m.hi, n / s.m.lo, false};
}

RatBounds f_from_x(std::uint64_t n_steps, const ParamSubstitution& s) {
  const Rat n = n_rat(n_steps);
  if (s.x_infinite) return RatBounds::point(n);
  // 2^-x is decreasing, so the enclosure of x maps to a swapped enclosure.
  RatBounds lo_side = pow2_neg_strict(s.x.hi);
  RatBounds hi_side = pow2_neg_strict(s.x.lo);
  if (s.x.exact && lo_side.exact) return RatBounds::point(n / (1 - lo_side.lo));
  return RatBounds{n / (1 - lo_side.lo), n / (1 - hi_side.hi), false};
}

RatBounds f_from_f_scale(std::uint64_t n_steps, const ParamSubstitution& s) {
  const Rat n = n_rat(n_steps);
  if (s.f_scale.exact) return RatBounds::point(n * s.f_scale.lo);
  return RatBounds{n * s.f_scale.lo, n * s.f_scale.hi, false};
}

Rat normalized_from_frequencies(std::uint64_t n_steps, const Rat& f_p, const Rat& f_t) {
  if (!(f_p > 0) || !(f_t > 0)) throw DomainError("frequencies must be positive");
  return n_rat(n_steps) * f_p / f_t;
}

}  // namespace stipsim
