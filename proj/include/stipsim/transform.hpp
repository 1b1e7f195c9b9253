#pragma once

#include <cstdint>
#include <string>

#include "stipsim/rational.hpp"
#include "stipsim/ticks.hpp"

namespace stipsim {

// Inputs of the transformed-time formula f = N * T_t / (1 - 2^(-T/c)).
// The unit transition time T_t is one tick, so N steps take N ticks and every
// quantity below stays an exact rational over integer ticks.
struct TransformParams {
  std::uint64_t n_steps = 0;  // N: steps of the bare run
  Tick variation;             // T: variation interval, finite >= 1 or infinite
  Rat c = 1;                  // positive constant in the exponent

  // c = 1, the plain form.
  static TransformParams plain(std::uint64_t n_steps, Tick variation);
  // c = N * T_t, the form whose case analysis compares f against 2*f(P).
  static TransformParams with_c_n(std::uint64_t n_steps, Tick variation);
  static TransformParams with_c(std::uint64_t n_steps, Tick variation, Rat c);
};

// f(P,T). Exact at T = infinity and whenever T/c is an integer; otherwise a
// certified rational enclosure.
struct TransformValue {
  enum class Limit { None, Convergence, MinInterval };

  RatBounds value;
  Limit limit = Limit::None;
};

enum class Region { Convergence, Subcritical, Inflection, Supercritical };

std::string_view region_name(Region r);

// f_n(P,T) = N * T_t / T; always an exact rational (0 at T = infinity).
struct NormalizedValue {
  Rat value;
  Region region = Region::Convergence;
};

enum class TransformCase { I, II, III, IV };

std::string_view case_name(TransformCase c);

TransformValue f_transform(const TransformParams& p);
NormalizedValue f_normalized(const TransformParams& p);

// Classifies against the four-case analysis for the c = N*T_t form and
// asserts the case's inequality between f and the bare time f(P) = N ticks.
// Inconsistent inputs raise ContractError.
TransformCase classify_case(const NormalizedValue& fn, const TransformValue& f,
                            const Rat& f_bare);

// The interval T* at which f_n = 1: T* = N * T_t. n_steps >= 1.
Tick inflection_threshold(std::uint64_t n_steps);

// The three equivalent parameterizations of the damping factor:
//   M in (0,1],  X in (0,inf] with M = 1 - 2^(-X),  F = 1/M in [1,inf).
// Populated consistently from whichever one is given; members are exact
// where the relation is rational and certified enclosures elsewhere.
struct ParamSubstitution {
  RatBounds m;
  bool x_infinite = false;
  RatBounds x;  // meaningful when !x_infinite
  RatBounds f_scale;
};

enum class SubstForm { M, X, F };

ParamSubstitution substitute_params(SubstForm form, const Rat& value);
ParamSubstitution substitute_params_x_infinite();

// f computed along each parameterization; all agree with f_transform within
// enclosure width.
RatBounds f_from_m(std::uint64_t n_steps, const ParamSubstitution& s);
RatBounds f_from_x(std::uint64_t n_steps, const ParamSubstitution& s);
RatBounds f_from_f_scale(std::uint64_t n_steps, const ParamSubstitution& s);

// Frequency form of the normalization: f_n(P,F) = N * F_P / F_t with
// F_P = 1/T_P and F_t = 1/T_t.
Rat normalized_from_frequencies(std::uint64_t n_steps, const Rat& f_p, const Rat& f_t);

}  // namespace stipsim
