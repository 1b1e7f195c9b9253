#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace stipsim {

// All values in the transform algebra are exact rationals. mpq_class does not
// canonicalize (num, den) constructor arguments, so construction goes through
// make_rat.
using Rat = mpq_class;

Rat make_rat(const mpz_class& num, const mpz_class& den);
Rat rat_from_u64(std::uint64_t v);

// "p/q" or "p"; throws ParseError on malformed text or zero denominator.
Rat rat_from_string(std::string_view s);
std::string rat_to_string(const Rat& r);

bool rat_is_integer(const Rat& r);
mpz_class rat_floor(const Rat& r);
mpz_class rat_ceil(const Rat& r);

// Exact 2^k for any integer k (negative k gives 1/2^-k).
Rat pow2_exact(const mpz_class& k);

// A certified enclosure lo <= x <= hi. exact means lo == hi == x.
struct RatBounds {
  Rat lo;
  Rat hi;
  bool exact = false;

  static RatBounds point(Rat v) { return {v, v, true}; }
  Rat width() const { return hi - lo; }
  // Representative value for reporting; exact values return themselves.
  Rat mid() const { return exact ? lo : Rat((lo + hi) / 2); }
  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
  bool strictly_above(const Rat& v) const { return lo > v; }
  bool strictly_below(const Rat& v) const { return hi < v; }
};

// Certified bounds on 2^x for rational x. Integer x yields the exact point;
// otherwise directed-rounded evaluation at `bits` precision, so the enclosure
// width is far below 2^-bits for the magnitudes used here.
RatBounds pow2_bounds(const Rat& x, unsigned bits = 128);

// Certified bounds on log2(r), r > 0. Exact when r is an integer power of 2.
RatBounds log2_bounds(const Rat& r, unsigned bits = 128);

// Widens an enclosure to dyadic endpoints with `bits` fractional bits; keeps
// exact points untouched. Used when rendering enclosures in reports.
RatBounds round_outward(const RatBounds& b, unsigned bits = 64);

}  // namespace stipsim
