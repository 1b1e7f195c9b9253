#include "stipsim/rational.hpp"

#include <mpfr.h>

#include <cctype>

#include "stipsim/errors.hpp"

namespace stipsim {

Rat make_rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw ContractError("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat rat_from_u64(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return Rat(z);
}

Rat rat_from_string(std::string_view s) {
  if (s.empty()) throw ParseError(0, "empty rational");
  std::string text(s);
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
      throw ParseError(0, "malformed rational '" + text + "'");
  }
  try {
    Rat r(text);
    if (r.get_den() == 0) throw ParseError(0, "zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ParseError(0, "malformed rational '" + text + "'");
  }
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

mpz_class rat_floor(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

mpz_class rat_ceil(const Rat& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

Rat pow2_exact(const mpz_class& k) {
  if (!k.fits_slong_p()) throw ContractError("pow2 exponent out of range");
  long e = k.get_si();
  mpz_class p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? make_rat(1, p) : Rat(p);
}

namespace {

// An mpfr binary float is a dyadic rational, so mpfr_get_q is lossless and a
// directed-rounded pair gives a true rational enclosure.
Rat mpfr_to_rat(const mpfr_t v) {
  mpq_t q;
  mpq_init(q);
  mpfr_get_q(q, v);
  Rat r(q);
  mpq_clear(q);
  return r;
}

}  // namespace

RatBounds pow2_bounds(const Rat& x, unsigned bits) {
  if (rat_is_integer(x)) return RatBounds::point(pow2_exact(x.get_num()));

  mpfr_t e_lo, e_hi, lo, hi;
  mpfr_inits2(bits, e_lo, e_hi, lo, hi, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(e_lo, x.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(e_hi, x.get_mpq_t(), MPFR_RNDU);
  mpfr_exp2(lo, e_lo, MPFR_RNDD);
  mpfr_exp2(hi, e_hi, MPFR_RNDU);
  RatBounds b{mpfr_to_rat(lo), mpfr_to_rat(hi), false};
  mpfr_clears(e_lo, e_hi, lo, hi, static_cast<mpfr_ptr>(nullptr));

  // 2^x > 0 always; keep the lower bound strictly positive so that strict
  // inequalities against 0 and 1 stay decidable.
  if (b.lo <= 0) b.lo = pow2_exact(rat_floor(x) - 1);
  return b;
}

RatBounds round_outward(const RatBounds& b, unsigned bits) {
  if (b.exact) return b;
  mpz_class scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
  RatBounds out;
  out.lo = make_rat(rat_floor(b.lo * scale), scale);
  out.hi = make_rat(rat_ceil(b.hi * scale), scale);
  out.exact = false;
  return out;
}

RatBounds log2_bounds(const Rat& r, unsigned bits) {
  if (r <= 0) throw ContractError("log2 of non-positive value");
  // Exact when r = 2^k.
  if (r.get_num() == 1) {
    mpz_class den = r.get_den();
    if (mpz_popcount(den.get_mpz_t()) == 1) {
      long k = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
      return RatBounds::point(Rat(-k));
    }
  }
  if (r.get_den() == 1) {
    mpz_class num = r.get_num();
    if (mpz_popcount(num.get_mpz_t()) == 1) {
      long k = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) - 1;
      return RatBounds::point(Rat(k));
    }
  }

  mpfr_t v_lo, v_hi, lo, hi;
  mpfr_inits2(bits, v_lo, v_hi, lo, hi, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(v_lo, r.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(v_hi, r.get_mpq_t(), MPFR_RNDU);
  mpfr_log2(lo, v_lo, MPFR_RNDD);
  mpfr_log2(hi, v_hi, MPFR_RNDU);
  RatBounds b{mpfr_to_rat(lo), mpfr_to_rat(hi), false};
  mpfr_clears(v_lo, v_hi, lo, hi, static_cast<mpfr_ptr>(nullptr));
  return b;
}

}  // namespace stipsim
