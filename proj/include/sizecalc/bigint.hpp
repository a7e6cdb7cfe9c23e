#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace sizecalc {

using Int = mpz_class;
using Rat = mpq_class;

inline Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline Int ipow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat rpow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  Rat b = e < 0 ? Rat(1) / base : base;
  unsigned long k = e < 0 ? -e : e;
  Rat r(1);
  while (k) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

inline std::string dec(const Int& n) { return n.get_str(10); }

}  // namespace sizecalc
