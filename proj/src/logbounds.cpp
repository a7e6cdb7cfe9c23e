#include "sizecalc/logbounds.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <utility>

#include "sizecalc/numtheory.hpp"

namespace sizecalc::logbounds {

namespace {

// Scaled enclosure of 2*atanh(u/v) = ln((v+u)/(v-u)) for 0 <= u/v <= 1/3.
// Returns [lo, hi] such that lo/scale <= 2*atanh(u/v) <= hi/scale.
std::pair<Int, Int> atanh2_scaled(const Int& u, const Int& v, const Int& scale) {
  Int lo = 0, hi = 0;
  if (u == 0) return {lo, hi};
  Int upow = u;         // u^(2i+1)
  Int vpow = v;         // v^(2i+1)
  Int u2 = u * u, v2 = v * v;
  for (unsigned long i = 0;; ++i) {
    const unsigned long odd = 2 * i + 1;
    // term = 2 * u^odd / (odd * v^odd)
    Int num = 2 * scale * upow;
    Int den = odd * vpow;
    Int tlo, thi, rem;
    mpz_fdiv_qr(tlo.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    thi = tlo + (rem != 0 ? 1 : 0);
    lo += tlo;
    hi += thi;
    upow *= u2;
    vpow *= v2;
    if (tlo == 0) {
      // tail <= 2 * t^(2i+3) / ((2i+3)(1-t^2)) <= 9/8 * 2 * u^(2i+3)/((2i+3) v^(2i+3))
      Int tnum = 9 * 2 * scale * upow;
      Int tden = 8 * (odd + 2) * vpow;
      Int tail;
      mpz_cdiv_q(tail.get_mpz_t(), tnum.get_mpz_t(), tden.get_mpz_t());
      hi += tail;
      return {lo, hi};
    }
  }
}

// Scaled enclosure of ln 2 = 2*atanh(1/3).
std::pair<Int, Int> ln2_scaled(const Int& scale) { return atanh2_scaled(Int(1), Int(3), scale); }

}  // namespace

RatInterval log_interval(uint64_t n, unsigned bits) {
  Int scale = ipow(Int(2), bits + 8);
  if (n <= 1) return {Rat(0), Rat(0)};
  const int k = 63 - std::countl_zero(n);  // floor(log2 n)
  Int pow2k = ipow(Int(2), static_cast<unsigned long>(k));
  Int u = Int(static_cast<unsigned long>(n)) - pow2k;
  Int v = Int(static_cast<unsigned long>(n)) + pow2k;
  auto [slo, shi] = atanh2_scaled(u, v, scale);
  auto [l2lo, l2hi] = ln2_scaled(scale);
  Int lo = slo + k * l2lo;
  Int hi = shi + k * l2hi;
  RatInterval r{Rat(lo) / Rat(scale), Rat(hi) / Rat(scale)};
  r.lo.canonicalize();
  r.hi.canonicalize();
  return r;
}

LogTable::LogTable(uint64_t limit) {
  lo_.assign(limit + 1, 0);
  hi_.assign(limit + 1, 0);
  auto& sieve = numtheory::SieveCache::instance();
  sieve.ensure(limit);
  const Rat scale(kScale);
  for (uint64_t n = 2; n <= limit; ++n) {
    uint32_t p = sieve.smallest_prime_factor(n);
    if (p == n) {
      RatInterval iv = log_interval(n, kScaleBits + 8);
      Rat slo = iv.lo * scale, shi = iv.hi * scale;
      Int flo, fhi;
      mpz_fdiv_q(flo.get_mpz_t(), slo.get_num_mpz_t(), slo.get_den_mpz_t());
      mpz_cdiv_q(fhi.get_mpz_t(), shi.get_num_mpz_t(), shi.get_den_mpz_t());
      lo_[n] = flo.get_si();
      hi_[n] = fhi.get_si();
    } else {
      lo_[n] = lo_[p] + lo_[n / p];
      hi_[n] = hi_[p] + hi_[n / p];
    }
  }
}

}  // namespace sizecalc::logbounds
