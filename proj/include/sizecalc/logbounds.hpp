#pragma once

#include <cstdint>
#include <vector>

#include "sizecalc/bigint.hpp"

namespace sizecalc::logbounds {

struct RatInterval {
  Rat lo, hi;
};

// Exact rational enclosure of ln(n), n >= 1, with roughly `bits` fractional
// bits of precision.  Computed from the atanh series with integer arithmetic
// only; the bounds are proofs, not estimates.
RatInterval log_interval(uint64_t n, unsigned bits = 64);

// Fixed-point enclosure table for fast range scans:
//   lo(n) / 2^kScaleBits  <=  ln n  <=  hi(n) / 2^kScaleBits.
// Primes get a direct series enclosure; composites compose additively via the
// smallest-prime-factor table.
class LogTable {
 public:
  static constexpr int kScaleBits = 40;
  static constexpr int64_t kScale = int64_t(1) << kScaleBits;

  explicit LogTable(uint64_t limit);

  int64_t lo(uint64_t n) const { return lo_[n]; }
  int64_t hi(uint64_t n) const { return hi_[n]; }
  uint64_t limit() const { return lo_.size() - 1; }

 private:
  std::vector<int64_t> lo_, hi_;
};

}  // namespace sizecalc::logbounds
