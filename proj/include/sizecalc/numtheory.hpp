#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sizecalc/bigint.hpp"

namespace sizecalc::numtheory {

// Shared sieve-backed tables: smallest prime factor, Euler phi, the totient
// summatory prefix Phi and the prime-counting prefix pi.  Extended by doubling
// when an index beyond the current limit is requested; readers always see a
// complete snapshot.
class SieveCache {
 public:
  struct Tables {
    uint64_t limit = 0;
    std::vector<uint32_t> spf;
    std::vector<uint32_t> phi;
    std::vector<uint64_t> phisum;
    std::vector<uint32_t> pi;
  };

  static SieveCache& instance();

  uint64_t euler_phi(uint64_t n);
  uint64_t totient_summatory(uint64_t n);  // Phi(n) = sum_{i<=n} phi(i)
  uint64_t prime_pi(uint64_t n);
  bool is_prime(uint64_t n);
  uint32_t smallest_prime_factor(uint64_t n);

  uint64_t limit() const;
  void ensure(uint64_t n);

 private:
  SieveCache();
  std::shared_ptr<const Tables> snapshot(uint64_t need);

  struct Impl;
  std::shared_ptr<Impl> impl_;
};

uint64_t euler_phi(uint64_t n);
uint64_t totient_summatory(uint64_t n);
uint64_t prime_pi(uint64_t n);
bool is_prime(uint64_t n);

uint64_t gcd(uint64_t a, uint64_t b);
bool coprime(uint64_t a, uint64_t b);

// A strictly increasing integer-valued function m -> f(m), m >= 1.
struct FuncSpec {
  std::function<Int(uint64_t)> eval;
  std::string name;

  static FuncSpec identity();
  static FuncSpec power(unsigned k);          // m^k
  static FuncSpec linear(uint64_t k);         // k*m
  static FuncSpec poly(std::vector<uint64_t> coeffs);  // c1*m + c2*m^2 + ...
  static FuncSpec exp2();                     // 2^m
};

// max{m >= 1 : f(m) <= n}, or 0 if f(1) > n.  Exponential growth then binary
// search; throws NotIncreasing when a violation is observed on probed points.
uint64_t floor_inverse(const FuncSpec& f, const Int& n);

}  // namespace sizecalc::numtheory
