#include "sizecalc/numtheory.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "sizecalc/errors.hpp"

namespace sizecalc::numtheory {

struct SieveCache::Impl {
  std::mutex mu;
  std::shared_ptr<const Tables> tables;
};

namespace {

std::shared_ptr<const SieveCache::Tables> build_tables(uint64_t limit);

}  // namespace

SieveCache::SieveCache() : impl_(std::make_shared<Impl>()) {}

SieveCache& SieveCache::instance() {
  static SieveCache cache;
  return cache;
}

std::shared_ptr<const SieveCache::Tables> SieveCache::snapshot(uint64_t need) {
  auto t = std::atomic_load(&impl_->tables);
  if (t && t->limit >= need) return t;
  std::lock_guard<std::mutex> lock(impl_->mu);
  t = std::atomic_load(&impl_->tables);
  if (t && t->limit >= need) return t;
  uint64_t limit = t ? t->limit : uint64_t(1) << 20;  // ~1e6 default
  while (limit < need) limit *= 2;
  auto fresh = build_tables(limit);
  std::atomic_store(&impl_->tables, fresh);
  return fresh;
}

namespace {

std::shared_ptr<const SieveCache::Tables> build_tables(uint64_t limit) {
  auto t = std::make_shared<SieveCache::Tables>();
  t->limit = limit;
  const size_t n = limit + 1;
  t->spf.assign(n, 0);
  t->phi.assign(n, 0);
  // linear sieve for spf and phi
  std::vector<uint32_t> primes;
  primes.reserve(limit / 10 + 16);
  if (n > 1) t->phi[1] = 1;
  for (uint64_t i = 2; i <= limit; ++i) {
    if (t->spf[i] == 0) {
      t->spf[i] = static_cast<uint32_t>(i);
      t->phi[i] = static_cast<uint32_t>(i - 1);
      primes.push_back(static_cast<uint32_t>(i));
    }
    for (uint32_t p : primes) {
      if (p > t->spf[i] || i * p > limit) break;
      t->spf[i * p] = p;
      t->phi[i * p] = (i % p == 0) ? t->phi[i] * p : t->phi[i] * (p - 1);
    }
  }
  t->phisum.assign(n, 0);
  t->pi.assign(n, 0);
  uint64_t acc = 0;
  uint32_t count = 0;
  for (uint64_t i = 1; i <= limit; ++i) {
    acc += t->phi[i];
    t->phisum[i] = acc;
    if (i >= 2 && t->spf[i] == i) ++count;
    t->pi[i] = count;
  }
  return t;
}

}  // namespace

uint64_t SieveCache::euler_phi(uint64_t n) { return snapshot(n)->phi[n]; }
uint64_t SieveCache::totient_summatory(uint64_t n) { return snapshot(n)->phisum[n]; }
uint64_t SieveCache::prime_pi(uint64_t n) { return snapshot(n)->pi[n]; }
bool SieveCache::is_prime(uint64_t n) { return n >= 2 && snapshot(n)->spf[n] == n; }
uint32_t SieveCache::smallest_prime_factor(uint64_t n) { return snapshot(n)->spf[n]; }

uint64_t SieveCache::limit() const {
  auto t = std::atomic_load(&impl_->tables);
  return t ? t->limit : 0;
}

void SieveCache::ensure(uint64_t n) { snapshot(n); }

uint64_t euler_phi(uint64_t n) { return SieveCache::instance().euler_phi(n); }
uint64_t totient_summatory(uint64_t n) { return SieveCache::instance().totient_summatory(n); }
uint64_t prime_pi(uint64_t n) { return SieveCache::instance().prime_pi(n); }
bool is_prime(uint64_t n) { return SieveCache::instance().is_prime(n); }

uint64_t gcd(uint64_t a, uint64_t b) { return std::gcd(a, b); }
bool coprime(uint64_t a, uint64_t b) { return std::gcd(a, b) == 1; }

FuncSpec FuncSpec::identity() {
  return {[](uint64_t m) { return Int(static_cast<unsigned long>(m)); }, "m"};
}

FuncSpec FuncSpec::power(unsigned k) {
  return {[k](uint64_t m) { return ipow(Int(static_cast<unsigned long>(m)), k); },
          "m^" + std::to_string(k)};
}

FuncSpec FuncSpec::linear(uint64_t k) {
  return {[k](uint64_t m) { return Int(static_cast<unsigned long>(k)) * static_cast<unsigned long>(m); },
          std::to_string(k) + "*m"};
}

FuncSpec FuncSpec::poly(std::vector<uint64_t> coeffs) {
  std::string name = "poly";
  return {[coeffs](uint64_t m) {
            Int acc = 0;
            Int x = 1;
            for (uint64_t c : coeffs) {
              x *= static_cast<unsigned long>(m);
              acc += Int(static_cast<unsigned long>(c)) * x;
            }
            return acc;
          },
          name};
}

FuncSpec FuncSpec::exp2() {
  return {[](uint64_t m) { return ipow(Int(2), static_cast<unsigned long>(m)); }, "2^m"};
}

uint64_t floor_inverse(const FuncSpec& f, const Int& n) {
  Int f1 = f.eval(1);
  if (f1 < 1) throw NotIncreasing(f.name + ": f(1) < 1");
  if (f1 > n) return 0;
  // grow until f(hi) > n, watching monotonicity on probed points
  uint64_t lo = 1, hi = 2;
  Int flo = f1;
  while (true) {
    Int fhi = f.eval(hi);
    if (fhi <= flo) throw NotIncreasing(f.name + " near m=" + std::to_string(hi));
    if (fhi > n) break;
    lo = hi;
    flo = fhi;
    hi *= 2;
  }
  // invariant: f(lo) <= n < f(hi)
  while (hi - lo > 1) {
    uint64_t mid = lo + (hi - lo) / 2;
    Int fm = f.eval(mid);
    if (fm <= n)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace sizecalc::numtheory
