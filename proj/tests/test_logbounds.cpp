#include <doctest.h>

#include <cmath>

#include "sizecalc/logbounds.hpp"

using namespace sizecalc;

TEST_CASE("log_interval encloses the double log tightly") {
  for (uint64_t n : {2, 3, 5, 10, 97, 113, 1000, 999983}) {
    auto iv = logbounds::log_interval(n, 64);
    CHECK(iv.lo < iv.hi);
    // get_d rounds, so compare with a double-sized slack
    double d = std::log(static_cast<double>(n));
    CHECK(iv.lo.get_d() <= d + 1e-12);
    CHECK(iv.hi.get_d() >= d - 1e-12);
    CHECK(iv.hi.get_d() - iv.lo.get_d() < 1e-12);
  }
}

TEST_CASE("log_interval respects log laws in exact arithmetic") {
  auto l6 = logbounds::log_interval(6, 80);
  auto l2 = logbounds::log_interval(2, 80);
  auto l3 = logbounds::log_interval(3, 80);
  CHECK(l2.lo + l3.lo <= l6.hi);
  CHECK(l2.hi + l3.hi >= l6.lo);
}

TEST_CASE("LogTable brackets std::log at scale 2^40") {
  logbounds::LogTable table(100000);
  const double scale = std::pow(2.0, 40);
  for (uint64_t n = 2; n <= 100000; n += (n < 100 ? 1 : 997)) {
    double d = std::log(static_cast<double>(n)) * scale;
    CHECK(static_cast<double>(table.lo(n)) <= d + 1.0);
    CHECK(static_cast<double>(table.hi(n)) >= d - 1.0);
    CHECK(table.lo(n) < table.hi(n));
  }
}

TEST_CASE("LogTable bounds are monotone in n") {
  logbounds::LogTable table(2000);
  for (uint64_t n = 3; n <= 2000; ++n) {
    CHECK(table.lo(n) >= table.lo(n - 1));
    CHECK(table.hi(n) >= table.hi(n - 1));
  }
}
