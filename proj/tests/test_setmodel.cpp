#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include <nlohmann/json.hpp>

#include "sizecalc/errors.hpp"
#include "sizecalc/numtheory.hpp"
#include "sizecalc/set_model.hpp"

using namespace sizecalc;
namespace nt = numtheory;

namespace {

std::vector<long> longs(const Seq& s, uint64_t terms) {
  std::vector<long> out;
  for (uint64_t n = 1; n <= terms; ++n) out.push_back(static_cast<long>(s.at(n).get_si()));
  return out;
}

}  // namespace

TEST_CASE("golden prefixes from the canonical arrangements") {
  CHECK(longs(naturals().size_seq(), 5) == std::vector<long>{1, 2, 3, 4, 5});
  CHECK(longs(naturals0().size_seq(), 5) == std::vector<long>{2, 3, 4, 5, 6});
  CHECK(longs(integers().size_seq(), 5) == std::vector<long>{3, 5, 7, 9, 11});
  CHECK(longs(unit_interval().char_seq(), 8) == std::vector<long>{1, 1, 2, 2, 4, 2, 6, 4});
  CHECK(longs(unit_interval().size_seq(), 9) ==
        std::vector<long>{1, 2, 4, 6, 10, 12, 18, 22, 28});
  CHECK(longs(positive_rationals().char_seq(), 5) == std::vector<long>{2, 4, 10, 14, 30});
  CHECK(longs(positive_rationals().size_seq(), 5) == std::vector<long>{2, 6, 16, 30, 60});
  CHECK(longs(rationals().size_seq(), 5) == std::vector<long>{5, 13, 33, 61, 121});
  CHECK(longs(evens().size_seq(), 7) == std::vector<long>{0, 1, 1, 2, 2, 3, 3});
  CHECK(longs(odds().size_seq(), 6) == std::vector<long>{1, 1, 2, 2, 3, 3});
  CHECK(longs(cartesian(naturals(), naturals()).size_seq(), 5) ==
        std::vector<long>{1, 4, 9, 16, 25});
  CHECK(longs(cartesian(evens(), odds()).size_seq(), 6) == std::vector<long>{0, 1, 2, 4, 6, 9});
  CHECK(longs(cartesian(evens(), evens()).size_seq(), 6) == std::vector<long>{0, 1, 1, 4, 4, 9});
  CHECK(longs(cartesian(odds(), odds()).size_seq(), 6) == std::vector<long>{1, 1, 4, 4, 9, 9});
}

TEST_CASE("product components follow the max-frame arrangement") {
  CountableSet nn = cartesian(naturals(), naturals());
  auto c1 = nn.component(1);
  REQUIRE(c1.size() == 1);
  CHECK(c1[0] == Element::tuple(Element::natural(1), Element::natural(1)));
  auto c2 = nn.component(2);
  REQUIRE(c2.size() == 3);
  CHECK(c2[0] == Element::tuple(Element::natural(1), Element::natural(2)));
  CHECK(c2[1] == Element::tuple(Element::natural(2), Element::natural(2)));
  CHECK(c2[2] == Element::tuple(Element::natural(2), Element::natural(1)));
  auto c3 = nn.component(3);
  CHECK(c3.size() == 5);
}

TEST_CASE("unit interval components are the reduced fractions") {
  auto c5 = unit_interval().component(5);
  REQUIRE(c5.size() == 4);
  CHECK(c5[0] == Element::unit_frac(1, 5));
  CHECK(c5[1] == Element::unit_frac(2, 5));
  CHECK(c5[2] == Element::unit_frac(3, 5));
  CHECK(c5[3] == Element::unit_frac(4, 5));
  // chi(I) agrees with Euler phi beyond the n=1 convention
  Seq chi = unit_interval().char_seq();
  CHECK(chi.at(1) == 1);
  for (uint64_t n = 2; n <= 10000; ++n)
    CHECK(chi.at(n) == Int(static_cast<unsigned long>(nt::euler_phi(n))));
}

TEST_CASE("first components of Q+, Q and Z") {
  auto q1 = positive_rationals().component(1);
  REQUIRE(q1.size() == 2);
  CHECK(q1[0] == Element::pos_frac(0, 1, 1));  // 1
  CHECK(q1[1] == Element::pos_frac(1, 1, 1));  // 2
  CHECK(rationals().component(1).size() == 5);
  auto z1 = integers().component(1);
  REQUIRE(z1.size() == 3);
  CHECK(integers().contains(Element::integer(0)));
  CHECK(integers().contains(Element::integer(-7)));
}

TEST_CASE("components partition and membership agrees") {
  CountableSet qp = positive_rationals();
  std::set<std::string> seen;
  for (uint64_t n = 1; n <= 60; ++n) {
    for (const Element& e : qp.component(n)) {
      CHECK(seen.insert(e.to_string()).second);  // disjointness
      CHECK(qp.contains(e));
      auto idx = qp.index_of(e);
      REQUIRE(idx.has_value());
      CHECK(*idx == n);
    }
  }
  CHECK(qp.universe() == "Q+");
}

TEST_CASE("image sets recover the floor-inverse sizes") {
  SizeSeq sq = squares().size_seq();
  for (uint64_t n = 1; n <= 10000; ++n)
    CHECK(sq.at(n) == isqrt(Int(static_cast<unsigned long>(n))));
  SizeSeq cubes = image_set(nt::FuncSpec::power(3)).size_seq();
  CHECK(longs(cubes, 9) == std::vector<long>{1, 1, 1, 1, 1, 1, 1, 2, 2});
  SizeSeq m7 = multiples(7).size_seq();
  for (uint64_t n = 1; n <= 5000; ++n) CHECK(m7.at(n) == Int(static_cast<unsigned long>(n / 7)));
}

TEST_CASE("primes with and without the unit") {
  SizeSeq p = primes().size_seq();
  for (uint64_t n = 1; n <= 10000; ++n)
    CHECK(p.at(n) == Int(static_cast<unsigned long>(nt::prime_pi(n))));
  SizeSeq p1 = primes(true).size_seq();
  CHECK(p1.at(1) == 1);
  CHECK(p1.at(10) == Int(static_cast<unsigned long>(nt::prime_pi(10) + 1)));
}

TEST_CASE("set algebra: inclusion-exclusion and part-whole on fixed sets") {
  CountableSet e = evens(), m3 = multiples(3);
  CountableSet u = set_union(e, m3), i = set_inter(e, m3), d = set_diff(e, m3);
  SizeSeq se = e.size_seq(), sm = m3.size_seq(), su = u.size_seq(), si = i.size_seq(),
          sd = d.size_seq();
  for (uint64_t n = 1; n <= 500; ++n) {
    CHECK(su.at(n) + si.at(n) == se.at(n) + sm.at(n));
    CHECK(sd.at(n) + si.at(n) == se.at(n));
    CHECK(si.at(n) == Int(static_cast<unsigned long>(n / 6)));  // evens of multiples of 3
  }
  // union of evens and odds is all of N
  SizeSeq all = set_union(evens(), odds()).size_seq();
  for (uint64_t n = 1; n <= 200; ++n) CHECK(all.at(n) == Int(static_cast<unsigned long>(n)));
  // part-whole: strict from the first witness on
  SizeSeq a = naturals().size_seq();
  for (uint64_t n = 1; n <= 500; ++n) CHECK(se.at(n) < a.at(n));
}

TEST_CASE("products carry the size product identity") {
  CountableSet e = evens(), o = odds();
  CountableSet prod = cartesian(e, o);
  SizeSeq sp = prod.size_seq(), se = e.size_seq(), so = o.size_seq();
  for (uint64_t n = 1; n <= 300; ++n) CHECK(sp.at(n) == se.at(n) * so.at(n));
  // component contents cross-check against the enumeration
  for (uint64_t n = 1; n <= 50; ++n) {
    Int chi = prod.char_seq().at(n);
    CHECK(chi == sp.at(n) - (n > 1 ? sp.at(n - 1) : Int(0)));
    CHECK(Int(static_cast<unsigned long>(prod.component(n).size())) == chi);
  }
}

TEST_CASE("generic subsets agree with their specialized constructors") {
  CountableSet pred_evens =
      subset(naturals(), [](const Element& e) { return e.v % 2 == 0; }, "pred-evens");
  SizeSeq a = pred_evens.size_seq(), b = evens().size_seq();
  for (uint64_t n = 1; n <= 1000; ++n) CHECK(a.at(n) == b.at(n));
}

TEST_CASE("finite sets use the first-component convention") {
  CHECK(longs(finite_naturals({1, 2}).size_seq(), 4) == std::vector<long>{1, 2, 2, 2});
  CHECK(longs(finite_naturals({3, 4}).size_seq(), 5) == std::vector<long>{0, 0, 1, 2, 2});
  CHECK(longs(empty_set().size_seq(), 3) == std::vector<long>{0, 0, 0});
  CHECK_THROWS_AS(finite_naturals({2, 2}), DuplicateElement);
}

TEST_CASE("incompatible universes are rejected") {
  CHECK_THROWS_AS(set_union(naturals(), integers()), IncompatibleUniverse);
  CHECK_THROWS_AS(set_inter(evens(), unit_interval()), IncompatibleUniverse);
}

TEST_CASE("interval counting matches elementwise filtering") {
  Rat lo(1, 3), hi(5, 2);
  lo.canonicalize();
  hi.canonicalize();
  CountableSet qp = positive_rationals();
  CountableSet iv = interval_set(qp, lo, true, hi, false);
  Seq chi = iv.char_seq();
  for (uint64_t n = 1; n <= 100; ++n) {
    uint64_t direct = 0;
    for (const Element& e : qp.component(n)) {
      Rat v = e.value();
      if (lo < v && v <= hi) ++direct;
    }
    CHECK(chi.at(n) == Int(static_cast<unsigned long>(direct)));
  }
  // signed intervals over Q
  CountableSet q = rationals();
  Rat qlo(-2), qhi(3, 2);
  qhi.canonicalize();
  CountableSet qiv = interval_set(q, qlo, true, qhi, false);
  Seq qchi = qiv.char_seq();
  for (uint64_t n = 1; n <= 80; ++n) {
    uint64_t direct = 0;
    for (const Element& e : q.component(n)) {
      Rat v = e.value();
      if (qlo < v && v <= qhi) ++direct;
    }
    CHECK(qchi.at(n) == Int(static_cast<unsigned long>(direct)));
  }
  // the noncanonical encoding counts against its own components
  CountableSet nc = noncanonical_positive_rationals();
  CountableSet niv = interval_set(nc, Rat(0), true, Rat(1), false);
  Seq nchi = niv.char_seq();
  for (uint64_t n = 1; n <= 80; ++n) {
    uint64_t direct = 0;
    for (const Element& e : nc.component(n)) {
      Rat v = e.value();
      if (Rat(0) < v && v <= Rat(1)) ++direct;
    }
    CHECK(nchi.at(n) == Int(static_cast<unsigned long>(direct)));
  }
  CHECK_THROWS_AS(rational_interval(Rat(2), Rat(2)), EmptyInterval);
}

TEST_CASE("rational_interval realizes homogeneity's base case") {
  SizeSeq unit = rational_interval(Rat(0), Rat(1)).size_seq();
  SizeSeq phi = unit_interval().size_seq();
  for (uint64_t n = 1; n <= 300; ++n) CHECK(unit.at(n) == phi.at(n));
}

TEST_CASE("noncanonical Q+ reproduces the rejected sizes") {
  CountableSet nc = noncanonical_positive_rationals();
  CHECK(longs(nc.char_seq(), 5) == std::vector<long>{1, 2, 4, 4, 8});
  SizeSeq s = nc.size_seq();
  for (uint64_t n = 1; n <= 2000; ++n)
    CHECK(s.at(n) == Int(2 * Int(static_cast<unsigned long>(nt::totient_summatory(n))) - 1));
}

TEST_CASE("element json encodings") {
  CHECK(Element::natural(4).to_json() == nlohmann::json(4));
  CHECK(Element::unit_frac(2, 5).to_json() == nlohmann::json({2, 5}));
  CHECK(Element::pos_frac(1, 2, 3).to_json() == nlohmann::json({1, 2, 3}));
  CHECK(Element::signed_frac(-1, 0, 1, 2).to_json() == nlohmann::json({-1, 0, 1, 2}));
  auto t = Element::tuple(Element::natural(1), Element::natural(2)).to_json();
  CHECK(t == nlohmann::json({1, 2}));
}
