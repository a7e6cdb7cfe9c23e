#include <doctest.h>

#include <vector>

#include "sizecalc/errors.hpp"
#include "sizecalc/seq.hpp"
#include "sizecalc/set_model.hpp"

using namespace sizecalc;

namespace {

std::vector<long> longs(const Seq& s, uint64_t terms) {
  std::vector<long> out;
  for (uint64_t n = 1; n <= terms; ++n) out.push_back(static_cast<long>(s.at(n).get_si()));
  return out;
}

SizeSeq alpha() { return naturals().size_seq(); }

}  // namespace

TEST_CASE("arithmetic matches the worked examples") {
  SizeSeq a = alpha();
  CHECK(longs(add(a, SizeSeq::constant(Int(1))), 6) == std::vector<long>{2, 3, 4, 5, 6, 7});
  CHECK(longs(naturals0().size_seq(), 6) == std::vector<long>{2, 3, 4, 5, 6, 7});

  SizeSeq e = evens().size_seq(), o = odds().size_seq();
  CHECK(longs(mul(e, o), 6) == std::vector<long>{0, 1, 2, 4, 6, 9});

  // (alpha + 1) * phi = sigma(Q+)
  SizeSeq phi = unit_interval().size_seq();
  CHECK(longs(mul(add(a, SizeSeq::constant(Int(1))), phi), 5) ==
        std::vector<long>{2, 6, 16, 30, 60});
}

TEST_CASE("sub_checked enforces dominance") {
  SizeSeq a = alpha();
  SizeSeq tail([](uint64_t n) { return Int(n > 3 ? static_cast<unsigned long>(n - 3) : 0ul); });
  CHECK(longs(sub_checked(a, tail), 6) == std::vector<long>{1, 2, 3, 3, 3, 3});
  CHECK_THROWS_AS(sub_checked(evens().size_seq(), odds().size_seq()), DominanceViolation);
}

TEST_CASE("scalar multiples and lattice operations") {
  SizeSeq e = evens().size_seq(), o = odds().size_seq();
  CHECK(longs(scalar_mul(3, e), 6) == std::vector<long>{0, 3, 3, 6, 6, 9});
  CHECK(longs(lattice_meet(e, o), 6) == std::vector<long>{0, 1, 1, 2, 2, 3});
  CHECK(longs(lattice_join(e, o), 6) == std::vector<long>{1, 1, 2, 2, 3, 3});
  // meet and join are idempotent on the same value
  CHECK(lattice_meet(e, e).same_impl(e));
}

TEST_CASE("semiring laws hold pointwise to 10^4") {
  SizeSeq a = alpha();
  SizeSeq e = evens().size_seq();
  SizeSeq phi = unit_interval().size_seq();
  SizeSeq ab = add(a, e), ba = add(e, a);
  SizeSeq m1 = mul(a, e), m2 = mul(e, a);
  SizeSeq dl = mul(a, add(e, phi)), dr = add(mul(a, e), mul(a, phi));
  SizeSeq as1 = add(add(a, e), phi), as2 = add(a, add(e, phi));
  for (uint64_t n = 1; n <= 10000; ++n) {
    CHECK(ab.at(n) == ba.at(n));
    CHECK(m1.at(n) == m2.at(n));
    CHECK(dl.at(n) == dr.at(n));
    CHECK(as1.at(n) == as2.at(n));
  }
  // identities
  SizeSeq zero = SizeSeq::zero(), one = SizeSeq::constant(Int(1));
  for (uint64_t n = 1; n <= 100; ++n) {
    CHECK(add(a, zero).at(n) == a.at(n));
    CHECK(mul(a, one).at(n) == a.at(n));
    CHECK(mul(a, zero).at(n) == 0);
  }
}

TEST_CASE("monotonicity is enforced lazily") {
  SizeSeq bad([](uint64_t n) { return Int(n == 5 ? 1ul : static_cast<unsigned long>(n)); });
  CHECK(bad.at(4) == 4);
  CHECK_THROWS_AS(bad.at(5), MonotonicityViolation);
}

TEST_CASE("certificates validate on long prefixes and reject corruption") {
  alpha().validate_certificates(100000);
  evens().size_seq().validate_certificates(100000);
  unit_interval().size_seq().validate_certificates(100000);
  positive_rationals().size_seq().validate_certificates(20000);
  primes().size_seq().validate_certificates(100000);

  SizeSeq lying = alpha().with_certificate({EventuallyPeriodic{0, {Int(2)}}});
  CHECK_THROWS_AS(lying.validate_certificates(64), CertificateInvalid);

  SizeSeq wrong_cf = alpha().with_certificate({ClosedForm::constant(Int(7))});
  CHECK_THROWS_AS(wrong_cf.validate_certificates(4), CertificateInvalid);

  GrowthEnvelope env;
  env.lower = PowerBound{Rat(2), 2, 0, false, 1};  // 2n <= n is false
  env.upper = PowerBound{Rat(3), 2, 0, false, 1};
  env.n0 = 1;
  SizeSeq bad_env = alpha().with_certificate({env});
  CHECK_THROWS_AS(bad_env.validate_certificates(8), CertificateInvalid);
}

TEST_CASE("compare: finite sets of equal size are =F") {
  SizeSeq s12 = finite_naturals({1, 2}).size_seq();
  SizeSeq s34 = finite_naturals({3, 4}).size_seq();
  CHECK(longs(s12, 4) == std::vector<long>{1, 2, 2, 2});
  CHECK(longs(s34, 5) == std::vector<long>{0, 0, 1, 2, 2});
  Verdict v = compare(Rel::Eq, s12, s34, 100);
  CHECK(v.outcome == Outcome::Proved);
  CHECK(v.exit_code() == 0);
  CHECK(v.witness.has_value());
  CHECK(*v.witness == 3);  // they agree for all n > 3
}

TEST_CASE("compare: evens vs odds is the honest partial order") {
  SizeSeq e = evens().size_seq(), o = odds().size_seq();
  CHECK(compare(Rel::Eq, e, o, 100).outcome == Outcome::Refuted);
  CHECK(compare(Rel::Lt, e, o, 100).outcome == Outcome::Refuted);
  CHECK(compare(Rel::Le, e, o, 100).outcome == Outcome::Proved);
  CHECK(compare(Rel::Le, o, e, 100).outcome == Outcome::Refuted);  // o(1)=1 > 0 forever
  CHECK(compare(Rel::Le, o, add(e, SizeSeq::constant(Int(1))), 100).outcome == Outcome::Proved);
  CHECK(compare(Rel::OrderEq, e, o, 100).outcome == Outcome::Proved);
}

TEST_CASE("compare: reflexive and pointwise relations") {
  SizeSeq a = alpha();
  CHECK(compare(Rel::Eq, a, a, 10).outcome == Outcome::Proved);
  CHECK(compare(Rel::Lt, a, a, 10).outcome == Outcome::Refuted);
  CHECK(compare(Rel::InfLt, a, a, 10).outcome == Outcome::Refuted);
  CHECK(compare(Rel::Lt, a, add(a, SizeSeq::constant(Int(1))), 10).outcome == Outcome::Proved);
}

TEST_CASE("compare: infinitely-smaller and order-of-growth") {
  SizeSeq a = alpha();
  SizeSeq a2 = mul(a, a);
  Verdict v = compare(Rel::InfLt, a, a2, 100);
  CHECK(v.outcome == Outcome::Proved);
  CHECK(compare(Rel::InfLt, a2, a, 100).outcome == Outcome::Refuted);

  for (uint64_t k : {1, 5, 100}) {
    CHECK(compare(Rel::InfLt, SizeSeq::constant(Int(static_cast<unsigned long>(k))), a, 100).outcome ==
          Outcome::Proved);
  }

  Verdict oe = compare(Rel::OrderEq, multiples(3).size_seq(), a, 100);
  CHECK(oe.outcome == Outcome::Proved);
  REQUIRE(oe.k_forward.has_value());
  REQUIRE(oe.k_backward.has_value());
  CHECK(*oe.k_forward >= 3);
  CHECK(*oe.k_backward == 1);
  CHECK(compare(Rel::OrderEq, a, a2, 100).outcome == Outcome::Refuted);
}

TEST_CASE("compare without certificates stays undecided") {
  SizeSeq oracle_free_a([](uint64_t n) { return Int(static_cast<unsigned long>(n)); });
  SizeSeq oracle_free_b([](uint64_t n) { return Int(static_cast<unsigned long>(n + 1)); });
  Verdict v = compare(Rel::Lt, oracle_free_a, oracle_free_b, 200);
  CHECK(v.outcome == Outcome::Undecided);
  CHECK(v.exit_code() == 2);
}

TEST_CASE("verdict json and sequence rendering") {
  SizeSeq a = alpha();
  Verdict v = compare(Rel::Eq, a, a, 10);
  auto j = v.to_json();
  CHECK(j["outcome"] == "Proved");
  CHECK(j["relation"] == "=F");
  CHECK(a.to_csv(3) == "n,value\n1,1\n2,2\n3,3\n");
  auto sj = a.to_json(3);
  CHECK(sj["terms"].size() == 3);
  CHECK(sj["terms"][2] == "3");
}

TEST_CASE("relation tags round-trip") {
  for (Rel r : {Rel::Eq, Rel::Lt, Rel::Le, Rel::InfLt, Rel::OrderEq}) {
    auto back = rel_from_string(rel_to_string(r));
    REQUIRE(back.has_value());
    CHECK(*back == r);
  }
  CHECK(!rel_from_string("<>").has_value());
}
