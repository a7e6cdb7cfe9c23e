#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sizecalc/bigint.hpp"
#include "sizecalc/numtheory.hpp"
#include "sizecalc/seq.hpp"

namespace sizecalc {

// One element of a canonically arranged set.  UnitFrac is a coprime pair
// (k,m) ~ k/m; PosFrac a mixed fraction p + k/m with co(k,m), k <= m;
// SignedFrac adds a sign (0 encodes the rational zero).
struct Element {
  enum class Kind { Natural, Integer, UnitFrac, PosFrac, SignedFrac, Tuple };
  Kind kind = Kind::Natural;
  long long v = 0;    // Natural/Integer value; SignedFrac sign in {-1,0,1}
  uint64_t p = 0;     // integer part (PosFrac/SignedFrac)
  uint64_t k = 0, m = 1;  // fraction k/m
  std::vector<Element> parts;  // Tuple

  static Element natural(long long n);
  static Element integer(long long z);
  static Element unit_frac(uint64_t k, uint64_t m);
  static Element pos_frac(uint64_t p, uint64_t k, uint64_t m);
  static Element signed_frac(int sign, uint64_t p, uint64_t k, uint64_t m);
  static Element rational_zero();
  static Element tuple(Element a, Element b);

  Rat value() const;  // numeric value (fraction kinds and integers)

  bool operator==(const Element& o) const;
  bool operator<(const Element& o) const;  // fixed canonical order

  nlohmann::json to_json() const;
  std::string to_string() const;
};

// A symbolic countable set with its canonical arrangement.  Immutable value;
// the characteristic and size sequences are shared and memoized.
class CountableSet {
 public:
  std::vector<Element> component(uint64_t n) const;
  Seq char_seq() const;
  SizeSeq size_seq() const;

  bool contains(const Element& e) const;
  // component index of an element under this set's universe arrangement
  // (defined for member-shaped elements regardless of membership)
  std::optional<uint64_t> index_of(const Element& e) const;

  const std::string& universe() const;
  std::string describe() const;
  nlohmann::json component_json(uint64_t n) const;

  struct Node;
  explicit CountableSet(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  const std::shared_ptr<const Node>& node() const { return node_; }

 private:
  std::shared_ptr<const Node> node_;
};

// base universes
CountableSet naturals();
CountableSet naturals0();
CountableSet integers();
CountableSet unit_interval();
CountableSet positive_rationals();
CountableSet rationals();
// the rejected coprime-pair arrangement of Q+ (index max(k,m)); kept only to
// reproduce its documented non-homogeneity
CountableSet noncanonical_positive_rationals();
CountableSet primes(bool include_one = false);

// derived sets
CountableSet subset(const CountableSet& parent, std::function<bool(const Element&)> pred,
                    std::string label = "subset");
// subset of N whose membership is an eventually periodic index mask:
// n <= pre uses head[n-1], else period[(n - pre - 1) mod period.size()]
CountableSet periodic_subset(std::vector<bool> head, std::vector<bool> period,
                             std::string label = "periodic");
// subset selecting whole components of the parent by an eventually periodic
// index mask (used for certified random subsets of Q+ and products)
CountableSet component_subset(const CountableSet& parent, std::vector<bool> head,
                              std::vector<bool> period, std::string label = "mask");
CountableSet image_set(numtheory::FuncSpec f);
CountableSet evens();
CountableSet odds();
CountableSet multiples(uint64_t k);
CountableSet squares();
CountableSet cartesian(const CountableSet& a, const CountableSet& b);
CountableSet set_union(const CountableSet& a, const CountableSet& b);
CountableSet set_inter(const CountableSet& a, const CountableSet& b);
CountableSet set_diff(const CountableSet& a, const CountableSet& b);
CountableSet finite_set(std::vector<Element> elements);
CountableSet finite_naturals(std::vector<long long> values);
CountableSet empty_set();
// rationals of `base` (Q+, Q or the noncanonical encoding) with value in the
// interval; default semantics half-open (lo, hi]
CountableSet interval_set(const CountableSet& base, const Rat& lo, bool lo_strict, const Rat& hi,
                          bool hi_strict);
CountableSet rational_interval(const Rat& lo, const Rat& hi);

}  // namespace sizecalc
