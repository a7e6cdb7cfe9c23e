#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sizecalc/bigint.hpp"

namespace sizecalc {

// Atom basis of the closed-form grammar: n, floor(n/k), floor(sqrt n),
// the totient summatory Phi(n) and the prime count pi(n).
struct AtomKey {
  enum class Kind { N, FloorDiv, Sqrt, Phi, PrimePi };
  Kind kind;
  uint64_t k = 0;  // divisor, FloorDiv only

  auto operator<=>(const AtomKey&) const = default;
};

// c * n^(d2/2) * (ln n)^e, the power-log form used by growth envelopes and
// asymptotic comparisons.  Exponent d is kept doubled so sqrt(n) is exact.
struct PowerBound {
  Rat c;
  int d2 = 0;
  int e = 0;
  bool strict = false;  // bound holds with strict inequality for n >= n0
  uint64_t n0 = 1;
};

struct AtomBounds {
  PowerBound lower, upper;
};

// Closed forms are kept canonical: a rational-coefficient polynomial over the
// commuting atom basis.  Equality of closed forms is therefore syntactic
// equality of the term maps, and functional equality follows.
class ClosedForm {
 public:
  using Monomial = std::vector<AtomKey>;  // sorted

  ClosedForm() = default;
  static ClosedForm constant(const Int& c);
  static ClosedForm constant(const Rat& c);
  static ClosedForm atom(AtomKey a);
  static ClosedForm var_n();
  static ClosedForm floor_div(uint64_t k);
  static ClosedForm floor_sqrt();
  static ClosedForm phi_summatory();
  static ClosedForm prime_pi();

  ClosedForm operator+(const ClosedForm& o) const;
  ClosedForm operator-(const ClosedForm& o) const;
  ClosedForm operator*(const ClosedForm& o) const;
  ClosedForm scaled(const Rat& c) const;

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  // Exact value at index n; throws CertificateInvalid on a non-integral result.
  Int eval(uint64_t n) const;

  const std::map<Monomial, Rat>& terms() const { return terms_; }
  std::string to_string() const;

 private:
  std::map<Monomial, Rat> terms_;
  void put(Monomial m, Rat c);
};

Int eval_atom(AtomKey a, uint64_t n);

// Certified power-log bounds for each atom (e.g. Phi: 3/10*n^2 < Phi(n) <=
// n^2/2 from n0, pi: n/ln n < pi(n) < 5/4 * n/ln n from the stated thresholds).
AtomBounds atom_bounds(AtomKey a);

std::string atom_to_string(AtomKey a);

}  // namespace sizecalc
