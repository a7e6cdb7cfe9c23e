#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sizecalc/seq.hpp"

namespace sizecalc {

// One re-verified claim inside a theorem; `witness` is the index past which the
// claim is certified (or the counterexample index for expected-negative runs).
struct ClaimReport {
  std::string claim;
  Outcome status = Outcome::Undecided;
  std::optional<Int> witness;
  std::optional<std::string> certificate;
};

struct TheoremReport {
  std::string theorem;
  uint64_t horizon = 0;
  Outcome status = Outcome::Undecided;  // Proved = theorem holds as stated
  std::vector<ClaimReport> claims;
  std::optional<Counterexample> counterexample;
  double runtime_ms = 0;

  bool passed() const { return status == Outcome::Proved; }
  nlohmann::json to_json() const;
};

TheoremReport verify_galileo(uint64_t horizon);
TheoremReport verify_ordering_chain(uint64_t k, uint64_t horizon);
TheoremReport verify_multiples_bound(uint64_t k, uint64_t horizon);
TheoremReport verify_unit_interval_bounds(uint64_t horizon);
TheoremReport verify_rationals(uint64_t horizon);
TheoremReport verify_homogeneity(const Rat& length, const std::vector<Rat>& starts,
                                 uint64_t horizon);
// default battery: length 1 over starts {0,1,3,1/2,7/3} and length 1/2 over
// starts {0,1/2,2}
TheoremReport verify_homogeneity(uint64_t horizon);
// the coprime-pair arrangement of Q+; expected to FAIL homogeneity, so the
// report is Proved when the non-homogeneity is exhibited
TheoremReport verify_noncanonical_homogeneity(uint64_t horizon);
TheoremReport verify_union_product_laws(uint64_t trials, uint64_t horizon, uint64_t seed);

std::vector<std::string> theorem_names();
// throws UnknownTheorem; k-parameterised theorems use their default k = 3
TheoremReport verify_theorem(const std::string& name, uint64_t horizon, uint64_t seed = 0);

}  // namespace sizecalc
