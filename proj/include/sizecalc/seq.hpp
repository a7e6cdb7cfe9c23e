#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sizecalc/bigint.hpp"
#include "sizecalc/closed_form.hpp"

namespace sizecalc {

// First differences are eventually periodic:
// for all n > preperiod,  value(n) - value(n-1) = diffs[(n - preperiod - 1) mod L],
// with value(0) taken as 0.
struct EventuallyPeriodic {
  uint64_t preperiod = 0;
  std::vector<Int> diffs;  // one period of the first-difference sequence
};

struct GrowthEnvelope {
  PowerBound lower, upper;  // share the validity threshold n0 below
  uint64_t n0 = 1;
};

struct Certificate {
  std::variant<EventuallyPeriodic, GrowthEnvelope, ClosedForm> payload;

  std::string describe() const;
};

class SizeSeq;

// A lazy, memoized sequence of arbitrary-precision integers over 1-based
// indices.  Value semantics; the memoized prefix is append-only and guarded
// for concurrent readers.
class Seq {
 public:
  using Generator = std::function<Int(uint64_t)>;

  explicit Seq(Generator gen, std::vector<Certificate> certs = {});

  Int at(uint64_t n) const;  // n >= 1
  std::vector<Int> prefix(uint64_t terms) const;

  const std::vector<Certificate>& certificates() const;
  Seq with_certificate(Certificate c) const;
  bool same_impl(const Seq& o) const;

  // Checks every attached certificate against the generator on [1, upto];
  // throws CertificateInvalid on mismatch.  Results are cached.
  void validate_certificates(uint64_t upto) const;

  nlohmann::json to_json(uint64_t terms) const;
  std::string to_csv(uint64_t terms) const;

  struct Impl;

 protected:
  std::shared_ptr<Impl> impl_;
  Seq(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  friend class SizeSeq;
};

// A non-decreasing Seq; monotonicity is enforced lazily as values are produced.
class SizeSeq : public Seq {
 public:
  explicit SizeSeq(Generator gen, std::vector<Certificate> certs = {});
  SizeSeq with_certificate(Certificate c) const;

  static SizeSeq constant(const Int& k);
  static SizeSeq zero();
};

SizeSeq add(const SizeSeq& a, const SizeSeq& b);
SizeSeq mul(const SizeSeq& a, const SizeSeq& b);
// Requires a(n) >= b(n) pointwise; checked eagerly up to `horizon` and lazily
// beyond.  Throws DominanceViolation.
SizeSeq sub_checked(const SizeSeq& a, const SizeSeq& b, uint64_t horizon = 64);
SizeSeq scalar_mul(uint64_t k, const SizeSeq& a);
SizeSeq lattice_meet(const SizeSeq& a, const SizeSeq& b);
SizeSeq lattice_join(const SizeSeq& a, const SizeSeq& b);

enum class Rel { Eq, Lt, Le, InfLt, OrderEq };  // =F  <F  <=F  <<F  ~F
enum class Outcome { Proved, Refuted, Undecided };

std::string rel_to_string(Rel r);
std::optional<Rel> rel_from_string(const std::string& s);
std::string outcome_to_string(Outcome o);

struct Counterexample {
  uint64_t index;
  Int lhs, rhs;
};

struct Verdict {
  Rel rel;
  Outcome outcome;
  std::optional<Int> witness;                // index m: the relation holds for all n > m
  std::optional<std::string> certificate;    // summary of the validating certificate
  uint64_t horizon = 0;
  std::optional<uint64_t> k_forward, k_backward;  // ~F scalar witnesses
  std::optional<Counterexample> counterexample;

  nlohmann::json to_json() const;
  int exit_code() const;  // 0 Proved, 1 Refuted, 2 Undecided
};

// Certified three-valued decision of the Frechet-filter relations.  Proved and
// Refuted are only ever returned on the strength of validated certificates;
// plain prefix scans yield Undecided.
Verdict compare(Rel rel, const Seq& a, const Seq& b, uint64_t horizon);

}  // namespace sizecalc
