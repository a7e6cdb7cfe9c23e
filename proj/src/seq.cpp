#include "sizecalc/seq.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sizecalc/errors.hpp"
#include "sizecalc/logbounds.hpp"

namespace sizecalc {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Seq
// ---------------------------------------------------------------------------

struct Seq::Impl {
  Generator gen;
  std::vector<Certificate> certs;
  bool monotone = false;

  mutable std::mutex mu;
  mutable std::vector<Int> memo;  // memo[i] = value(i+1)
  mutable uint64_t certs_validated_upto = 0;

  Int value(uint64_t n) const {
    if (n == 0) return Int(0);
    std::lock_guard<std::mutex> lock(mu);
    while (memo.size() < n) {
      uint64_t i = memo.size() + 1;
      Int v = gen(i);
      if (v < 0) throw std::runtime_error("sequence value negative at index " + std::to_string(i));
      if (monotone && i >= 2 && v < memo.back()) throw MonotonicityViolation(i);
      memo.push_back(std::move(v));
    }
    return memo[n - 1];
  }
};

Seq::Seq(Generator gen, std::vector<Certificate> certs) : impl_(std::make_shared<Impl>()) {
  impl_->gen = std::move(gen);
  impl_->certs = std::move(certs);
}

Int Seq::at(uint64_t n) const { return impl_->value(n); }

std::vector<Int> Seq::prefix(uint64_t terms) const {
  std::vector<Int> out;
  out.reserve(terms);
  for (uint64_t n = 1; n <= terms; ++n) out.push_back(at(n));
  return out;
}

const std::vector<Certificate>& Seq::certificates() const { return impl_->certs; }

bool Seq::same_impl(const Seq& o) const { return impl_ == o.impl_; }

SizeSeq::SizeSeq(Generator gen, std::vector<Certificate> certs) : Seq(std::move(gen), std::move(certs)) {
  impl_->monotone = true;
}

namespace {

std::shared_ptr<Seq::Impl> impl_with_cert(const std::shared_ptr<Seq::Impl>& src, Certificate c) {
  auto fresh = std::make_shared<Seq::Impl>();
  fresh->gen = src->gen;
  fresh->certs = src->certs;
  fresh->certs.push_back(std::move(c));
  fresh->monotone = src->monotone;
  return fresh;
}

}  // namespace

Seq Seq::with_certificate(Certificate c) const { return Seq(impl_with_cert(impl_, std::move(c))); }

SizeSeq SizeSeq::with_certificate(Certificate c) const {
  SizeSeq s(*this);
  s.impl_ = impl_with_cert(impl_, std::move(c));
  return s;
}

SizeSeq SizeSeq::constant(const Int& k) {
  Int kk = k;
  SizeSeq s([kk](uint64_t) { return kk; });
  return s.with_certificate({ClosedForm::constant(kk)})
      .with_certificate({EventuallyPeriodic{1, {Int(0)}}});
}

SizeSeq SizeSeq::zero() { return constant(Int(0)); }

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

namespace {

std::string power_bound_str(const PowerBound& p) {
  std::ostringstream out;
  out << p.c.get_str() << "*n^" << (p.d2 % 2 == 0 ? std::to_string(p.d2 / 2)
                                                  : std::to_string(p.d2) + "/2");
  if (p.e != 0) out << "*log(n)^" << p.e;
  return out.str();
}

}  // namespace

std::string Certificate::describe() const {
  if (const auto* ep = std::get_if<EventuallyPeriodic>(&payload)) {
    return "eventually-periodic(preperiod=" + std::to_string(ep->preperiod) +
           ", period=" + std::to_string(ep->diffs.size()) + ")";
  }
  if (const auto* env = std::get_if<GrowthEnvelope>(&payload)) {
    return "envelope(" + power_bound_str(env->lower) + " .. " + power_bound_str(env->upper) +
           ", n0=" + std::to_string(env->n0) + ")";
  }
  const auto& cf = std::get<ClosedForm>(payload);
  return "closed-form(" + cf.to_string() + ")";
}

namespace {

const Int& ep_diff_at(const EventuallyPeriodic& ep, uint64_t n) {
  // valid for n > preperiod
  return ep.diffs[(n - ep.preperiod - 1) % ep.diffs.size()];
}

// certified comparison of (c * n^(d2/2) * ln(n)^e)^2 against intervals
logbounds::RatInterval power_square_interval(const Rat& c, int d2, int e, uint64_t n, unsigned bits) {
  Rat base = c * c * Rat(ipow(Int(static_cast<unsigned long>(n)), static_cast<unsigned long>(d2)));
  if (e == 0) return {base, base};
  auto L = logbounds::log_interval(n, bits);
  int ee = 2 * e;
  if (ee > 0) return {base * rpow(L.lo, ee), base * rpow(L.hi, ee)};
  if (L.lo <= 0) return {Rat(0), Rat(1) << 200};  // degenerate; callers keep n >= 3
  return {base * rpow(L.hi, ee), base * rpow(L.lo, ee)};
}

// -1: form < v certified; +1: form > v; 0: exactly equal; nullopt: inconclusive
std::optional<int> cmp_power_value(const PowerBound& p, uint64_t n, const Int& v, unsigned bits = 64) {
  if (p.c == 0) return v > 0 ? -1 : 0;
  if (p.e == 0 && p.d2 % 2 == 0) {
    Rat form = p.c * Rat(ipow(Int(static_cast<unsigned long>(n)), static_cast<unsigned long>(p.d2 / 2)));
    Rat vv(v);
    if (form < vv) return -1;
    if (form > vv) return 1;
    return 0;
  }
  auto iv = power_square_interval(p.c, p.d2, p.e, n, bits);
  Rat v2 = Rat(v) * Rat(v);
  if (iv.hi < v2) return -1;
  if (iv.lo > v2) return 1;
  if (iv.lo == iv.hi && iv.lo == v2) return 0;
  return std::nullopt;
}

void check_envelope_at(const GrowthEnvelope& env, uint64_t n, const Int& v) {
  if (n < std::max<uint64_t>(env.n0, (env.lower.e != 0 || env.upper.e != 0) ? 3 : 1)) return;
  auto lc = cmp_power_value(env.lower, n, v, 80);
  if (!lc || *lc > 0 || (*lc == 0 && env.lower.strict))
    throw CertificateInvalid("envelope lower bound fails at n=" + std::to_string(n));
  auto uc = cmp_power_value(env.upper, n, v, 80);
  if (!uc || *uc < 0 || (*uc == 0 && env.upper.strict))
    throw CertificateInvalid("envelope upper bound fails at n=" + std::to_string(n));
}

}  // namespace

void Seq::validate_certificates(uint64_t upto) const {
  uint64_t from;
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    if (impl_->certs_validated_upto >= upto) return;
    from = impl_->certs_validated_upto + 1;
  }
  for (const Certificate& cert : impl_->certs) {
    if (const auto* ep = std::get_if<EventuallyPeriodic>(&cert.payload)) {
      uint64_t start = std::max(from, ep->preperiod + 1);
      for (uint64_t n = start; n <= upto; ++n) {
        if (at(n) - at(n - 1) != ep_diff_at(*ep, n))
          throw CertificateInvalid("periodic differences fail at n=" + std::to_string(n));
      }
    } else if (const auto* env = std::get_if<GrowthEnvelope>(&cert.payload)) {
      for (uint64_t n = std::max(from, env->n0); n <= upto; ++n) check_envelope_at(*env, n, at(n));
    } else {
      const auto& cf = std::get<ClosedForm>(cert.payload);
      for (uint64_t n = from; n <= upto; ++n) {
        if (cf.eval(n) != at(n))
          throw CertificateInvalid("closed form " + cf.to_string() + " fails at n=" + std::to_string(n));
      }
    }
  }
  std::lock_guard<std::mutex> lock(impl_->mu);
  impl_->certs_validated_upto = std::max(impl_->certs_validated_upto, upto);
}

// ---------------------------------------------------------------------------
// Arithmetic with certificate combination
// ---------------------------------------------------------------------------

namespace {

std::optional<EventuallyPeriodic> ep_of(const Seq& s) {
  for (const auto& c : s.certificates())
    if (const auto* ep = std::get_if<EventuallyPeriodic>(&c.payload)) return *ep;
  return std::nullopt;
}

std::optional<ClosedForm> cf_of(const Seq& s) {
  for (const auto& c : s.certificates())
    if (const auto* cf = std::get_if<ClosedForm>(&c.payload)) return *cf;
  return std::nullopt;
}

std::optional<GrowthEnvelope> env_of(const Seq& s) {
  for (const auto& c : s.certificates())
    if (const auto* e = std::get_if<GrowthEnvelope>(&c.payload)) return *e;
  return std::nullopt;
}

EventuallyPeriodic ep_combine(const EventuallyPeriodic& a, const EventuallyPeriodic& b, int sign) {
  EventuallyPeriodic r;
  r.preperiod = std::max(a.preperiod, b.preperiod);
  uint64_t L = std::lcm<uint64_t>(a.diffs.size(), b.diffs.size());
  r.diffs.reserve(L);
  for (uint64_t j = 0; j < L; ++j) {
    uint64_t n = r.preperiod + 1 + j;
    r.diffs.push_back(ep_diff_at(a, n) + sign * ep_diff_at(b, n));
  }
  return r;
}

EventuallyPeriodic ep_scaled(const EventuallyPeriodic& a, uint64_t k) {
  EventuallyPeriodic r = a;
  for (auto& d : r.diffs) d *= static_cast<unsigned long>(k);
  return r;
}

std::pair<int, int> key_of(const PowerBound& p) { return {p.d2, p.e}; }

// certified m with  c1*n^(k1.d2/2)*L^k1.e <= c2*n^(k2.d2/2)*L^k2.e  for all n >= m
// (not necessarily minimal; may exceed the word size for log-only separations)
std::optional<Int> find_threshold(const Rat& c1, std::pair<int, int> k1, const Rat& c2,
                                  std::pair<int, int> k2, uint64_t start) {
  if (c1 <= 0) return Int(std::max<uint64_t>(start, 3));
  if (c2 <= 0) return std::nullopt;
  int dd2 = k2.first - k1.first;
  int de = k2.second - k1.second;
  if (dd2 < 0) return std::nullopt;
  if (dd2 == 0) {
    if (de < 0) return std::nullopt;
    if (de == 0) {
      if (c1 <= c2) return Int(std::max<uint64_t>(start, 1));
      return std::nullopt;
    }
    // need c2 * ln(n)^de >= c1; since ln 3 > 1, n >= 3^r works for any
    // integer r with c2 * r^de >= c1
    unsigned long r = 1;
    while (c2 * rpow(Rat(r), de) < c1) {
      r *= 2;
      if (r > (1u << 20)) return std::nullopt;
    }
    Int th = ipow(Int(3), r);
    Int st(static_cast<unsigned long>(std::max<uint64_t>(start, 3)));
    return th > st ? th : st;
  }
  unsigned bits = 64;
  uint64_t n = std::max<uint64_t>(start, 3);
  for (int iter = 0; iter < 200; ++iter) {
    if (n > (uint64_t(1) << 58)) {
      if (bits >= 192) return std::nullopt;
      bits += 64;
      n = std::max<uint64_t>(start, 3);
    }
    bool mono_ok = true;
    if (dd2 > 0 && de < 0) {
      auto L = logbounds::log_interval(n, bits);
      mono_ok = L.lo >= Rat(2 * static_cast<long>(-de), dd2);
    }
    if (mono_ok) {
      auto A = power_square_interval(c1, k1.first, k1.second, n, bits);
      auto B = power_square_interval(c2, k2.first, k2.second, n, bits);
      if (A.hi <= B.lo) return Int(static_cast<unsigned long>(n));
    }
    n *= 2;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Generalized power-log bounds (the comparison engine's working form)
// ---------------------------------------------------------------------------

// G(n) = sum over terms of c * n^(d2/2) * ln(n)^e, valid (as a lower or upper
// bound, per use) for n >= n0; `strict` records whether the bound is strict.
struct GForm {
  std::map<std::pair<int, int>, Rat> terms;
  uint64_t n0 = 1;
  bool strict = false;

  void put(std::pair<int, int> key, Rat c) {
    c.canonicalize();
    if (c == 0) return;
    auto [it, fresh] = terms.emplace(key, c);
    if (!fresh) {
      it->second += c;
      it->second.canonicalize();
      if (it->second == 0) terms.erase(it);
    }
  }
};

GForm gform_sub(const GForm& a, const GForm& b) {
  GForm g = a;
  g.n0 = std::max(a.n0, b.n0);
  g.strict = a.strict || b.strict;
  for (const auto& [k, c] : b.terms) g.put(k, -c);
  return g;
}

GForm gform_scaled(const GForm& a, const Rat& s) {
  GForm g;
  g.n0 = a.n0;
  g.strict = a.strict;
  for (const auto& [k, c] : a.terms) g.put(k, c * s);
  return g;
}

// lower = true derives a certified lower bound of the closed form, else upper.
GForm cf_bound(const ClosedForm& cf, bool lower) {
  GForm g;
  for (const auto& [mono, coeff] : cf.terms()) {
    // the monomial's own bound; a negative coefficient flips which side we need
    bool want_lower = lower == (coeff > 0);
    Rat c(1);
    int d2 = 0, e = 0;
    bool strict = false;
    for (const AtomKey& a : mono) {
      AtomBounds ab = atom_bounds(a);
      const PowerBound& pb = want_lower ? ab.lower : ab.upper;
      c *= pb.c;
      d2 += pb.d2;
      e += pb.e;
      strict = strict || pb.strict;
      g.n0 = std::max(g.n0, pb.n0);
    }
    g.put({d2, e}, coeff * c);
    g.strict = g.strict || strict;
  }
  return g;
}

// Eventually the sequence is linear per residue class: value(n) = s*n + c_r.
// The bounds collapse those residue constants to their min / max.
std::pair<GForm, GForm> ep_bounds(const Seq& seq, const EventuallyPeriodic& ep) {
  const uint64_t L = ep.diffs.size();
  Int S = 0;
  for (const Int& d : ep.diffs) S += d;
  Rat slope = Rat(S) / Rat(static_cast<unsigned long>(L));
  slope.canonicalize();
  Rat cmin, cmax;
  for (uint64_t j = 1; j <= L; ++j) {
    uint64_t n = ep.preperiod + j;
    Rat c = Rat(seq.at(n)) - slope * Rat(static_cast<unsigned long>(n));
    c.canonicalize();
    if (j == 1 || c < cmin) cmin = c;
    if (j == 1 || c > cmax) cmax = c;
  }
  GForm lo, hi;
  lo.n0 = hi.n0 = ep.preperiod + 1;
  if (ep.preperiod == 0) lo.n0 = hi.n0 = 1;
  lo.put({2, 0}, slope);
  lo.put({0, 0}, cmin);
  hi.put({2, 0}, slope);
  hi.put({0, 0}, cmax);
  return {lo, hi};
}

std::vector<GForm> seq_bounds(const Seq& s, bool lower) {
  std::vector<GForm> out;
  if (auto cf = cf_of(s)) out.push_back(cf_bound(*cf, lower));
  if (auto env = env_of(s)) {
    const PowerBound& pb = lower ? env->lower : env->upper;
    GForm g;
    g.n0 = std::max<uint64_t>(env->n0, pb.e != 0 ? 3 : 1);
    g.strict = pb.strict;
    g.put({pb.d2, pb.e}, pb.c);
    out.push_back(g);
  }
  if (auto ep = ep_of(s)) {
    auto [lo, hi] = ep_bounds(s, *ep);
    out.push_back(lower ? lo : hi);
  }
  if (out.empty() && !lower) {
    // nothing known from above; unusable
  }
  if (out.empty() && lower) {
    GForm g;  // every sequence of naturals is >= 0
    out.push_back(g);
  }
  return out;
}

struct NonnegProof {
  Int from;
  bool strictly_positive;
};

// Certifies G(n) >= 0 (strictly positive when the leading term exists) for all
// n >= from, by leading-term domination of the negative terms.
std::optional<NonnegProof> prove_nonneg(const GForm& g) {
  if (g.terms.empty()) return NonnegProof{Int(std::max<uint64_t>(g.n0, 1)), false};
  auto lead = g.terms.rbegin();
  if (lead->second <= 0) return std::nullopt;
  std::vector<std::pair<std::pair<int, int>, Rat>> negs;
  for (const auto& [k, c] : g.terms)
    if (c < 0) negs.push_back({k, c});
  uint64_t start = std::max<uint64_t>(g.n0, negs.empty() ? 1 : 3);
  Int m(static_cast<unsigned long>(start));
  if (!negs.empty()) {
    Rat target = lead->second / Rat(2 * static_cast<unsigned long>(negs.size()));
    for (const auto& [k, c] : negs) {
      auto th = find_threshold(-c, k, target, lead->first, start);
      if (!th) return std::nullopt;
      if (*th > m) m = *th;
    }
  }
  // keep n where ln n factors make sense
  bool uses_log = false;
  for (const auto& [k, c] : g.terms)
    if (k.second != 0) uses_log = true;
  if (uses_log && m < 3) m = 3;
  return NonnegProof{m, true};
}

std::optional<std::pair<int, int>> lead_key(const GForm& g) {
  if (g.terms.empty()) return std::nullopt;
  return g.terms.rbegin()->first;
}

// ---------------------------------------------------------------------------
// compare()
// ---------------------------------------------------------------------------

struct ScanInfo {
  uint64_t limit = 0;
  uint64_t last_neq = 0;  // last n with a(n) != b(n)
  uint64_t last_ge = 0;   // last n with a(n) >= b(n)
  uint64_t last_gt = 0;   // last n with a(n) > b(n)
};

ScanInfo scan_prefix(const Seq& a, const Seq& b, uint64_t limit) {
  ScanInfo s;
  s.limit = limit;
  for (uint64_t n = 1; n <= limit; ++n) {
    Int va = a.at(n), vb = b.at(n);
    if (va != vb) s.last_neq = n;
    if (va >= vb) s.last_ge = n;
    if (va > vb) s.last_gt = n;
  }
  return s;
}

Int tighten(const Int& certified_m, uint64_t last_violation, uint64_t scanlimit) {
  if (certified_m <= static_cast<unsigned long>(scanlimit))
    return Int(static_cast<unsigned long>(last_violation));
  return certified_m;
}

Counterexample make_cx(const Seq& a, const Seq& b, uint64_t n) { return {n, a.at(n), b.at(n)}; }

struct EpLinear {
  uint64_t n0;               // common preperiod
  uint64_t period;           // lcm period
  Int block_a, block_b;      // per-period increments
  std::vector<Int> base_a, base_b;  // values at n0+1 .. n0+period
};

EpLinear ep_align(const Seq& a, const EventuallyPeriodic& ea, const Seq& b, const EventuallyPeriodic& eb) {
  EpLinear lin;
  lin.n0 = std::max(ea.preperiod, eb.preperiod);
  lin.period = std::lcm<uint64_t>(ea.diffs.size(), eb.diffs.size());
  lin.block_a = 0;
  lin.block_b = 0;
  for (uint64_t j = 0; j < lin.period; ++j) {
    uint64_t n = lin.n0 + 1 + j;
    lin.block_a += ep_diff_at(ea, n);
    lin.block_b += ep_diff_at(eb, n);
    lin.base_a.push_back(a.at(n));
    lin.base_b.push_back(b.at(n));
  }
  return lin;
}

// Decides Eq / Lt / Le from the exact eventual piecewise-linear forms.
std::optional<Verdict> ep_decide_pointwise(Rel rel, const EpLinear& lin, const Seq& a, const Seq& b,
                                           const ScanInfo& scan, Verdict v) {
  const Int &A = lin.block_a, &B = lin.block_b;
  const uint64_t L = lin.period;
  auto violation_last = [&] {
    switch (rel) {
      case Rel::Eq: return scan.last_neq;
      case Rel::Lt: return scan.last_ge;
      default: return scan.last_gt;
    }
  }();
  auto ok = [&](const Int& da) {  // da = b_r - a_r eventual constant difference
    switch (rel) {
      case Rel::Eq: return da == 0;
      case Rel::Lt: return da > 0;
      default: return da >= 0;
    }
  };
  v.certificate = "periodic-differences(preperiod=" + std::to_string(lin.n0) +
                  ", period=" + std::to_string(L) + ")";
  if (rel == Rel::Eq) {
    if (A == B) {
      bool all_eq = true;
      uint64_t bad = 0;
      for (uint64_t r = 0; r < L; ++r)
        if (lin.base_a[r] != lin.base_b[r]) {
          all_eq = false;
          bad = r;
        }
      if (all_eq) {
        v.outcome = Outcome::Proved;
        v.witness = tighten(lin.n0, scan.last_neq, scan.limit);
        return v;
      }
      v.outcome = Outcome::Refuted;
      uint64_t cx = scan.last_neq ? scan.last_neq : lin.n0 + 1 + bad;
      v.witness = cx;
      v.counterexample = make_cx(a, b, cx);
      return v;
    }
    // diverging slopes: equality fails from some block onward
    v.outcome = Outcome::Refuted;
    uint64_t cx = scan.last_neq;
    if (!cx) {
      for (uint64_t t = 1; !cx && t < 4; ++t)
        for (uint64_t r = 0; r < L; ++r) {
          uint64_t n = lin.n0 + 1 + r + t * L;
          if (a.at(n) != b.at(n)) {
            cx = n;
            break;
          }
        }
    }
    if (cx) {
      v.witness = cx;
      v.counterexample = make_cx(a, b, cx);
    }
    return v;
  }
  // Lt / Le
  Int D = B - A;
  if (D > 0) {
    // each residue eventually satisfies strict <; compute the exact threshold
    uint64_t m = lin.n0;
    for (uint64_t r = 0; r < L; ++r) {
      Int d0 = lin.base_b[r] - lin.base_a[r];
      Int t(0);
      // smallest t with d0 + t*D  > 0 (Lt) or >= 0 (Le)
      Int need = (rel == Rel::Lt) ? Int(1 - d0) : Int(-d0);
      if (need > 0) {
        t = (need + D - 1) / D;
      }
      Int nr = lin.n0 + 1 + r + t * static_cast<long>(L);
      uint64_t nru = nr.get_ui();
      m = std::max<uint64_t>(m, nru > 0 ? nru - 1 : 0);
    }
    v.outcome = Outcome::Proved;
    v.witness = tighten(m, violation_last, scan.limit);
    return v;
  }
  if (D < 0) {
    v.outcome = Outcome::Refuted;
    uint64_t cx = violation_last;
    if (!cx) {
      for (uint64_t t = 1; !cx && t < uint64_t(64); ++t)
        for (uint64_t r = 0; r < L; ++r) {
          uint64_t n = lin.n0 + 1 + r + t * L;
          Int va = a.at(n), vb = b.at(n);
          bool viol = (rel == Rel::Lt) ? va >= vb : va > vb;
          if (viol) {
            cx = n;
            break;
          }
        }
    }
    if (cx) {
      v.witness = cx;
      v.counterexample = make_cx(a, b, cx);
    }
    return v;
  }
  // equal slopes: constant eventual differences per residue
  bool all_ok = true;
  uint64_t bad = 0;
  for (uint64_t r = 0; r < L; ++r)
    if (!ok(lin.base_b[r] - lin.base_a[r])) {
      all_ok = false;
      bad = r;
    }
  if (all_ok) {
    v.outcome = Outcome::Proved;
    v.witness = tighten(lin.n0, violation_last, scan.limit);
  } else {
    v.outcome = Outcome::Refuted;
    uint64_t cx = violation_last ? violation_last : lin.n0 + 1 + bad;
    v.witness = cx;
    v.counterexample = make_cx(a, b, cx);
  }
  return v;
}

std::optional<Verdict> ep_decide(Rel rel, const Seq& a, const Seq& b, const ScanInfo& scan, Verdict v) {
  auto ea = ep_of(a), eb = ep_of(b);
  if (!ea || !eb) return std::nullopt;
  EpLinear lin = ep_align(a, *ea, b, *eb);
  const Int &A = lin.block_a, &B = lin.block_b;
  const uint64_t L = lin.period;
  if (rel == Rel::Eq || rel == Rel::Lt || rel == Rel::Le)
    return ep_decide_pointwise(rel, lin, a, b, scan, v);

  v.certificate = "periodic-differences(preperiod=" + std::to_string(lin.n0) +
                  ", period=" + std::to_string(L) + ")";
  if (rel == Rel::InfLt) {
    if (A == 0) {
      if (B > 0) {
        v.outcome = Outcome::Proved;
        v.witness = tighten(lin.n0, scan.last_ge, scan.limit);
        return v;
      }
      // both eventually constant per residue
      bool a_zero = true, b_pos = true;
      for (uint64_t r = 0; r < L; ++r) {
        if (lin.base_a[r] != 0) a_zero = false;
        if (lin.base_b[r] < 1) b_pos = false;
      }
      if (a_zero && b_pos) {
        v.outcome = Outcome::Proved;
        v.witness = tighten(lin.n0, scan.last_ge, scan.limit);
      } else {
        v.outcome = Outcome::Refuted;
        v.witness = lin.n0;
      }
      return v;
    }
    v.outcome = Outcome::Refuted;  // k*a outgrows b for k > B/A
    v.witness = lin.n0;
    return v;
  }
  // OrderEq: each side eventually bounded by a finite multiple of the other
  auto minimal_k = [&](const Int& SA, const std::vector<Int>& xa, const Int& SB,
                       const std::vector<Int>& xb) -> std::optional<uint64_t> {
    // smallest k with k*x >=_F y where x has block slope SA, bases xa
    if (SA == 0 && SB > 0) return std::nullopt;
    uint64_t k0 = 1;
    if (SA > 0 && SB > 0) {
      Int q = (SB + SA - 1) / SA;
      k0 = std::max<uint64_t>(1, q.get_ui());
    }
    for (uint64_t k = k0; k < k0 + 3 + L; ++k) {
      Int kA = Int(static_cast<unsigned long>(k)) * SA;
      if (kA > SB) return k;
      if (kA == SB) {
        bool all = true;
        for (uint64_t r = 0; r < L; ++r)
          if (Int(static_cast<unsigned long>(k)) * xa[r] < xb[r]) all = false;
        if (all) return k;
      }
      if (SA == 0 && SB == 0) {
        bool all = true;
        for (uint64_t r = 0; r < L; ++r)
          if (Int(static_cast<unsigned long>(k)) * xa[r] < xb[r]) all = false;
        if (all) return k;
        // grows with k only if every xb with xa==0 is 0
        bool possible = true;
        for (uint64_t r = 0; r < L; ++r)
          if (xa[r] == 0 && xb[r] > 0) possible = false;
        if (!possible) return std::nullopt;
        // find directly
        Int kk(1);
        for (uint64_t r = 0; r < L; ++r)
          if (xa[r] > 0) kk = std::max(kk, Int((xb[r] + xa[r] - 1) / xa[r]));
        return kk.get_ui();
      }
    }
    return std::nullopt;
  };
  auto kf = minimal_k(A, lin.base_a, B, lin.base_b);
  auto kb = minimal_k(B, lin.base_b, A, lin.base_a);
  if (kf && kb) {
    v.outcome = Outcome::Proved;
    v.k_forward = *kf;
    v.k_backward = *kb;
    v.witness = lin.n0;
  } else {
    v.outcome = Outcome::Refuted;
    v.witness = lin.n0;
  }
  return v;
}

// closed-form route for the pointwise relations
std::optional<Verdict> cf_decide(Rel rel, const Seq& a, const Seq& b, const ScanInfo& scan, Verdict v) {
  auto ca = cf_of(a), cb = cf_of(b);
  if (!ca || !cb) return std::nullopt;
  if (rel != Rel::Eq && rel != Rel::Lt && rel != Rel::Le) return std::nullopt;
  ClosedForm d = *cb - *ca;  // b - a
  v.certificate = "closed-forms(" + ca->to_string() + " vs " + cb->to_string() + ")";
  if (rel == Rel::Eq) {
    if (d.is_zero()) {
      v.outcome = Outcome::Proved;
      v.witness = scan.last_neq;  // equality holds at every index
      return v;
    }
    if (d.is_constant()) {
      v.outcome = Outcome::Refuted;
      uint64_t cx = scan.last_neq ? scan.last_neq : 1;
      v.witness = cx;
      v.counterexample = make_cx(a, b, cx);
      return v;
    }
    return std::nullopt;  // leave refutation to the growth route
  }
  bool strict = rel == Rel::Lt;
  if (d.is_constant()) {
    Rat c = d.is_zero() ? Rat(0) : d.terms().begin()->second;
    bool holds = strict ? c > 0 : c >= 0;
    if (holds) {
      v.outcome = Outcome::Proved;
      v.witness = uint64_t(0);
    } else {
      v.outcome = Outcome::Refuted;
      uint64_t cx = strict ? (scan.last_ge ? scan.last_ge : 1) : (scan.last_gt ? scan.last_gt : 1);
      v.witness = cx;
      v.counterexample = make_cx(a, b, cx);
    }
    return v;
  }
  auto proof = prove_nonneg(cf_bound(d, /*lower=*/true));
  if (proof && (proof->strictly_positive || !strict)) {
    v.outcome = Outcome::Proved;
    uint64_t viol = strict ? scan.last_ge : scan.last_gt;
    v.witness = tighten(proof->from, viol, scan.limit);
    return v;
  }
  auto refute = prove_nonneg(cf_bound(ClosedForm() - d, /*lower=*/true));
  if (refute && (refute->strictly_positive || strict)) {
    // a >= b (or a > b) from refute->from onward
    v.outcome = Outcome::Refuted;
    uint64_t cx = strict ? scan.last_ge : scan.last_gt;
    if (!cx && refute->from <= scan.limit * 8) cx = std::max<uint64_t>(refute->from.get_ui(), 1);
    if (cx) {
      v.witness = cx;
      v.counterexample = make_cx(a, b, cx);
    } else {
      v.witness = refute->from;
    }
    return v;
  }
  return std::nullopt;
}

std::string gform_cert_summary(const Seq& a, const Seq& b) {
  auto part = [](const Seq& s) {
    if (auto cf = cf_of(s)) return "closed-form(" + cf->to_string() + ")";
    if (auto env = env_of(s)) return Certificate{*env}.describe();
    if (auto ep = ep_of(s)) return Certificate{*ep}.describe();
    return std::string("none");
  };
  return "growth-bounds(" + part(a) + " vs " + part(b) + ")";
}

std::optional<Verdict> gform_decide(Rel rel, const Seq& a, const Seq& b, const ScanInfo& scan, Verdict v) {
  auto lows_a = seq_bounds(a, true), ups_a = seq_bounds(a, false);
  auto lows_b = seq_bounds(b, true), ups_b = seq_bounds(b, false);
  v.certificate = gform_cert_summary(a, b);

  auto prove_sep = [&](const std::vector<GForm>& ups, const std::vector<GForm>& lows,
                       bool need_strict) -> std::optional<Int> {
    // certifies upper(x) - lower(y) <= 0 eventually, i.e. x REL y
    for (const GForm& U : ups)
      for (const GForm& L : lows) {
        GForm G = gform_sub(L, U);
        auto p = prove_nonneg(G);
        if (p && (p->strictly_positive || G.strict || !need_strict)) return p->from;
      }
    return std::nullopt;
  };

  switch (rel) {
    case Rel::Eq: {
      // only refutable here: strict separation in either direction
      for (bool flip : {false, true}) {
        auto m = flip ? prove_sep(ups_b, lows_a, true) : prove_sep(ups_a, lows_b, true);
        if (!m) continue;
        v.outcome = Outcome::Refuted;
        uint64_t cx = scan.last_neq;
        if (!cx && *m <= scan.limit * 8) cx = m->get_ui();
        if (cx) {
          v.witness = cx;
          v.counterexample = make_cx(a, b, cx);
        } else {
          v.witness = *m;
        }
        return v;
      }
      return std::nullopt;
    }
    case Rel::Lt:
    case Rel::Le: {
      bool strict = rel == Rel::Lt;
      if (auto m = prove_sep(ups_a, lows_b, strict)) {
        v.outcome = Outcome::Proved;
        v.witness = tighten(*m, strict ? scan.last_ge : scan.last_gt, scan.limit);
        return v;
      }
      if (auto m = prove_sep(ups_b, lows_a, !strict)) {
        // b <(=) a eventually refutes a <(=) b
        v.outcome = Outcome::Refuted;
        uint64_t cx = strict ? scan.last_ge : scan.last_gt;
        if (!cx && *m <= scan.limit * 8) cx = m->get_ui();
        if (cx) {
          v.witness = cx;
          v.counterexample = make_cx(a, b, cx);
        } else {
          v.witness = *m;
        }
        return v;
      }
      return std::nullopt;
    }
    case Rel::InfLt: {
      for (const GForm& U : ups_a)
        for (const GForm& L : lows_b) {
          auto lk = lead_key(L);
          if (!lk || L.terms.rbegin()->second <= 0) continue;
          bool sep = true;
          for (const auto& [k, c] : U.terms)
            if (!(k < *lk)) sep = false;
          if (!sep) continue;
          GForm G = gform_sub(L, U);
          auto p = prove_nonneg(G);
          if (p && p->strictly_positive) {
            v.outcome = Outcome::Proved;
            v.witness = tighten(p->from, scan.last_ge, scan.limit);
            return v;
          }
        }
      // refute: some finite multiple of a eventually dominates b
      for (const GForm& L : lows_a)
        for (const GForm& U : ups_b) {
          auto la = lead_key(L);
          auto ub = lead_key(U);
          uint64_t k = 1;
          if (ub) {
            if (!la || !(*ub <= *la) || L.terms.rbegin()->second <= 0) continue;
            if (*ub == *la) {
              Rat ratio = U.terms.rbegin()->second / L.terms.rbegin()->second;
              Int kk;
              mpz_cdiv_q(kk.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
              k = std::max<uint64_t>(1, kk.get_ui() + 1);
            }
          }
          GForm G = gform_sub(gform_scaled(L, Rat(static_cast<unsigned long>(k))), U);
          auto p = prove_nonneg(G);
          if (p) {
            v.outcome = Outcome::Refuted;
            v.witness = p->from;
            v.k_forward = k;
            return v;
          }
        }
      return std::nullopt;
    }
    case Rel::OrderEq: {
      auto direction = [&](const std::vector<GForm>& lows_x, const std::vector<GForm>& ups_y)
          -> std::optional<std::pair<uint64_t, Int>> {  // (k, from)
        for (const GForm& L : lows_x)
          for (const GForm& U : ups_y) {
            auto la = lead_key(L);
            auto ub = lead_key(U);
            if (!ub) {  // y bounded above by 0: any k works
              return std::make_pair(uint64_t(1), Int(std::max(L.n0, U.n0)));
            }
            if (!la || L.terms.rbegin()->second <= 0) continue;
            if (*ub < *la) {
              GForm G = gform_sub(L, U);
              if (auto p = prove_nonneg(G)) return std::make_pair(uint64_t(1), p->from);
            } else if (*ub == *la) {
              Rat ratio = U.terms.rbegin()->second / L.terms.rbegin()->second;
              Int kk;
              mpz_cdiv_q(kk.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
              uint64_t k0 = std::max<uint64_t>(1, kk.get_ui());
              for (uint64_t k = k0; k < k0 + 3; ++k) {
                GForm G = gform_sub(gform_scaled(L, Rat(static_cast<unsigned long>(k))), U);
                auto p = prove_nonneg(G);
                if (p) return std::make_pair(k, p->from);
              }
            }
          }
        return std::nullopt;
      };
      auto fwd = direction(lows_a, ups_b);
      auto bwd = direction(lows_b, ups_a);
      if (fwd && bwd) {
        v.outcome = Outcome::Proved;
        v.k_forward = fwd->first;
        v.k_backward = bwd->first;
        v.witness = fwd->second > bwd->second ? fwd->second : bwd->second;
        return v;
      }
      // refute via infinite separation either way
      Verdict sub = v;
      sub.rel = Rel::InfLt;
      if (auto r = gform_decide(Rel::InfLt, a, b, scan, sub); r && r->outcome == Outcome::Proved) {
        v.outcome = Outcome::Refuted;
        v.witness = r->witness;
        return v;
      }
      if (auto r = gform_decide(Rel::InfLt, b, a, scan, sub); r && r->outcome == Outcome::Proved) {
        v.outcome = Outcome::Refuted;
        v.witness = r->witness;
        return v;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

Verdict compare(Rel rel, const Seq& a, const Seq& b, uint64_t horizon) {
  horizon = std::max<uint64_t>(horizon, 1);
  Verdict v;
  v.rel = rel;
  v.outcome = Outcome::Undecided;
  v.horizon = horizon;

  if (a.same_impl(b)) {
    v.certificate = "reflexivity";
    switch (rel) {
      case Rel::Eq:
      case Rel::Le:
      case Rel::OrderEq:
        v.outcome = Outcome::Proved;
        v.witness = uint64_t(0);
        if (rel == Rel::OrderEq) v.k_forward = v.k_backward = 1;
        return v;
      case Rel::Lt:
        v.outcome = Outcome::Refuted;
        v.witness = uint64_t(1);
        v.counterexample = make_cx(a, b, 1);
        return v;
      case Rel::InfLt:
        // k*a <F a fails for every k as soon as a is somewhere nonzero; and
        // for a == 0 the strict relation 0 <F 0 fails too.
        v.outcome = Outcome::Refuted;
        v.witness = uint64_t(1);
        return v;
    }
  }

  uint64_t validate_to = std::min<uint64_t>(horizon, 4096);
  a.validate_certificates(validate_to);
  b.validate_certificates(validate_to);

  ScanInfo scan = scan_prefix(a, b, horizon);

  if (auto r = ep_decide(rel, a, b, scan, v)) return *r;
  if (auto r = cf_decide(rel, a, b, scan, v)) return *r;
  if (auto r = gform_decide(rel, a, b, scan, v)) return *r;

  v.certificate.reset();
  return v;
}

// ---------------------------------------------------------------------------
// sequence arithmetic
// ---------------------------------------------------------------------------

namespace {

std::vector<Certificate> combine_add(const Seq& a, const Seq& b, int sign) {
  std::vector<Certificate> certs;
  auto ca = cf_of(a), cb = cf_of(b);
  if (ca && cb) certs.push_back({sign > 0 ? *ca + *cb : *ca - *cb});
  auto ea = ep_of(a), eb = ep_of(b);
  if (ea && eb) certs.push_back({ep_combine(*ea, *eb, sign)});
  if (sign > 0) {
    auto va = env_of(a), vb = env_of(b);
    if (va && vb) {
      GrowthEnvelope env;
      env.n0 = std::max(va->n0, vb->n0);
      auto side = [&](const PowerBound& p, const PowerBound& q, bool lower) -> std::optional<PowerBound> {
        if (key_of(p) == key_of(q)) {
          PowerBound r = p;
          r.c += q.c;
          r.strict = p.strict || q.strict;
          r.n0 = std::max(p.n0, q.n0);
          return r;
        }
        const PowerBound& big = key_of(p) > key_of(q) ? p : q;
        const PowerBound& small = key_of(p) > key_of(q) ? q : p;
        if (lower) {
          // l_big + l_small >= l_big since lower forms are non-negative
          PowerBound r = big;
          r.n0 = std::max(p.n0, q.n0);
          return r;
        }
        // u_big + u_small <= (c_big + c_small) * f_big once f_small <= f_big
        auto th = find_threshold(Rat(1), key_of(small), Rat(1), key_of(big),
                                 std::max(p.n0, q.n0));
        if (!th || !th->fits_ulong_p()) return std::nullopt;
        PowerBound r = big;
        r.c = big.c + small.c;
        r.strict = false;
        r.n0 = std::max<uint64_t>({p.n0, q.n0, th->get_ui()});
        return r;
      };
      auto lo = side(va->lower, vb->lower, true);
      auto hi = side(va->upper, vb->upper, false);
      if (lo && hi) {
        env.lower = *lo;
        env.upper = *hi;
        env.n0 = std::max<uint64_t>({env.n0, lo->n0, hi->n0});
        certs.push_back({env});
      }
    }
  }
  return certs;
}

std::vector<Certificate> combine_mul(const Seq& a, const Seq& b) {
  std::vector<Certificate> certs;
  auto ca = cf_of(a), cb = cf_of(b);
  if (ca && cb) certs.push_back({*ca * *cb});
  auto va = env_of(a), vb = env_of(b);
  if (va && vb) {
    GrowthEnvelope env;
    auto mulb = [](const PowerBound& p, const PowerBound& q) {
      PowerBound r;
      r.c = p.c * q.c;
      r.d2 = p.d2 + q.d2;
      r.e = p.e + q.e;
      r.strict = p.strict || q.strict;
      r.n0 = std::max(p.n0, q.n0);
      return r;
    };
    env.lower = mulb(va->lower, vb->lower);
    env.upper = mulb(va->upper, vb->upper);
    env.n0 = std::max<uint64_t>({va->n0, vb->n0, 3});
    certs.push_back({env});
  }
  return certs;
}

}  // namespace

SizeSeq add(const SizeSeq& a, const SizeSeq& b) {
  return SizeSeq([a, b](uint64_t n) { return Int(a.at(n) + b.at(n)); }, combine_add(a, b, +1));
}

SizeSeq mul(const SizeSeq& a, const SizeSeq& b) {
  return SizeSeq([a, b](uint64_t n) { return Int(a.at(n) * b.at(n)); }, combine_mul(a, b));
}

SizeSeq sub_checked(const SizeSeq& a, const SizeSeq& b, uint64_t horizon) {
  auto gen = [a, b](uint64_t n) {
    Int va = a.at(n), vb = b.at(n);
    if (vb > va) throw DominanceViolation(n);
    return Int(va - vb);
  };
  SizeSeq r(gen, combine_add(a, b, -1));
  for (uint64_t n = 1; n <= horizon; ++n) r.at(n);  // eager dominance check
  return r;
}

SizeSeq scalar_mul(uint64_t k, const SizeSeq& a) {
  if (k == 0) return SizeSeq::zero();
  std::vector<Certificate> certs;
  Rat kr(static_cast<unsigned long>(k));
  if (auto cf = cf_of(a)) certs.push_back({cf->scaled(kr)});
  if (auto ep = ep_of(a)) certs.push_back({ep_scaled(*ep, k)});
  if (auto env = env_of(a)) {
    GrowthEnvelope e = *env;
    e.lower.c *= kr;
    e.upper.c *= kr;
    certs.push_back({e});
  }
  return SizeSeq([a, k](uint64_t n) { return Int(a.at(n) * static_cast<unsigned long>(k)); },
                 std::move(certs));
}

SizeSeq lattice_meet(const SizeSeq& a, const SizeSeq& b) {
  if (a.same_impl(b)) return a;
  return SizeSeq([a, b](uint64_t n) {
    Int va = a.at(n), vb = b.at(n);
    return va < vb ? va : vb;
  });
}

SizeSeq lattice_join(const SizeSeq& a, const SizeSeq& b) {
  if (a.same_impl(b)) return a;
  return SizeSeq([a, b](uint64_t n) {
    Int va = a.at(n), vb = b.at(n);
    return va > vb ? va : vb;
  });
}

// ---------------------------------------------------------------------------
// rendering
// ---------------------------------------------------------------------------

std::string rel_to_string(Rel r) {
  switch (r) {
    case Rel::Eq: return "=F";
    case Rel::Lt: return "<F";
    case Rel::Le: return "<=F";
    case Rel::InfLt: return "<<F";
    case Rel::OrderEq: return "~F";
  }
  return "?";
}

std::optional<Rel> rel_from_string(const std::string& s) {
  if (s == "=F" || s == "=") return Rel::Eq;
  if (s == "<F" || s == "<") return Rel::Lt;
  if (s == "<=F" || s == "<=") return Rel::Le;
  if (s == "<<F" || s == "<<") return Rel::InfLt;
  if (s == "~F" || s == "~") return Rel::OrderEq;
  return std::nullopt;
}

std::string outcome_to_string(Outcome o) {
  switch (o) {
    case Outcome::Proved: return "Proved";
    case Outcome::Refuted: return "Refuted";
    case Outcome::Undecided: return "Undecided";
  }
  return "?";
}

json Verdict::to_json() const {
  json j;
  j["relation"] = rel_to_string(rel);
  j["outcome"] = outcome_to_string(outcome);
  j["horizon"] = horizon;
  if (witness) {
    j["witness"] = witness->fits_ulong_p() ? json(witness->get_ui()) : json(dec(*witness));
  } else {
    j["witness"] = nullptr;
  }
  j["certificate"] = certificate ? json(*certificate) : json(nullptr);
  if (k_forward) j["k_forward"] = *k_forward;
  if (k_backward) j["k_backward"] = *k_backward;
  if (counterexample) {
    j["counterexample"] = {{"index", counterexample->index},
                           {"lhs", dec(counterexample->lhs)},
                           {"rhs", dec(counterexample->rhs)}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

int Verdict::exit_code() const {
  switch (outcome) {
    case Outcome::Proved: return 0;
    case Outcome::Refuted: return 1;
    case Outcome::Undecided: return 2;
  }
  return 2;
}

json Seq::to_json(uint64_t terms) const {
  json j;
  j["from"] = 1;
  json arr = json::array();
  for (uint64_t n = 1; n <= terms; ++n) arr.push_back(dec(at(n)));
  j["terms"] = std::move(arr);
  json certs = json::array();
  for (const auto& c : impl_->certs) certs.push_back(c.describe());
  j["certificates"] = std::move(certs);
  return j;
}

std::string Seq::to_csv(uint64_t terms) const {
  std::ostringstream out;
  out << "n,value\n";
  for (uint64_t n = 1; n <= terms; ++n) out << n << "," << dec(at(n)) << "\n";
  return out.str();
}

}  // namespace sizecalc
