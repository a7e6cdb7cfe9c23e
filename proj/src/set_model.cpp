#include "sizecalc/set_model.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sizecalc/errors.hpp"

namespace sizecalc {

using nlohmann::json;
namespace nt = numtheory;

// ---------------------------------------------------------------------------
// Element
// ---------------------------------------------------------------------------

Element Element::natural(long long n) {
  Element e;
  e.kind = Kind::Natural;
  e.v = n;
  return e;
}

Element Element::integer(long long z) {
  Element e;
  e.kind = Kind::Integer;
  e.v = z;
  return e;
}

Element Element::unit_frac(uint64_t k, uint64_t m) {
  Element e;
  e.kind = Kind::UnitFrac;
  e.k = k;
  e.m = m;
  return e;
}

Element Element::pos_frac(uint64_t p, uint64_t k, uint64_t m) {
  Element e;
  e.kind = Kind::PosFrac;
  e.p = p;
  e.k = k;
  e.m = m;
  return e;
}

Element Element::signed_frac(int sign, uint64_t p, uint64_t k, uint64_t m) {
  Element e;
  e.kind = Kind::SignedFrac;
  e.v = sign;
  e.p = p;
  e.k = k;
  e.m = m;
  return e;
}

Element Element::rational_zero() { return signed_frac(0, 0, 0, 1); }

Element Element::tuple(Element a, Element b) {
  Element e;
  e.kind = Kind::Tuple;
  e.parts = {std::move(a), std::move(b)};
  return e;
}

Rat Element::value() const {
  switch (kind) {
    case Kind::Natural:
    case Kind::Integer:
      return Rat(static_cast<long>(v));
    case Kind::UnitFrac: {
      Rat r(static_cast<unsigned long>(k), static_cast<unsigned long>(m));
      r.canonicalize();
      return r;
    }
    case Kind::PosFrac: {
      Rat r(static_cast<unsigned long>(k), static_cast<unsigned long>(m));
      r.canonicalize();
      return Rat(static_cast<unsigned long>(p)) + r;
    }
    case Kind::SignedFrac: {
      if (v == 0) return Rat(0);
      Rat r(static_cast<unsigned long>(k), static_cast<unsigned long>(m));
      r.canonicalize();
      r += static_cast<unsigned long>(p);
      return v < 0 ? Rat(-r) : r;
    }
    case Kind::Tuple:
      return Rat(0);
  }
  return Rat(0);
}

bool Element::operator==(const Element& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Natural:
    case Kind::Integer:
      return v == o.v;
    case Kind::UnitFrac:
      return k == o.k && m == o.m;
    case Kind::PosFrac:
      return p == o.p && k == o.k && m == o.m;
    case Kind::SignedFrac:
      return v == o.v && (v == 0 || (p == o.p && k == o.k && m == o.m));
    case Kind::Tuple:
      return parts == o.parts;
  }
  return false;
}

bool Element::operator<(const Element& o) const {
  auto key = [](const Element& e) {
    return std::make_tuple(static_cast<int>(e.kind), e.v, e.p, e.k, e.m);
  };
  if (kind != o.kind || kind != Kind::Tuple) return key(*this) < key(o);
  return std::lexicographical_compare(parts.begin(), parts.end(), o.parts.begin(), o.parts.end());
}

json Element::to_json() const {
  switch (kind) {
    case Kind::Natural:
    case Kind::Integer:
      return json(v);
    case Kind::UnitFrac:
      return json::array({k, m});
    case Kind::PosFrac:
      return json::array({p, k, m});
    case Kind::SignedFrac:
      return json::array({v, p, k, m});
    case Kind::Tuple: {
      json arr = json::array();
      for (const auto& e : parts) arr.push_back(e.to_json());
      return arr;
    }
  }
  return json();
}

std::string Element::to_string() const { return to_json().dump(); }

// ---------------------------------------------------------------------------
// Universe (arrangement indexing)
// ---------------------------------------------------------------------------

namespace {

struct Universe {
  enum class Tag { Nat, Nat0, Int, UnitQ, PosQ, Q, NonCanQ, Product, AdHoc };
  Tag tag;
  std::shared_ptr<const Universe> a, b;

  std::string name() const {
    switch (tag) {
      case Tag::Nat: return "N";
      case Tag::Nat0: return "N0";
      case Tag::Int: return "Z";
      case Tag::UnitQ: return "I";
      case Tag::PosQ: return "Q+";
      case Tag::Q: return "Q";
      case Tag::NonCanQ: return "Q+nc";
      case Tag::Product: return "(" + a->name() + " x " + b->name() + ")";
      case Tag::AdHoc: return "adhoc";
    }
    return "?";
  }

  std::optional<uint64_t> index(const Element& e) const {
    switch (tag) {
      case Tag::Nat:
        if (e.kind == Element::Kind::Natural && e.v >= 1) return uint64_t(e.v);
        return std::nullopt;
      case Tag::Nat0:
        if (e.kind == Element::Kind::Natural && e.v >= 0) return uint64_t(std::max<long long>(e.v, 1));
        return std::nullopt;
      case Tag::Int:
        if (e.kind == Element::Kind::Integer)
          return e.v == 0 ? uint64_t(1) : uint64_t(e.v < 0 ? -e.v : e.v);
        return std::nullopt;
      case Tag::UnitQ:
        if (e.kind == Element::Kind::UnitFrac && e.k >= 1 && e.k <= e.m && nt::coprime(e.k, e.m))
          return e.m;
        return std::nullopt;
      case Tag::PosQ:
        if (e.kind == Element::Kind::PosFrac && e.k >= 1 && e.k <= e.m && nt::coprime(e.k, e.m))
          return std::max(e.p, e.m);
        return std::nullopt;
      case Tag::Q:
        if (e.kind != Element::Kind::SignedFrac) return std::nullopt;
        if (e.v == 0) return uint64_t(1);
        if ((e.v == 1 || e.v == -1) && e.k >= 1 && e.k <= e.m && nt::coprime(e.k, e.m))
          return std::max(e.p, e.m);
        return std::nullopt;
      case Tag::NonCanQ:
        if (e.kind == Element::Kind::UnitFrac && e.k >= 1 && e.m >= 1 && nt::coprime(e.k, e.m))
          return std::max(e.k, e.m);
        return std::nullopt;
      case Tag::Product: {
        if (e.kind != Element::Kind::Tuple || e.parts.size() != 2) return std::nullopt;
        auto ia = a->index(e.parts[0]);
        auto ib = b->index(e.parts[1]);
        if (!ia || !ib) return std::nullopt;
        return std::max(*ia, *ib);
      }
      case Tag::AdHoc:
        return uint64_t(1);
    }
    return std::nullopt;
  }
};

std::shared_ptr<const Universe> make_universe(Universe::Tag t,
                                              std::shared_ptr<const Universe> a = nullptr,
                                              std::shared_ptr<const Universe> b = nullptr) {
  auto u = std::make_shared<Universe>();
  u->tag = t;
  u->a = std::move(a);
  u->b = std::move(b);
  return u;
}

bool mask_at(const std::vector<bool>& head, const std::vector<bool>& period, uint64_t n) {
  if (n == 0) return false;
  if (n <= head.size()) return head[n - 1];
  if (period.empty()) return false;
  return period[(n - head.size() - 1) % period.size()];
}

Int rfloor(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Int rceil(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// #{1 <= j <= x : gcd(j, mod) = 1} by inclusion-exclusion over mod's primes
int64_t coprime_upto(int64_t x, uint64_t mod) {
  if (x <= 0) return 0;
  if (mod == 1) return x;
  auto& sieve = nt::SieveCache::instance();
  uint64_t r = mod;
  std::vector<uint64_t> ps;
  while (r > 1) {
    uint64_t p = sieve.smallest_prime_factor(r);
    ps.push_back(p);
    while (r % p == 0) r /= p;
  }
  int64_t total = 0;
  const size_t np = ps.size();
  for (size_t sub = 0; sub < (size_t(1) << np); ++sub) {
    uint64_t d = 1;
    int sign = 1;
    for (size_t i = 0; i < np; ++i)
      if (sub & (size_t(1) << i)) {
        d *= ps[i];
        sign = -sign;
      }
    total += sign * (x / int64_t(d));
  }
  return total;
}

// number of k in [1, kcap] with gcd(k, mod) = 1 and loq <? k/mod' ... the
// callers pass plain integer bounds derived from rational endpoints
int64_t coprime_in(int64_t kmin, int64_t kmax, int64_t kcap, uint64_t mod) {
  kmin = std::max<int64_t>(kmin, 1);
  kmax = std::min<int64_t>(kmax, kcap);
  if (kmax < kmin) return 0;
  return coprime_upto(kmax, mod) - coprime_upto(kmin - 1, mod);
}

struct Range {
  Rat lo, hi;
  bool lo_strict, hi_strict;

  bool contains(const Rat& x) const {
    if (lo_strict ? !(x > lo) : !(x >= lo)) return false;
    if (hi_strict ? !(x < hi) : !(x <= hi)) return false;
    return true;
  }
  bool empty() const { return lo > hi || (lo == hi && (lo_strict || hi_strict)); }
};

// integer k bounds for k/den in `r` (den >= 1)
std::pair<int64_t, int64_t> frac_bounds(const Range& r, uint64_t den) {
  Rat a = r.lo * Rat(static_cast<unsigned long>(den));
  Rat b = r.hi * Rat(static_cast<unsigned long>(den));
  a.canonicalize();
  b.canonicalize();
  Int kmin = r.lo_strict ? Int(rfloor(a) + 1) : rceil(a);
  Int kmax = r.hi_strict ? Int(rceil(b) - 1) : rfloor(b);
  return {kmin.get_si(), kmax.get_si()};
}

// chi_n of {x in Q+ : x in r} under the canonical mixed-fraction arrangement
uint64_t count_posq(uint64_t n, const Range& r) {
  if (r.empty() || r.hi <= 0) return 0;
  uint64_t total = 0;
  // block m = n: elements p + k/n with 0 <= p <= n, 1 <= k <= n, co(k, n)
  Int plo = rfloor(r.lo) - 1;
  Int phi_b = rceil(r.hi);
  int64_t pfrom = std::max<int64_t>(0, plo.get_si());
  int64_t pto = std::min<int64_t>(static_cast<int64_t>(n), phi_b.get_si());
  for (int64_t p = pfrom; p <= pto; ++p) {
    Range shifted{r.lo - Rat(static_cast<long>(p)), r.hi - Rat(static_cast<long>(p)), r.lo_strict,
                  r.hi_strict};
    auto [kmin, kmax] = frac_bounds(shifted, n);
    total += coprime_in(kmin, kmax, static_cast<int64_t>(n), n);
  }
  // block p = n: elements n + k/m with m < n, k/m in (0, 1]
  Range frac{r.lo - Rat(static_cast<unsigned long>(n)), r.hi - Rat(static_cast<unsigned long>(n)),
             r.lo_strict, r.hi_strict};
  if (frac.hi > 0 && n >= 2) {
    bool full_low = frac.lo < 0 || (frac.lo == 0 && frac.lo_strict);
    bool full_high = frac.hi > 1 || (frac.hi == 1 && !frac.hi_strict);
    if (full_low && full_high) {
      total += nt::totient_summatory(n - 1);
    } else {
      for (uint64_t m = 1; m < n; ++m) {
        auto [kmin, kmax] = frac_bounds(frac, m);
        total += coprime_in(kmin, kmax, static_cast<int64_t>(m), m);
      }
    }
  }
  return total;
}

uint64_t count_q(uint64_t n, const Range& r) {
  if (r.empty()) return 0;
  uint64_t total = count_posq(n, r);
  Range neg{-r.hi, -r.lo, r.hi_strict, r.lo_strict};
  total += count_posq(n, neg);
  if (n == 1 && r.contains(Rat(0))) total += 1;
  return total;
}

uint64_t count_noncanq(uint64_t n, const Range& r) {
  if (r.empty() || r.hi <= 0) return 0;
  if (n == 1) return r.contains(Rat(1)) ? 1 : 0;
  uint64_t total = 0;
  // m = n: k/n in r, k in [1, n] coprime (k = n never coprime for n >= 2)
  auto [kmin, kmax] = frac_bounds(r, n);
  total += coprime_in(kmin, kmax, static_cast<int64_t>(n), n);
  // k = n: n/m in r, m < n coprime
  for (uint64_t m = 1; m < n; ++m) {
    if (!nt::coprime(n, m)) continue;
    Rat x(static_cast<unsigned long>(n), static_cast<unsigned long>(m));
    x.canonicalize();
    if (r.contains(x)) ++total;
  }
  return total;
}

Seq::Generator partial_sum_gen(Seq chi) {
  struct State {
    std::mutex mu;
    uint64_t n = 0;
    Int acc = 0;
  };
  auto st = std::make_shared<State>();
  return [chi, st](uint64_t n) {
    std::lock_guard<std::mutex> lock(st->mu);
    if (n == st->n + 1) {
      st->acc += chi.at(n);
      st->n = n;
      return st->acc;
    }
    Int acc = 0;
    for (uint64_t i = 1; i <= n; ++i) acc += chi.at(i);
    return acc;
  };
}

}  // namespace

// ---------------------------------------------------------------------------
// Node
// ---------------------------------------------------------------------------

struct CountableSet::Node : std::enable_shared_from_this<CountableSet::Node> {
  enum class Tag {
    Nat, Nat0, Int, UnitQ, PosQ, Q, NonCanQ, Primes,
    Subset, Periodic, CompMask, Image,
    Union, Inter, Diff, Product, Finite, Interval
  };

  Tag tag;
  std::shared_ptr<const Universe> universe;
  std::string uname;
  std::string label;
  std::optional<CountableSet> a, b;
  std::function<bool(const Element&)> pred;
  std::vector<bool> head, period;
  nt::FuncSpec fspec;
  std::vector<Element> elems;  // Finite
  uint64_t finite_max_index = 0;
  bool include_one = false;  // Primes
  Range range{Rat(0), Rat(0), true, false};  // Interval
  std::optional<ClosedForm> cf_hint;  // extra closed-form certificate

  mutable std::mutex mu;
  mutable std::optional<Seq> chi_seq;
  mutable std::optional<SizeSeq> sigma_seq;
};

namespace {

using Node = CountableSet::Node;
using Tag = Node::Tag;

std::shared_ptr<Node> make_node(Tag t) {
  auto n = std::make_shared<Node>();
  n->tag = t;
  return n;
}

CountableSet wrap(std::shared_ptr<Node> n) { return CountableSet(std::move(n)); }

uint64_t chi_count(const Node& node, uint64_t n);
std::vector<Element> enumerate(const Node& node, uint64_t n);
bool node_contains(const Node& node, const Element& e);

uint64_t chi_count(const Node& node, uint64_t n) {
  switch (node.tag) {
    case Tag::Nat: return 1;
    case Tag::Nat0: return n == 1 ? 2 : 1;
    case Tag::Int: return n == 1 ? 3 : 2;
    case Tag::UnitQ: return n == 1 ? 1 : nt::euler_phi(n);
    case Tag::PosQ:
      return (n + 1) * nt::euler_phi(n) + (n >= 2 ? nt::totient_summatory(n - 1) : 0);
    case Tag::Q: return 2 * chi_count(*positive_rationals().node(), n) + (n == 1 ? 1 : 0);
    case Tag::NonCanQ: return n == 1 ? 1 : 2 * nt::euler_phi(n);
    case Tag::Primes: return (nt::is_prime(n) || (node.include_one && n == 1)) ? 1 : 0;
    case Tag::Periodic: return mask_at(node.head, node.period, n) ? 1 : 0;
    case Tag::CompMask:
      return mask_at(node.head, node.period, n) ? chi_count(*node.a->node(), n) : 0;
    case Tag::Image: {
      uint64_t fi = nt::floor_inverse(node.fspec, Int(static_cast<unsigned long>(n)));
      return (fi >= 1 && node.fspec.eval(fi) == static_cast<long>(n)) ? 1 : 0;
    }
    case Tag::Product: {
      const Seq chi_a = node.a->char_seq();
      const Seq chi_b = node.b->char_seq();
      const SizeSeq sig_a = node.a->size_seq();
      const SizeSeq sig_b = node.b->size_seq();
      Int c = chi_a.at(n) * sig_b.at(n) + sig_a.at(n - 1) * chi_b.at(n);
      return c.get_ui();
    }
    case Tag::Interval: {
      switch (node.a->node()->tag) {
        case Tag::PosQ: return count_posq(n, node.range);
        case Tag::Q: return count_q(n, node.range);
        case Tag::NonCanQ: return count_noncanq(n, node.range);
        default: break;
      }
      return enumerate(node, n).size();
    }
    default:
      return enumerate(node, n).size();
  }
}

std::vector<Element> enumerate(const Node& node, uint64_t n) {
  std::vector<Element> out;
  switch (node.tag) {
    case Tag::Nat:
      out.push_back(Element::natural(static_cast<long long>(n)));
      break;
    case Tag::Nat0:
      if (n == 1) out.push_back(Element::natural(0));
      out.push_back(Element::natural(static_cast<long long>(n)));
      break;
    case Tag::Int:
      out.push_back(Element::integer(static_cast<long long>(n)));
      out.push_back(Element::integer(-static_cast<long long>(n)));
      if (n == 1) out.push_back(Element::integer(0));
      break;
    case Tag::UnitQ:
      for (uint64_t k = 1; k <= n; ++k)
        if (nt::coprime(k, n) && (k < n || n == 1)) out.push_back(Element::unit_frac(k, n));
      break;
    case Tag::PosQ:
      for (uint64_t p = 0; p <= n; ++p)
        for (uint64_t k = 1; k <= n; ++k)
          if (nt::coprime(k, n) && (k < n || n == 1)) out.push_back(Element::pos_frac(p, k, n));
      for (uint64_t m = 1; m < n; ++m)
        for (uint64_t k = 1; k <= m; ++k)
          if (nt::coprime(k, m) && (k < m || m == 1)) out.push_back(Element::pos_frac(n, k, m));
      break;
    case Tag::Q: {
      auto pos = enumerate(*positive_rationals().node(), n);
      for (const auto& e : pos) out.push_back(Element::signed_frac(1, e.p, e.k, e.m));
      for (const auto& e : pos) out.push_back(Element::signed_frac(-1, e.p, e.k, e.m));
      if (n == 1) out.push_back(Element::rational_zero());
      break;
    }
    case Tag::NonCanQ:
      if (n == 1) {
        out.push_back(Element::unit_frac(1, 1));
      } else {
        for (uint64_t k = 1; k < n; ++k)
          if (nt::coprime(k, n)) out.push_back(Element::unit_frac(k, n));
        for (uint64_t m = 1; m < n; ++m)
          if (nt::coprime(n, m)) out.push_back(Element::unit_frac(n, m));
      }
      break;
    case Tag::Primes:
      if (nt::is_prime(n) || (node.include_one && n == 1))
        out.push_back(Element::natural(static_cast<long long>(n)));
      break;
    case Tag::Subset:
      for (const auto& e : node.a->component(n))
        if (node.pred(e)) out.push_back(e);
      break;
    case Tag::Periodic:
      if (mask_at(node.head, node.period, n)) out.push_back(Element::natural(static_cast<long long>(n)));
      break;
    case Tag::CompMask:
      if (mask_at(node.head, node.period, n)) out = node.a->component(n);
      break;
    case Tag::Image: {
      uint64_t fi = nt::floor_inverse(node.fspec, Int(static_cast<unsigned long>(n)));
      if (fi >= 1 && node.fspec.eval(fi) == static_cast<long>(n))
        out.push_back(Element::natural(static_cast<long long>(n)));
      break;
    }
    case Tag::Union: {
      out = node.a->component(n);
      for (const auto& e : node.b->component(n))
        if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
      break;
    }
    case Tag::Inter:
      for (const auto& e : node.a->component(n))
        if (node.b->contains(e)) out.push_back(e);
      break;
    case Tag::Diff:
      for (const auto& e : node.a->component(n))
        if (!node.b->contains(e)) out.push_back(e);
      break;
    case Tag::Product: {
      // the max-frame order the paper prints: A_i x B_n (i < n), then A_n x B_j
      // with j descending
      auto bn = node.b->component(n);
      for (uint64_t i = 1; i < n; ++i)
        for (const auto& ea : node.a->component(i))
          for (const auto& eb : bn) out.push_back(Element::tuple(ea, eb));
      auto an = node.a->component(n);
      for (uint64_t j = n; j >= 1; --j) {
        for (const auto& ea : an)
          for (const auto& eb : node.b->component(j)) out.push_back(Element::tuple(ea, eb));
        if (j == 1) break;
      }
      break;
    }
    case Tag::Finite:
      for (const auto& e : node.elems)
        if (node.universe->index(e).value_or(1) == n) out.push_back(e);
      break;
    case Tag::Interval:
      for (const auto& e : node.a->component(n))
        if (node.range.contains(e.value())) out.push_back(e);
      break;
  }
  return out;
}

bool node_contains(const Node& node, const Element& e) {
  switch (node.tag) {
    case Tag::Nat:
      return e.kind == Element::Kind::Natural && e.v >= 1;
    case Tag::Nat0:
      return e.kind == Element::Kind::Natural && e.v >= 0;
    case Tag::Int:
      return e.kind == Element::Kind::Integer;
    case Tag::UnitQ:
    case Tag::PosQ:
    case Tag::Q:
    case Tag::NonCanQ:
      return node.universe->index(e).has_value();
    case Tag::Primes:
      return e.kind == Element::Kind::Natural &&
             (nt::is_prime(static_cast<uint64_t>(e.v)) || (node.include_one && e.v == 1));
    case Tag::Subset:
      return node.a->contains(e) && node.pred(e);
    case Tag::Periodic:
      return e.kind == Element::Kind::Natural && e.v >= 1 &&
             mask_at(node.head, node.period, static_cast<uint64_t>(e.v));
    case Tag::CompMask: {
      auto idx = node.universe->index(e);
      return idx && mask_at(node.head, node.period, *idx) && node.a->contains(e);
    }
    case Tag::Image: {
      if (e.kind != Element::Kind::Natural || e.v < 1) return false;
      uint64_t fi = nt::floor_inverse(node.fspec, Int(static_cast<long>(e.v)));
      return fi >= 1 && node.fspec.eval(fi) == static_cast<long>(e.v);
    }
    case Tag::Union:
      return node.a->contains(e) || node.b->contains(e);
    case Tag::Inter:
      return node.a->contains(e) && node.b->contains(e);
    case Tag::Diff:
      return node.a->contains(e) && !node.b->contains(e);
    case Tag::Product:
      return e.kind == Element::Kind::Tuple && e.parts.size() == 2 &&
             node.a->contains(e.parts[0]) && node.b->contains(e.parts[1]);
    case Tag::Finite:
      return std::find(node.elems.begin(), node.elems.end(), e) != node.elems.end();
    case Tag::Interval:
      return node.a->contains(e) && node.range.contains(e.value());
  }
  return false;
}

// certificates for a node's size sequence; values always come from chi
std::vector<Certificate> sigma_certs(const Node& node) {
  std::vector<Certificate> certs;
  auto cf = [&](ClosedForm f) { certs.push_back({std::move(f)}); };
  auto ep = [&](uint64_t pre, std::vector<Int> diffs) {
    certs.push_back({EventuallyPeriodic{pre, std::move(diffs)}});
  };
  switch (node.tag) {
    case Tag::Nat:
      cf(ClosedForm::var_n());
      ep(0, {Int(1)});
      break;
    case Tag::Nat0:
      cf(ClosedForm::var_n() + ClosedForm::constant(Int(1)));
      ep(1, {Int(1)});
      break;
    case Tag::Int:
      cf(ClosedForm::var_n().scaled(Rat(2)) + ClosedForm::constant(Int(1)));
      ep(1, {Int(2)});
      break;
    case Tag::UnitQ: {
      cf(ClosedForm::phi_summatory());
      GrowthEnvelope env;
      env.lower = {Rat(3, 10), 4, 0, true, 1};
      env.upper = {Rat(1, 2), 4, 0, false, 2};
      env.n0 = 2;
      certs.push_back({env});
      break;
    }
    case Tag::PosQ:
      cf((ClosedForm::var_n() + ClosedForm::constant(Int(1))) * ClosedForm::phi_summatory());
      break;
    case Tag::Q:
      cf(((ClosedForm::var_n() + ClosedForm::constant(Int(1))) * ClosedForm::phi_summatory())
             .scaled(Rat(2)) +
         ClosedForm::constant(Int(1)));
      break;
    case Tag::NonCanQ:
      cf(ClosedForm::phi_summatory().scaled(Rat(2)) - ClosedForm::constant(Int(1)));
      break;
    case Tag::Primes:
      cf(node.include_one ? ClosedForm::prime_pi() + ClosedForm::constant(Int(1))
                          : ClosedForm::prime_pi());
      break;
    case Tag::Periodic: {
      std::vector<Int> diffs;
      if (node.period.empty()) {
        diffs.push_back(Int(0));
      } else {
        for (bool b : node.period) diffs.push_back(Int(b ? 1 : 0));
      }
      ep(node.head.size(), std::move(diffs));
      if (node.cf_hint) cf(*node.cf_hint);
      break;
    }
    case Tag::Image:
      if (node.fspec.name == "m") {
        cf(ClosedForm::var_n());
        ep(0, {Int(1)});
      } else if (node.fspec.name == "m^2") {
        cf(ClosedForm::floor_sqrt());
      } else if (node.fspec.name.size() > 2 &&
                 node.fspec.name.substr(node.fspec.name.size() - 2) == "*m") {
        uint64_t k = std::stoull(node.fspec.name.substr(0, node.fspec.name.size() - 2));
        cf(ClosedForm::floor_div(k));
        std::vector<Int> diffs(k, Int(0));
        diffs[k - 1] = 1;
        ep(0, std::move(diffs));
      }
      break;
    case Tag::Union: {
      CountableSet inter = set_inter(*node.a, *node.b);
      SizeSeq donor = sub_checked(add(node.a->size_seq(), node.b->size_seq()), inter.size_seq(), 4);
      certs = donor.certificates();
      break;
    }
    case Tag::Inter:
      // an intersection with a finite operand is eventually exhausted
      for (const auto& side : {node.a, node.b}) {
        if (side && side->node()->tag == Tag::Finite) {
          ep(std::max<uint64_t>(side->node()->finite_max_index, 1), {Int(0)});
          break;
        }
      }
      break;
    case Tag::Diff: {
      CountableSet inter = set_inter(*node.a, *node.b);
      SizeSeq donor = sub_checked(node.a->size_seq(), inter.size_seq(), 4);
      certs = donor.certificates();
      break;
    }
    case Tag::Product: {
      SizeSeq donor = mul(node.a->size_seq(), node.b->size_seq());
      certs = donor.certificates();
      break;
    }
    case Tag::Finite: {
      ep(std::max<uint64_t>(node.finite_max_index, 1), {Int(0)});
      if (node.finite_max_index <= 1)
        cf(ClosedForm::constant(Int(static_cast<unsigned long>(node.elems.size()))));
      break;
    }
    case Tag::CompMask:
    case Tag::Subset:
    case Tag::Interval:
      break;
  }
  return certs;
}

}  // namespace

// ---------------------------------------------------------------------------
// CountableSet
// ---------------------------------------------------------------------------

std::vector<Element> CountableSet::component(uint64_t n) const { return enumerate(*node_, n); }

Seq CountableSet::char_seq() const {
  std::lock_guard<std::mutex> lock(node_->mu);
  if (!node_->chi_seq) {
    auto node = node_;
    node_->chi_seq = Seq([node](uint64_t n) {
      return Int(static_cast<unsigned long>(chi_count(*node, n)));
    });
  }
  return *node_->chi_seq;
}

SizeSeq CountableSet::size_seq() const {
  Seq chi = char_seq();
  std::lock_guard<std::mutex> lock(node_->mu);
  if (!node_->sigma_seq) node_->sigma_seq = SizeSeq(partial_sum_gen(chi), sigma_certs(*node_));
  return *node_->sigma_seq;
}

bool CountableSet::contains(const Element& e) const { return node_contains(*node_, e); }

std::optional<uint64_t> CountableSet::index_of(const Element& e) const {
  return node_->universe->index(e);
}

const std::string& CountableSet::universe() const { return node_->uname; }

std::string CountableSet::describe() const { return node_->label; }

json CountableSet::component_json(uint64_t n) const {
  json j;
  j["n"] = n;
  json arr = json::array();
  for (const auto& e : component(n)) arr.push_back(e.to_json());
  j["elements"] = std::move(arr);
  return j;
}

// ---------------------------------------------------------------------------
// constructors
// ---------------------------------------------------------------------------

namespace {

CountableSet make_base(Tag t, Universe::Tag ut, std::string label) {
  auto n = make_node(t);
  n->universe = make_universe(ut);
  n->uname = n->universe->name();
  n->label = std::move(label);
  return wrap(std::move(n));
}

}  // namespace

CountableSet naturals() {
  static CountableSet s = make_base(Tag::Nat, Universe::Tag::Nat, "N");
  return s;
}

CountableSet naturals0() {
  static CountableSet s = make_base(Tag::Nat0, Universe::Tag::Nat0, "N0");
  return s;
}

CountableSet integers() {
  static CountableSet s = make_base(Tag::Int, Universe::Tag::Int, "Z");
  return s;
}

CountableSet unit_interval() {
  static CountableSet s = make_base(Tag::UnitQ, Universe::Tag::UnitQ, "I");
  return s;
}

CountableSet positive_rationals() {
  static CountableSet s = make_base(Tag::PosQ, Universe::Tag::PosQ, "Q+");
  return s;
}

CountableSet rationals() {
  static CountableSet s = make_base(Tag::Q, Universe::Tag::Q, "Q");
  return s;
}

CountableSet noncanonical_positive_rationals() {
  static CountableSet s = make_base(Tag::NonCanQ, Universe::Tag::NonCanQ, "Q+nc");
  return s;
}

CountableSet primes(bool include_one) {
  auto n = make_node(Tag::Primes);
  n->universe = make_universe(Universe::Tag::Nat);
  n->uname = n->universe->name();
  n->label = include_one ? "P (with 1)" : "P";
  n->include_one = include_one;
  return wrap(std::move(n));
}

CountableSet subset(const CountableSet& parent, std::function<bool(const Element&)> pred,
                    std::string label) {
  auto n = make_node(Tag::Subset);
  n->universe = parent.node()->universe;
  n->uname = parent.universe();
  n->label = std::move(label);
  n->a = parent;
  n->pred = std::move(pred);
  return wrap(std::move(n));
}

namespace {

CountableSet make_periodic(std::vector<bool> head, std::vector<bool> period, std::string label,
                           std::optional<ClosedForm> cf_hint) {
  auto n = make_node(Tag::Periodic);
  n->universe = make_universe(Universe::Tag::Nat);
  n->uname = n->universe->name();
  n->label = std::move(label);
  n->head = std::move(head);
  n->period = std::move(period);
  n->cf_hint = std::move(cf_hint);
  return wrap(std::move(n));
}

}  // namespace

CountableSet periodic_subset(std::vector<bool> head, std::vector<bool> period, std::string label) {
  return make_periodic(std::move(head), std::move(period), std::move(label), std::nullopt);
}

CountableSet component_subset(const CountableSet& parent, std::vector<bool> head,
                              std::vector<bool> period, std::string label) {
  auto n = make_node(Tag::CompMask);
  n->universe = parent.node()->universe;
  n->uname = parent.universe();
  n->label = std::move(label);
  n->a = parent;
  n->head = std::move(head);
  n->period = std::move(period);
  return wrap(std::move(n));
}

CountableSet image_set(nt::FuncSpec f) {
  auto n = make_node(Tag::Image);
  n->universe = make_universe(Universe::Tag::Nat);
  n->uname = n->universe->name();
  n->label = "image(" + f.name + ")";
  n->fspec = std::move(f);
  return wrap(std::move(n));
}

CountableSet evens() { return make_periodic({}, {false, true}, "E", ClosedForm::floor_div(2)); }

CountableSet odds() {
  return make_periodic({}, {true, false}, "O", ClosedForm::var_n() - ClosedForm::floor_div(2));
}

CountableSet multiples(uint64_t k) {
  std::vector<bool> period(k, false);
  period[k - 1] = true;
  return make_periodic({}, std::move(period), "M(" + std::to_string(k) + ")",
                       ClosedForm::floor_div(k));
}

CountableSet squares() { return image_set(nt::FuncSpec::power(2)); }

CountableSet cartesian(const CountableSet& a, const CountableSet& b) {
  auto n = make_node(Tag::Product);
  n->universe = make_universe(Universe::Tag::Product, a.node()->universe, b.node()->universe);
  n->uname = n->universe->name();
  n->label = "(" + a.describe() + " x " + b.describe() + ")";
  n->a = a;
  n->b = b;
  return wrap(std::move(n));
}

namespace {

bool is_nat_periodic(const CountableSet& s) { return s.node()->tag == Tag::Periodic; }

CountableSet merge_masks(Tag op, const CountableSet& a, const CountableSet& b) {
  const Node& na = *a.node();
  const Node& nb = *b.node();
  auto memb_a = [&](uint64_t n) { return mask_at(na.head, na.period, n); };
  auto memb_b = [&](uint64_t n) { return mask_at(nb.head, nb.period, n); };
  auto combine = [&](bool x, bool y) {
    switch (op) {
      case Tag::Union: return x || y;
      case Tag::Inter: return x && y;
      default: return x && !y;
    }
  };
  uint64_t H = std::max(na.head.size(), nb.head.size());
  uint64_t La = std::max<uint64_t>(na.period.size(), 1);
  uint64_t Lb = std::max<uint64_t>(nb.period.size(), 1);
  uint64_t L = std::lcm(La, Lb);
  std::vector<bool> head, period;
  for (uint64_t n = 1; n <= H; ++n) head.push_back(combine(memb_a(n), memb_b(n)));
  for (uint64_t j = 0; j < L; ++j) {
    uint64_t n = H + 1 + j;
    period.push_back(combine(memb_a(n), memb_b(n)));
  }
  std::string opname = op == Tag::Union ? " | " : (op == Tag::Inter ? " & " : " \\ ");
  std::string label = "(" + na.label + opname + nb.label + ")";
  if (na.tag == Tag::Periodic) return periodic_subset(std::move(head), std::move(period), label);
  auto s = component_subset(*na.a, std::move(head), std::move(period), label);
  return s;
}

CountableSet setop(Tag op, const CountableSet& a, const CountableSet& b) {
  if (a.universe() != b.universe())
    throw IncompatibleUniverse(a.universe() + " vs " + b.universe());
  if (is_nat_periodic(a) && is_nat_periodic(b)) return merge_masks(op, a, b);
  if (a.node()->tag == Tag::CompMask && b.node()->tag == Tag::CompMask &&
      a.node()->a->node() == b.node()->a->node())
    return merge_masks(op, a, b);
  auto n = make_node(op);
  n->universe = a.node()->universe;
  n->uname = a.universe();
  std::string opname = op == Tag::Union ? " | " : (op == Tag::Inter ? " & " : " \\ ");
  n->label = "(" + a.describe() + opname + b.describe() + ")";
  n->a = a;
  n->b = b;
  return wrap(std::move(n));
}

}  // namespace

CountableSet set_union(const CountableSet& a, const CountableSet& b) { return setop(Tag::Union, a, b); }
CountableSet set_inter(const CountableSet& a, const CountableSet& b) { return setop(Tag::Inter, a, b); }
CountableSet set_diff(const CountableSet& a, const CountableSet& b) { return setop(Tag::Diff, a, b); }

CountableSet finite_set(std::vector<Element> elements) {
  for (size_t i = 0; i < elements.size(); ++i)
    for (size_t j = i + 1; j < elements.size(); ++j)
      if (elements[i] == elements[j]) throw DuplicateElement(elements[i].to_string());
  // infer the canonical universe that indexes every element, else ad hoc
  static const Universe::Tag candidates[] = {Universe::Tag::Nat,   Universe::Tag::Nat0,
                                             Universe::Tag::Int,   Universe::Tag::UnitQ,
                                             Universe::Tag::PosQ,  Universe::Tag::Q};
  std::shared_ptr<const Universe> uni;
  for (auto ut : candidates) {
    auto u = make_universe(ut);
    bool all = true;
    for (const auto& e : elements)
      if (!u->index(e)) all = false;
    if (all && !elements.empty()) {
      uni = u;
      break;
    }
  }
  if (!uni) uni = make_universe(elements.empty() ? Universe::Tag::Nat : Universe::Tag::AdHoc);
  auto n = make_node(Tag::Finite);
  n->universe = uni;
  n->uname = uni->name();
  n->label = "finite[" + std::to_string(elements.size()) + "]";
  n->elems = std::move(elements);
  for (const auto& e : n->elems)
    n->finite_max_index = std::max(n->finite_max_index, n->universe->index(e).value_or(1));
  return wrap(std::move(n));
}

CountableSet finite_naturals(std::vector<long long> values) {
  std::vector<Element> elems;
  elems.reserve(values.size());
  for (long long v : values) elems.push_back(Element::natural(v));
  return finite_set(std::move(elems));
}

CountableSet empty_set() { return finite_set({}); }

CountableSet interval_set(const CountableSet& base, const Rat& lo, bool lo_strict, const Rat& hi,
                          bool hi_strict) {
  Tag bt = base.node()->tag;
  if (bt != Tag::PosQ && bt != Tag::Q && bt != Tag::NonCanQ)
    throw IncompatibleUniverse("interval over " + base.universe());
  Range r{lo, hi, lo_strict, hi_strict};
  if (r.empty()) throw EmptyInterval();
  auto n = make_node(Tag::Interval);
  n->universe = base.node()->universe;
  n->uname = base.universe();
  std::ostringstream lbl;
  lbl << (lo_strict ? "(" : "[") << lo.get_str() << "," << hi.get_str() << (hi_strict ? ")" : "]");
  n->label = lbl.str();
  n->a = base;
  n->range = r;
  return wrap(std::move(n));
}

CountableSet rational_interval(const Rat& lo, const Rat& hi) {
  if (lo >= hi) throw EmptyInterval();
  CountableSet base = lo >= 0 ? positive_rationals() : rationals();
  return interval_set(base, lo, true, hi, false);
}

}  // namespace sizecalc
