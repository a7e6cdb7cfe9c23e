#include "sizecalc/closed_form.hpp"

#include <algorithm>
#include <sstream>

#include "sizecalc/errors.hpp"
#include "sizecalc/numtheory.hpp"

namespace sizecalc {

void ClosedForm::put(Monomial m, Rat c) {
  c.canonicalize();
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), std::move(c));
  } else {
    it->second += c;
    it->second.canonicalize();
    if (it->second == 0) terms_.erase(it);
  }
}

ClosedForm ClosedForm::constant(const Int& c) { return constant(Rat(c)); }

ClosedForm ClosedForm::constant(const Rat& c) {
  ClosedForm f;
  f.put({}, c);
  return f;
}

ClosedForm ClosedForm::atom(AtomKey a) {
  ClosedForm f;
  f.put({a}, Rat(1));
  return f;
}

ClosedForm ClosedForm::var_n() { return atom({AtomKey::Kind::N}); }
ClosedForm ClosedForm::floor_div(uint64_t k) { return atom({AtomKey::Kind::FloorDiv, k}); }
ClosedForm ClosedForm::floor_sqrt() { return atom({AtomKey::Kind::Sqrt}); }
ClosedForm ClosedForm::phi_summatory() { return atom({AtomKey::Kind::Phi}); }
ClosedForm ClosedForm::prime_pi() { return atom({AtomKey::Kind::PrimePi}); }

ClosedForm ClosedForm::operator+(const ClosedForm& o) const {
  ClosedForm f = *this;
  for (const auto& [m, c] : o.terms_) f.put(m, c);
  return f;
}

ClosedForm ClosedForm::operator-(const ClosedForm& o) const {
  ClosedForm f = *this;
  for (const auto& [m, c] : o.terms_) f.put(m, -c);
  return f;
}

ClosedForm ClosedForm::operator*(const ClosedForm& o) const {
  ClosedForm f;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m = m1;
      m.insert(m.end(), m2.begin(), m2.end());
      std::sort(m.begin(), m.end());
      f.put(std::move(m), c1 * c2);
    }
  }
  return f;
}

ClosedForm ClosedForm::scaled(const Rat& c) const {
  ClosedForm f;
  for (const auto& [m, coeff] : terms_) f.put(m, coeff * c);
  return f;
}

bool ClosedForm::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Int eval_atom(AtomKey a, uint64_t n) {
  switch (a.kind) {
    case AtomKey::Kind::N:
      return Int(static_cast<unsigned long>(n));
    case AtomKey::Kind::FloorDiv:
      return Int(static_cast<unsigned long>(n / a.k));
    case AtomKey::Kind::Sqrt:
      return isqrt(Int(static_cast<unsigned long>(n)));
    case AtomKey::Kind::Phi:
      return Int(static_cast<unsigned long>(numtheory::totient_summatory(n)));
    case AtomKey::Kind::PrimePi:
      return Int(static_cast<unsigned long>(numtheory::prime_pi(n)));
  }
  return Int(0);
}

Int ClosedForm::eval(uint64_t n) const {
  Rat acc(0);
  for (const auto& [m, c] : terms_) {
    Rat t = c;
    for (const AtomKey& a : m) t *= Rat(eval_atom(a, n));
    acc += t;
  }
  acc.canonicalize();
  if (acc.get_den() != 1) throw CertificateInvalid("closed form non-integral at n=" + std::to_string(n));
  return acc.get_num();
}

std::string atom_to_string(AtomKey a) {
  switch (a.kind) {
    case AtomKey::Kind::N:
      return "n";
    case AtomKey::Kind::FloorDiv:
      return "floor(n/" + std::to_string(a.k) + ")";
    case AtomKey::Kind::Sqrt:
      return "floor(sqrt(n))";
    case AtomKey::Kind::Phi:
      return "Phi(n)";
    case AtomKey::Kind::PrimePi:
      return "pi(n)";
  }
  return "?";
}

std::string ClosedForm::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rat coeff = c;
    if (!first) out << (coeff < 0 ? " - " : " + ");
    if (first && coeff < 0) out << "-";
    first = false;
    Rat mag = abs(coeff);
    bool need_coeff = (mag != 1) || m.empty();
    if (need_coeff) out << mag.get_str();
    bool need_star = need_coeff;
    // group repeated atoms as powers
    for (size_t i = 0; i < m.size();) {
      size_t j = i;
      while (j < m.size() && m[j] == m[i]) ++j;
      if (need_star) out << "*";
      out << atom_to_string(m[i]);
      if (j - i > 1) out << "^" << (j - i);
      need_star = true;
      i = j;
    }
  }
  return out.str();
}

AtomBounds atom_bounds(AtomKey a) {
  switch (a.kind) {
    case AtomKey::Kind::N:
      return {{Rat(1), 2, 0, false, 1}, {Rat(1), 2, 0, false, 1}};
    case AtomKey::Kind::FloorDiv: {
      // floor(n/k) > n/(2k) for n >= 2k;  floor(n/k) <= n/k always.
      uint64_t k = a.k;
      return {{Rat(1, 2 * k), 2, 0, true, 2 * k}, {Rat(1, k), 2, 0, false, 1}};
    }
    case AtomKey::Kind::Sqrt:
      // floor(sqrt n) > sqrt(n)/2 for n >= 4;  floor(sqrt n) <= sqrt(n).
      return {{Rat(1, 2), 1, 0, true, 4}, {Rat(1), 1, 0, false, 1}};
    case AtomKey::Kind::Phi:
      // 3/10 n^2 < Phi(n) for n >= 1;  Phi(n) <= n^2/2 for n >= 2.
      return {{Rat(3, 10), 4, 0, true, 1}, {Rat(1, 2), 4, 0, false, 2}};
    case AtomKey::Kind::PrimePi:
      // Rosser-Schoenfeld: n/ln n < pi(n) for n >= 17, pi(n) < 5n/(4 ln n)
      // for n >= 17 except n = 113, hence the upper threshold 114.
      return {{Rat(1), 2, -1, true, 17}, {Rat(5, 4), 2, -1, true, 114}};
  }
  return {};
}

}  // namespace sizecalc
