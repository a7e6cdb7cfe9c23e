#include "sizecalc/parser.hpp"

#include <cctype>
#include <map>

#include "sizecalc/errors.hpp"

namespace sizecalc {

namespace nt = numtheory;

namespace {

struct Token {
  enum class Kind { Ident, Integer, Symbol, End };
  Kind kind = Kind::End;
  std::string text;
  uint64_t value = 0;
  size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }
  size_t end_pos() const { return text_.size(); }

 private:
  void advance() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
    cur_ = Token{};
    cur_.pos = i_;
    if (i_ >= text_.size()) {
      cur_.kind = Token::Kind::End;
      return;
    }
    char c = text_[i_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j])))) ++j;
      cur_.kind = Token::Kind::Ident;
      cur_.text = text_.substr(i_, j - i_);
      // the atom Q+ lexes as one token (no other postfix + exists)
      if (cur_.text == "Q" && j < text_.size() && text_[j] == '+') {
        cur_.text = "Q+";
        ++j;
      }
      i_ = j;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      uint64_t v = 0;
      while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) {
        v = v * 10 + (text_[j] - '0');
        ++j;
      }
      cur_.kind = Token::Kind::Integer;
      cur_.text = text_.substr(i_, j - i_);
      cur_.value = v;
      i_ = j;
      return;
    }
    cur_.kind = Token::Kind::Symbol;
    cur_.text = std::string(1, c);
    ++i_;
  }

  const std::string& text_;
  size_t i_ = 0;
  Token cur_;
};

[[noreturn]] void fail(const Token& t, const std::string& expected) {
  throw SyntaxError(t.pos, "expected " + expected +
                               (t.kind == Token::Kind::End ? " before end of input"
                                                           : ", got '" + t.text + "'"));
}

bool is_symbol(const Token& t, const char* s) {
  return t.kind == Token::Kind::Symbol && t.text == s;
}
bool is_ident(const Token& t, const char* s) {
  return t.kind == Token::Kind::Ident && t.text == s;
}

void expect_symbol(Lexer& lex, const char* s) {
  if (!is_symbol(lex.peek(), s)) fail(lex.peek(), std::string("'") + s + "'");
  lex.take();
}

uint64_t expect_integer(Lexer& lex) {
  if (lex.peek().kind != Token::Kind::Integer) fail(lex.peek(), "integer");
  return lex.take().value;
}

// signed exact rational: [-] int [/ int]
Rat parse_rat(Lexer& lex) {
  bool neg = false;
  if (is_symbol(lex.peek(), "-")) {
    lex.take();
    neg = true;
  }
  Token num = lex.peek();
  uint64_t n = expect_integer(lex);
  Rat r(static_cast<unsigned long>(n));
  if (is_symbol(lex.peek(), "/")) {
    lex.take();
    Token den = lex.peek();
    uint64_t d = expect_integer(lex);
    if (d == 0) throw SyntaxError(den.pos, "zero denominator");
    r = Rat(static_cast<unsigned long>(n), static_cast<unsigned long>(d));
    r.canonicalize();
  }
  (void)num;
  return neg ? Rat(-r) : r;
}

const std::map<std::string, int, std::less<>>& atom_names() {
  static const std::map<std::string, int, std::less<>> names = {
      {"N", 0}, {"N0", 0}, {"Z", 0}, {"Q", 0}, {"Q+", 0},
      {"I", 0}, {"E", 0},  {"O", 0}, {"P", 0}, {"S", 0}};
  return names;
}

SetExprPtr parse_set_union(Lexer& lex);

SetExprPtr parse_set_primary(Lexer& lex) {
  Token t = lex.peek();
  if (is_symbol(t, "(")) {
    lex.take();
    SetExprPtr inner = parse_set_union(lex);
    expect_symbol(lex, ")");
    return inner;
  }
  if (t.kind != Token::Kind::Ident) fail(t, "set expression");
  if (t.text == "M") {
    lex.take();
    expect_symbol(lex, "(");
    Token kt = lex.peek();
    uint64_t k = expect_integer(lex);
    if (k == 0) throw SyntaxError(kt.pos, "M(k) needs k >= 1");
    expect_symbol(lex, ")");
    auto e = std::make_shared<SetExpr>();
    e->kind = SetExpr::Kind::Multiples;
    e->k = k;
    return e;
  }
  if (t.text == "finite") {
    lex.take();
    expect_symbol(lex, "{");
    auto e = std::make_shared<SetExpr>();
    e->kind = SetExpr::Kind::Finite;
    if (!is_symbol(lex.peek(), "}")) {
      while (true) {
        bool neg = false;
        if (is_symbol(lex.peek(), "-")) {
          lex.take();
          neg = true;
        }
        long long v = static_cast<long long>(expect_integer(lex));
        e->elements.push_back(neg ? -v : v);
        if (is_symbol(lex.peek(), ",")) {
          lex.take();
          continue;
        }
        break;
      }
    }
    expect_symbol(lex, "}");
    return e;
  }
  if (t.text == "image") {
    lex.take();
    expect_symbol(lex, "(");
    // collect the function text up to the matching paren, then sub-parse
    std::string body;
    int depth = 1;
    while (true) {
      const Token& u = lex.peek();
      if (u.kind == Token::Kind::End) fail(u, "')'");
      if (is_symbol(u, "(")) ++depth;
      if (is_symbol(u, ")") && --depth == 0) break;
      body += u.text;
      lex.take();
    }
    lex.take();  // ')'
    auto e = std::make_shared<SetExpr>();
    e->kind = SetExpr::Kind::Image;
    e->fexpr = body;
    parse_func(body);  // validate now so errors surface at parse time
    return e;
  }
  if (t.text == "interval") {
    lex.take();
    Token open = lex.peek();
    bool lo_strict;
    if (is_symbol(open, "(")) {
      lo_strict = true;
    } else if (is_symbol(open, "[")) {
      lo_strict = false;
    } else {
      fail(open, "'(' or '['");
    }
    lex.take();
    auto e = std::make_shared<SetExpr>();
    e->kind = SetExpr::Kind::Interval;
    e->lo = parse_rat(lex);
    expect_symbol(lex, ",");
    e->hi = parse_rat(lex);
    Token close = lex.peek();
    if (is_symbol(close, "]")) {
      e->hi_strict = false;
    } else if (is_symbol(close, ")")) {
      e->hi_strict = true;
    } else {
      fail(close, "']' or ')'");
    }
    lex.take();
    e->lo_strict = lo_strict;
    return e;
  }
  if (atom_names().count(t.text)) {
    lex.take();
    auto e = std::make_shared<SetExpr>();
    e->kind = SetExpr::Kind::Atom;
    e->atom = t.text;
    return e;
  }
  fail(t, "set expression");
}

SetExprPtr binary(SetExpr::Kind kind, SetExprPtr a, SetExprPtr b) {
  auto e = std::make_shared<SetExpr>();
  e->kind = kind;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

SetExprPtr parse_set_product(Lexer& lex) {
  SetExprPtr e = parse_set_primary(lex);
  while (is_ident(lex.peek(), "x")) {
    lex.take();
    e = binary(SetExpr::Kind::Product, e, parse_set_primary(lex));
  }
  return e;
}

SetExprPtr parse_set_inter(Lexer& lex) {
  SetExprPtr e = parse_set_product(lex);
  while (is_symbol(lex.peek(), "&") || is_symbol(lex.peek(), "\\")) {
    bool inter = lex.take().text == "&";
    e = binary(inter ? SetExpr::Kind::Inter : SetExpr::Kind::Diff, e, parse_set_product(lex));
  }
  return e;
}

SetExprPtr parse_set_union(Lexer& lex) {
  SetExprPtr e = parse_set_inter(lex);
  while (is_symbol(lex.peek(), "|")) {
    lex.take();
    e = binary(SetExpr::Kind::Union, e, parse_set_inter(lex));
  }
  return e;
}

SizeExprPtr parse_size_add(Lexer& lex);

SizeExprPtr parse_size_primary(Lexer& lex) {
  Token t = lex.peek();
  if (is_symbol(t, "(")) {
    lex.take();
    SizeExprPtr inner = parse_size_add(lex);
    expect_symbol(lex, ")");
    return inner;
  }
  if (t.kind == Token::Kind::Integer) {
    lex.take();
    auto e = std::make_shared<SizeExpr>();
    e->kind = SizeExpr::Kind::Literal;
    e->literal = Int(t.text);
    return e;
  }
  if (t.kind == Token::Kind::Ident) {
    if (t.text == "alpha" || t.text == "phi") {
      lex.take();
      auto e = std::make_shared<SizeExpr>();
      e->kind = t.text == "alpha" ? SizeExpr::Kind::Alpha : SizeExpr::Kind::Phi;
      return e;
    }
    if (t.text == "sigma" || t.text == "chi") {
      lex.take();
      expect_symbol(lex, "(");
      auto e = std::make_shared<SizeExpr>();
      e->kind = t.text == "sigma" ? SizeExpr::Kind::Sigma : SizeExpr::Kind::Chi;
      e->set = parse_set_union(lex);
      expect_symbol(lex, ")");
      return e;
    }
  }
  fail(t, "size expression");
}

SizeExprPtr parse_size_mul(Lexer& lex) {
  SizeExprPtr e = parse_size_primary(lex);
  while (is_symbol(lex.peek(), "*")) {
    lex.take();
    auto m = std::make_shared<SizeExpr>();
    m->kind = SizeExpr::Kind::Mul;
    m->lhs = e;
    m->rhs = parse_size_primary(lex);
    e = m;
  }
  return e;
}

SizeExprPtr parse_size_add(Lexer& lex) {
  SizeExprPtr e = parse_size_mul(lex);
  while (is_symbol(lex.peek(), "+")) {
    lex.take();
    auto a = std::make_shared<SizeExpr>();
    a->kind = SizeExpr::Kind::Add;
    a->lhs = e;
    a->rhs = parse_size_mul(lex);
    e = a;
  }
  return e;
}

void expect_end(Lexer& lex) {
  if (lex.peek().kind != Token::Kind::End) fail(lex.peek(), "end of input");
}

int set_prec(SetExpr::Kind k) {
  switch (k) {
    case SetExpr::Kind::Union: return 1;
    case SetExpr::Kind::Inter:
    case SetExpr::Kind::Diff: return 2;
    case SetExpr::Kind::Product: return 3;
    default: return 4;
  }
}

std::string render_set(const SetExpr& e, int min_prec) {
  int p = set_prec(e.kind);
  std::string out;
  switch (e.kind) {
    case SetExpr::Kind::Atom: out = e.atom; break;
    case SetExpr::Kind::Multiples: out = "M(" + std::to_string(e.k) + ")"; break;
    case SetExpr::Kind::Finite: {
      out = "finite{";
      for (size_t i = 0; i < e.elements.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(e.elements[i]);
      }
      out += "}";
      break;
    }
    case SetExpr::Kind::Image: out = "image(" + e.fexpr + ")"; break;
    case SetExpr::Kind::Interval:
      out = std::string("interval") + (e.lo_strict ? "(" : "[") + e.lo.get_str() + "," +
            e.hi.get_str() + (e.hi_strict ? ")" : "]");
      break;
    case SetExpr::Kind::Union:
      out = render_set(*e.lhs, p) + " | " + render_set(*e.rhs, p + 1);
      break;
    case SetExpr::Kind::Inter:
      out = render_set(*e.lhs, p) + " & " + render_set(*e.rhs, p + 1);
      break;
    case SetExpr::Kind::Diff:
      out = render_set(*e.lhs, p) + " \\ " + render_set(*e.rhs, p + 1);
      break;
    case SetExpr::Kind::Product:
      out = render_set(*e.lhs, p) + " x " + render_set(*e.rhs, p + 1);
      break;
  }
  if (p < min_prec) return "(" + out + ")";
  return out;
}

int size_prec(SizeExpr::Kind k) {
  switch (k) {
    case SizeExpr::Kind::Add: return 1;
    case SizeExpr::Kind::Mul: return 2;
    default: return 3;
  }
}

std::string render_size(const SizeExpr& e, int min_prec) {
  int p = size_prec(e.kind);
  std::string out;
  switch (e.kind) {
    case SizeExpr::Kind::Literal: out = dec(e.literal); break;
    case SizeExpr::Kind::Alpha: out = "alpha"; break;
    case SizeExpr::Kind::Phi: out = "phi"; break;
    case SizeExpr::Kind::Sigma: out = "sigma(" + render_set(*e.set, 0) + ")"; break;
    case SizeExpr::Kind::Chi: out = "chi(" + render_set(*e.set, 0) + ")"; break;
    case SizeExpr::Kind::Add:
      out = render_size(*e.lhs, p) + " + " + render_size(*e.rhs, p + 1);
      break;
    case SizeExpr::Kind::Mul:
      out = render_size(*e.lhs, p) + " * " + render_size(*e.rhs, p + 1);
      break;
  }
  if (p < min_prec) return "(" + out + ")";
  return out;
}

}  // namespace

SetExprPtr parse_set_expr(const std::string& text) {
  Lexer lex(text);
  SetExprPtr e = parse_set_union(lex);
  expect_end(lex);
  return e;
}

SizeExprPtr parse_size_expr(const std::string& text) {
  Lexer lex(text);
  SizeExprPtr e = parse_size_add(lex);
  expect_end(lex);
  return e;
}

std::string render(const SetExpr& e) { return render_set(e, 0); }
std::string render(const SizeExpr& e) { return render_size(e, 0); }

nt::FuncSpec parse_func(const std::string& text) {
  Lexer lex(text);
  // natural-coefficient polynomial: sum of k, k*m^j, m^j terms
  std::map<unsigned, uint64_t> coeff;  // degree -> coefficient
  while (true) {
    Token t = lex.peek();
    uint64_t c = 1;
    bool have_coeff = false;
    if (t.kind == Token::Kind::Integer) {
      c = lex.take().value;
      have_coeff = true;
      if (is_symbol(lex.peek(), "*")) lex.take();
      else if (is_ident(lex.peek(), "m")) {
        // implicit product like "3m" never lexes as one token; require * or end of term
      }
    }
    unsigned deg = 0;
    if (is_ident(lex.peek(), "m")) {
      lex.take();
      deg = 1;
      if (is_symbol(lex.peek(), "^")) {
        lex.take();
        Token dt = lex.peek();
        uint64_t d = expect_integer(lex);
        if (d == 0 || d > 64) throw SyntaxError(dt.pos, "exponent out of range");
        deg = static_cast<unsigned>(d);
      }
    } else if (!have_coeff) {
      fail(lex.peek(), "function term");
    }
    coeff[deg] += c;
    if (is_symbol(lex.peek(), "+")) {
      lex.take();
      continue;
    }
    break;
  }
  expect_end(lex);
  uint64_t constant = coeff.count(0) ? coeff[0] : 0;
  coeff.erase(0);
  if (coeff.empty()) throw SyntaxError(0, "function must be increasing in m");

  if (constant == 0 && coeff.size() == 1) {
    auto [deg, c] = *coeff.begin();
    if (deg == 1 && c == 1) return nt::FuncSpec::identity();
    if (deg == 1) return nt::FuncSpec::linear(c);
    if (c == 1) return nt::FuncSpec::power(deg);
  }
  if (constant == 0) {
    std::vector<uint64_t> cs(coeff.rbegin()->first, 0);
    for (auto [deg, c] : coeff) cs[deg - 1] = c;
    return nt::FuncSpec::poly(cs);
  }
  // constant offset: shift of an increasing polynomial
  auto inner = coeff;
  nt::FuncSpec f;
  f.name = text;
  f.eval = [inner, constant](uint64_t m) {
    Int acc(static_cast<unsigned long>(constant));
    for (auto [deg, c] : inner)
      acc += Int(static_cast<unsigned long>(c)) * ipow(Int(static_cast<unsigned long>(m)), deg);
    return acc;
  };
  return f;
}

CountableSet elaborate(const SetExpr& e, const ElabOptions& opts) {
  switch (e.kind) {
    case SetExpr::Kind::Atom: {
      if (e.atom == "N") return naturals();
      if (e.atom == "N0") return naturals0();
      if (e.atom == "Z") return integers();
      if (e.atom == "Q") return rationals();
      if (e.atom == "Q+")
        return opts.noncanonical_q ? noncanonical_positive_rationals() : positive_rationals();
      if (e.atom == "I") return unit_interval();
      if (e.atom == "E") return evens();
      if (e.atom == "O") return odds();
      if (e.atom == "P") return primes(opts.paper_primes);
      if (e.atom == "S") return squares();
      throw UniverseMismatch("unknown atom " + e.atom);
    }
    case SetExpr::Kind::Multiples: return multiples(e.k);
    case SetExpr::Kind::Finite: return finite_naturals(e.elements);
    case SetExpr::Kind::Image: return image_set(parse_func(e.fexpr));
    case SetExpr::Kind::Interval: {
      CountableSet base = e.lo < 0 ? rationals()
                          : opts.noncanonical_q ? noncanonical_positive_rationals()
                                                : positive_rationals();
      return interval_set(base, e.lo, e.lo_strict, e.hi, e.hi_strict);
    }
    default: break;
  }
  CountableSet a = elaborate(*e.lhs, opts);
  CountableSet b = elaborate(*e.rhs, opts);
  try {
    switch (e.kind) {
      case SetExpr::Kind::Union: return set_union(a, b);
      case SetExpr::Kind::Inter: return set_inter(a, b);
      case SetExpr::Kind::Diff: return set_diff(a, b);
      case SetExpr::Kind::Product: return cartesian(a, b);
      default: break;
    }
  } catch (const IncompatibleUniverse& err) {
    throw UniverseMismatch(err.what());
  }
  throw UniverseMismatch("unreachable");
}

SizeValue elaborate(const SizeExpr& e, const ElabOptions& opts) {
  switch (e.kind) {
    case SizeExpr::Kind::Literal: {
      return {SizeSeq::constant(e.literal), true};
    }
    case SizeExpr::Kind::Alpha: return {naturals().size_seq(), true};
    case SizeExpr::Kind::Phi: return {unit_interval().size_seq(), true};
    case SizeExpr::Kind::Sigma: return {elaborate(*e.set, opts).size_seq(), true};
    case SizeExpr::Kind::Chi: return {elaborate(*e.set, opts).char_seq(), false};
    case SizeExpr::Kind::Add:
    case SizeExpr::Kind::Mul: {
      SizeValue a = elaborate(*e.lhs, opts);
      SizeValue b = elaborate(*e.rhs, opts);
      bool add_op = e.kind == SizeExpr::Kind::Add;
      if (a.monotone && b.monotone) {
        // certificate-combining path; monotone generators are SizeSeqs here
        SizeSeq sa(
            [s = a.seq](uint64_t n) { return s.at(n); },
            a.seq.certificates());
        SizeSeq sb(
            [s = b.seq](uint64_t n) { return s.at(n); },
            b.seq.certificates());
        return {add_op ? add(sa, sb) : mul(sa, sb), true};
      }
      Seq sa = a.seq, sb = b.seq;
      Seq out(add_op ? Seq::Generator([sa, sb](uint64_t n) { return Int(sa.at(n) + sb.at(n)); })
                     : Seq::Generator([sa, sb](uint64_t n) { return Int(sa.at(n) * sb.at(n)); }));
      return {out, false};
    }
  }
  throw std::logic_error("unreachable size expression kind");
}

}  // namespace sizecalc
