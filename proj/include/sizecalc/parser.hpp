#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "sizecalc/bigint.hpp"
#include "sizecalc/numtheory.hpp"
#include "sizecalc/set_model.hpp"

namespace sizecalc {

// surface syntax trees; `render` round-trips through `parse`
struct SetExpr;
using SetExprPtr = std::shared_ptr<const SetExpr>;

struct SetExpr {
  enum class Kind { Atom, Multiples, Finite, Image, Interval, Union, Inter, Diff, Product };
  Kind kind = Kind::Atom;
  std::string atom;                  // N N0 Z Q Q+ I E O P S
  uint64_t k = 0;                    // M(k)
  std::vector<long long> elements;   // finite{...}
  std::string fexpr;                 // image(...) source text
  Rat lo, hi;                        // interval bounds
  bool lo_strict = true, hi_strict = false;
  SetExprPtr lhs, rhs;
};

struct SizeExpr;
using SizeExprPtr = std::shared_ptr<const SizeExpr>;

struct SizeExpr {
  enum class Kind { Literal, Alpha, Phi, Sigma, Chi, Add, Mul };
  Kind kind = Kind::Literal;
  Int literal;
  SetExprPtr set;
  SizeExprPtr lhs, rhs;
};

// throws SyntaxError(position, message); both require the whole input consumed
SetExprPtr parse_set_expr(const std::string& text);
SizeExprPtr parse_size_expr(const std::string& text);

std::string render(const SetExpr& e);
std::string render(const SizeExpr& e);

struct ElabOptions {
  bool paper_primes = false;   // include 1 in P
  bool noncanonical_q = false; // Q+ uses the coprime-pair encoding
};

// throws UniverseMismatch when a binary set operator mixes universes
CountableSet elaborate(const SetExpr& e, const ElabOptions& opts = {});

// a SizeExpr value: monotone expressions carry certificates via SizeSeq ops
struct SizeValue {
  Seq seq;
  bool monotone = true;
};
SizeValue elaborate(const SizeExpr& e, const ElabOptions& opts = {});

// fexpr: natural-coefficient polynomial in m (e.g. "m", "m^2", "3*m", "m^2+m")
numtheory::FuncSpec parse_func(const std::string& text);

}  // namespace sizecalc
