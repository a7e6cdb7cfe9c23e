#include <doctest.h>

#include <vector>

#include "sizecalc/errors.hpp"
#include "sizecalc/parser.hpp"

using namespace sizecalc;

namespace {

bool same_ast(const SetExpr& a, const SetExpr& b);

bool same_child(const SetExprPtr& a, const SetExprPtr& b) {
  if (!a || !b) return !a && !b;
  return same_ast(*a, *b);
}

bool same_ast(const SetExpr& a, const SetExpr& b) {
  return a.kind == b.kind && a.atom == b.atom && a.k == b.k && a.elements == b.elements &&
         a.fexpr == b.fexpr && a.lo == b.lo && a.hi == b.hi && a.lo_strict == b.lo_strict &&
         a.hi_strict == b.hi_strict && same_child(a.lhs, b.lhs) && same_child(a.rhs, b.rhs);
}

bool same_ast(const SizeExpr& a, const SizeExpr& b) {
  if (a.kind != b.kind || a.literal != b.literal) return false;
  if (!a.set != !b.set || (a.set && !same_ast(*a.set, *b.set))) return false;
  if (!a.lhs != !b.lhs || (a.lhs && !same_ast(*a.lhs, *b.lhs))) return false;
  if (!a.rhs != !b.rhs || (a.rhs && !same_ast(*a.rhs, *b.rhs))) return false;
  return true;
}

std::vector<long> longs(const Seq& s, uint64_t terms) {
  std::vector<long> out;
  for (uint64_t n = 1; n <= terms; ++n) out.push_back(static_cast<long>(s.at(n).get_si()));
  return out;
}

}  // namespace

TEST_CASE("incomplete input reports the right offset") {
  try {
    parse_set_expr("N x");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.position == 3);
  }
  CHECK_THROWS_AS(parse_set_expr("M(0)"), SyntaxError);
  CHECK_THROWS_AS(parse_set_expr("interval(1,1/0]"), SyntaxError);
  CHECK_THROWS_AS(parse_set_expr("N )"), SyntaxError);
  CHECK_THROWS_AS(parse_size_expr("sigma(N"), SyntaxError);
  CHECK_THROWS_AS(parse_size_expr("alpha +"), SyntaxError);
}

TEST_CASE("set expression round-trips") {
  for (const char* s : {
           "N", "N0", "Z", "Q", "Q+", "I", "E", "O", "P", "S",
           "M(3)", "finite{1,2,3}", "finite{}", "image(m^2)", "image(3*m)",
           "image(m^2+m)", "interval(0,1]", "interval[1,2)", "interval(1/2,7/3]",
           "N x N", "M(3) & E", "N \\ E | O", "E | O & S", "(N \\ E) x M(2)",
           "Q+ & interval(0,1]", "E x E x E",
       }) {
    auto ast = parse_set_expr(s);
    auto again = parse_set_expr(render(*ast));
    CHECK_MESSAGE(same_ast(*ast, *again), s);
  }
}

TEST_CASE("size expression round-trips") {
  for (const char* s : {
           "alpha", "phi", "7", "sigma(N x N)", "chi(I)", "alpha + 1",
           "2 * alpha + phi", "(alpha + 1) * phi", "sigma(E) * sigma(O)",
           "3 * (alpha + phi)",
       }) {
    auto ast = parse_size_expr(s);
    auto again = parse_size_expr(render(*ast));
    CHECK_MESSAGE(same_ast(*ast, *again), s);
  }
}

TEST_CASE("precedence: product binds tighter than meet, meet tighter than join") {
  auto e = parse_set_expr("N \\ E | O");
  CHECK(e->kind == SetExpr::Kind::Union);
  CHECK(e->lhs->kind == SetExpr::Kind::Diff);
  auto f = parse_set_expr("E | O & S");
  CHECK(f->kind == SetExpr::Kind::Union);
  CHECK(f->rhs->kind == SetExpr::Kind::Inter);
  auto g = parse_set_expr("E & O x N");
  CHECK(g->kind == SetExpr::Kind::Inter);
  CHECK(g->rhs->kind == SetExpr::Kind::Product);
}

TEST_CASE("elaborated expressions match the paper sequences") {
  CHECK(longs(elaborate(*parse_size_expr("sigma(N x N)")).seq, 5) ==
        std::vector<long>{1, 4, 9, 16, 25});
  CHECK(longs(elaborate(*parse_size_expr("(alpha + 1) * phi")).seq, 5) ==
        std::vector<long>{2, 6, 16, 30, 60});
  CHECK(longs(elaborate(*parse_size_expr("sigma(Q+)")).seq, 5) ==
        std::vector<long>{2, 6, 16, 30, 60});
  // M(3) & E is the multiples of 6
  SizeSeq m6 = elaborate(*parse_set_expr("M(3) & E")).size_seq();
  for (uint64_t n = 1; n <= 120; ++n) CHECK(m6.at(n) == Int(static_cast<unsigned long>(n / 6)));
  CHECK(longs(elaborate(*parse_size_expr("sigma(finite{})")).seq, 3) ==
        std::vector<long>{0, 0, 0});
  CHECK(longs(elaborate(*parse_size_expr("chi(I)")).seq, 8) ==
        std::vector<long>{1, 1, 2, 2, 4, 2, 6, 4});
  // non-monotone subexpressions still combine
  CHECK(longs(elaborate(*parse_size_expr("chi(I) + alpha")).seq, 5) ==
        std::vector<long>{2, 3, 5, 6, 9});
}

TEST_CASE("elaboration options select the flagged variants") {
  ElabOptions nc;
  nc.noncanonical_q = true;
  CHECK(longs(elaborate(*parse_set_expr("Q+"), nc).char_seq(), 5) ==
        std::vector<long>{1, 2, 4, 4, 8});
  ElabOptions pp;
  pp.paper_primes = true;
  CHECK(elaborate(*parse_set_expr("P"), pp).size_seq().at(1) == 1);
  CHECK(elaborate(*parse_set_expr("P")).size_seq().at(1) == 0);
}

TEST_CASE("universe mismatches surface at elaboration") {
  CHECK_THROWS_AS(elaborate(*parse_set_expr("N | Z")), UniverseMismatch);
  CHECK_THROWS_AS(elaborate(*parse_set_expr("Q+ & N")), UniverseMismatch);
}

TEST_CASE("function expressions") {
  CHECK(parse_func("m").name == "m");
  CHECK(parse_func("m^2").name == "m^2");
  CHECK(parse_func("5*m").name == "5*m");
  CHECK(parse_func("m^2+m").eval(3) == 12);
  CHECK_THROWS_AS(parse_func("7"), SyntaxError);
  CHECK_THROWS_AS(parse_func("q"), SyntaxError);
}
