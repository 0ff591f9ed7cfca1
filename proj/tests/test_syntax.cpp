#include "doctest.h"

#include "error.hpp"
#include "parser.hpp"
#include "syntax_ops.hpp"

#include <functional>

using namespace vpc;

namespace {
bool same_program(const Program& a, const Program& b) {
  if (a.dialect != b.dialect || a.defs.size() != b.defs.size()) return false;
  if (!term_eq(a.main, b.main)) return false;
  for (std::size_t i = 0; i < a.defs.size(); ++i) {
    if (a.defs[i].params != b.defs[i].params) return false;
    if (!term_eq(a.defs[i].body, b.defs[i].body)) return false;
  }
  return true;
}
}  // namespace

TEST_CASE("core constructor parsing") {
  Program p = parse_source("main = n1(x0).'n2(x0+1).0 | (n3)('n3(4).0 | n3(x1).0)");
  CHECK(p.dialect == Dialect::P);
  REQUIRE(p.main->k == ProcTerm::K::Par);
  CHECK(p.main->a->k == ProcTerm::K::In);
  CHECK(p.main->b->k == ProcTerm::K::Res);
  CHECK(p.main->a->chan.idx == 1);
  CHECK(p.main->b->chan.idx == 3);
}

TEST_CASE("pretty-printed source re-parses to the same tree") {
  const char* sources[] = {
      "main = 0",
      "main = n1(x0).'n2(x0).0",
      "main = (n3)('n3(2).0 | n3(x0).'n1(x0+x0).0)",
      "main = if 1 < 2 then 'n1(0).0",
      "main = if exists x0. x0 + x0 = 4 then 'n1(1).0 else 'n2(1).0",
      "def F(x0, x1) = 'n1(x0+x1).0\nmain = F(1, 2)",
      "def A() = 'n1(0).B()\ndef B() = 'n2(0).A()\nmain = A()",
      "main = !n1(x0).'n2(x0).0 | !'n1(3).0",
      "main = let x0 = 2+3 in 'n1(x0).0",
      "main = n1(x0).case x0 of x0 = 0 => 'n2(0).0; x0 < 3 => 'n2(1).0; tt => 'n2(2).0; end",
  };
  for (const char* s : sources) {
    Program p1 = parse_source(s);
    Program p2 = parse_source(show(p1));
    CHECK_MESSAGE(same_program(p1, p2), "source: ", s);
  }
}

TEST_CASE("prefix sugar") {
  // 'a.T carries payload 0; a.T invents the smallest variable free in the continuation
  Program p = parse_source("main = 'n1.n2.'n3(x0).0");
  REQUIRE(p.main->k == ProcTerm::K::Out);
  CHECK(p.main->val->k == ValueTerm::K::Num);
  CHECK(p.main->val->num == 0);
  REQUIRE(p.main->a->k == ProcTerm::K::In);
  CHECK(p.main->a->var == 1);  // x0 is free in the continuation, so x1 is chosen
}

TEST_CASE("identifier interning knows canonical spellings") {
  // n2 claims index 2 up front; zeta gets the smallest unclaimed name, n1
  Program p = parse_source("main = n2(x1).zeta(x1).0");
  CHECK(p.main->chan.idx == 2);
  CHECK(p.main->a->chan.idx == 1);
  CHECK(p.main->var == 1);
  CHECK(p.main->a->var == 1);
}

TEST_CASE("dialect detection and mixing rules") {
  CHECK(parse_source("main = !'n1(0).0").dialect == Dialect::Bang);
  CHECK(parse_source("main = 'n1(0).0").dialect == Dialect::P);
  CHECK_THROWS_AS(parse_source("def A() = 0\nmain = !'n1(0).0"), Error);
}

TEST_CASE("parse errors carry position and reason") {
  auto expect_syntax = [](const char* src) {
    try {
      parse_source(src);
      FAIL_CHECK("expected a syntax error for: ", src);
    } catch (const Error& e) {
      CHECK(e.code == ErrCode::Syntax);
      CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
  };
  expect_syntax("main = n1(x0)");               // missing continuation
  expect_syntax("def A() = 0\ndef A() = 0\nmain = 0");  // duplicate definition
  expect_syntax("def A(x0, x0) = 0\nmain = 0"); // duplicate parameter
  expect_syntax("main = B(1)");                 // unknown call target
  expect_syntax("def A(x0) = 0\nmain = A()");   // arity mismatch
  expect_syntax("main = 0 extra");              // trailing input
  expect_syntax("def A() = 0 0\nmain = 0");     // trailing input after a body
  expect_syntax("'n1(0).0");                    // missing main header
}

TEST_CASE("restriction versus grouping") {
  Program grouped = parse_source("main = ('n1(0).0)");
  CHECK(grouped.main->k == ProcTerm::K::Out);
  Program restricted = parse_source("main = (n1)'n1(0).0");
  CHECK(restricted.main->k == ProcTerm::K::Res);
}

TEST_CASE("formula precedence") {
  // => is right-associative and binds loosest; ~ tightest
  Program p = parse_source("main = if ff => ff => ff then 'n1(0).0");
  const FormulaPtr& g = p.main->guard;
  REQUIRE(g->k == Formula::K::Implies);
  CHECK(g->g->k == Formula::K::Implies);  // ff => (ff => ff)
  Program q = parse_source("main = if ~ 1 < 2 \\/ tt then 'n1(0).0");
  CHECK(q.main->guard->k == Formula::K::Or);
}

TEST_CASE("desugaring removes the convenience constructors") {
  Program p = parse_source(
      "main = if tt then 'n1(0).0 else 'n2(0).0"
      " | let x0 = 3 in 'n1(x0).0"
      " | n1(x2).case x2 of x2 = 0 => 0; tt => 'n2(1).0; end");
  Program d = desugar(p);
  std::function<void(const ProcPtr&)> assert_core = [&](const ProcPtr& t) {
    CHECK(t->k != ProcTerm::K::IfElse);
    CHECK(t->k != ProcTerm::K::Case);
    CHECK(t->k != ProcTerm::K::Let);
    switch (t->k) {
      case ProcTerm::K::In:
      case ProcTerm::K::Out:
      case ProcTerm::K::Res:
      case ProcTerm::K::Cond: assert_core(t->a); break;
      case ProcTerm::K::Par:
        assert_core(t->a);
        assert_core(t->b);
        break;
      default: break;
    }
  };
  assert_core(d.main);
  // let substituted the value
  Program lp = parse_source("main = let x0 = 3 in 'n1(x0).0");
  Program ld = desugar(lp);
  CHECK(term_eq(ld.main, parse_source("main = 'n1(3).0").main));
}

TEST_CASE("free variables and analysis") {
  Program p = parse_source("main = n1(x0).'n2(x0+x1).0");
  auto fv = free_vars(p.main);
  CHECK(fv.count(Nat(1)) == 1);   // x1 free
  CHECK(fv.count(Nat(0)) == 0);   // x0 bound by the input

  Analysis a = analyze(parse_source("main = (n3)((n3)('n3(0).0) | 'n4(0).n1(x0).0)").main);
  REQUIRE(a.global_names.size() == 2);
  CHECK(a.global_names[0].idx == 4);  // first free occurrence order
  CHECK(a.global_names[1].idx == 1);
  CHECK(a.local_name_count == 1);     // the two n3 binders share one identity
}

TEST_CASE("replication derives to parametric definitions") {
  Program p = parse_source("main = !n1(x0).'n2(x0).0");
  Program d = derive_replication(p);
  CHECK(d.dialect == Dialect::P);
  REQUIRE(d.defs.size() == 1);
  CHECK(d.main->k == ProcTerm::K::Call);
  // body is prefix | respawning self-call
  const ProcPtr& body = d.defs[0].body;
  REQUIRE(body->k == ProcTerm::K::Par);
  CHECK(body->a->k == ProcTerm::K::In);
  CHECK(body->b->k == ProcTerm::K::Call);
  CHECK(d.defs[0].params.empty());  // the prefix is closed
}
