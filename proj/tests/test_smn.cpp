#include "doctest.h"

#include "equiv.hpp"
#include "error.hpp"
#include "godel.hpp"
#include "pairing.hpp"
#include "parser.hpp"
#include "smn.hpp"
#include "syntax_ops.hpp"

#include <memory>
#include <vector>

using namespace vpc;

namespace {

std::vector<ParamDef> system_of(const char* src) { return desugar(parse_source(src)).defs; }

LtsGraph graph_of(const Universal& u, uint64_t vbound) {
  return explore(Subject::machine(std::make_shared<Engine>(u.eng), u.root), {vbound, 4000, 64});
}

}  // namespace

TEST_CASE("definition indices have the documented arithmetic shape") {
  auto sys = system_of("def D(x0) = 'n1(x0).0\nmain = 0");
  TypeSig sig = TypeSig::parse("i=0;g=n1");
  Nat z = encode_def(sys, 1, sig);
  // entry = (arity, [params..., body]); index = (m, (systemCode, target))
  Nat entry = pair2(Nat(1), pair_list({Nat(0), Nat(26)}));
  CHECK(entry == Nat(72008));
  CHECK(z == pair2(Nat(1), pair2(pair_list({entry}), Nat(1))));
  CHECK(z == Nat("3361005287673175174"));
}

TEST_CASE("definition indices decode back") {
  auto sys = system_of("def D(x0) = 'n2(x0+1).D(x0)\ndef E() = 'n1(0).0\nmain = 0");
  TypeSig sig = TypeSig::parse("i=0;g=n1,n2");
  Nat z = encode_def(sys, 2, sig);
  DefSystem ds = decode_def(z);
  CHECK(ds.target == 2);
  REQUIRE(ds.defs.size() == 2);
  CHECK(ds.defs[0].params == std::vector<Nat>{Nat(0)});
  CHECK(ds.defs[1].params.empty());
  CHECK(term_eq(ds.defs[0].body, sys[0].body));
  CHECK(term_eq(ds.defs[1].body, sys[1].body));
}

TEST_CASE("an applied definition runs under the engine") {
  auto sys = system_of("def F(x0,x1) = 'n1(x0).'n2(x1).0\nmain = 0");
  TypeSig sig = TypeSig::parse("i=0;g=n1,n2");
  Nat z = encode_def(sys, 1, sig);
  Universal u = universal_def(z, {Nat(3), Nat(5)}, sig);
  auto s1 = config_transitions(u.eng, u.root, 1);
  REQUIRE(s1.size() == 1);
  CHECK(s1[0].act.defcall);
  auto s2 = config_transitions(u.eng, s1[0].next, 1);
  REQUIRE(s2.size() == 1);
  CHECK(s2[0].act.str() == "out n1 3");
  auto s3 = config_transitions(u.eng, s2[0].next, 1);
  REQUIRE(s3.size() == 1);
  CHECK(s3[0].act.str() == "out n2 5");
}

TEST_CASE("specialization commutes with application") {
  auto sys = system_of("def F(x0,x1) = 'n1(x0).'n2(x1).0\nmain = 0");
  TypeSig sig = TypeSig::parse("i=0;g=n1,n2");
  Nat z = encode_def(sys, 1, sig);
  Nat z3 = smn(z, 1, 1, {Nat(3)});
  CHECK(decode_def(z3).defs.at(decode_def(z3).target - 1).params.size() == 1);
  for (uint64_t y : {0u, 2u, 9u}) {
    LtsGraph whole = graph_of(universal_def(z, {Nat(3), Nat(y)}, sig), 2);
    LtsGraph fixed = graph_of(universal_def(z3, {Nat(y)}, sig), 2);
    CHECK(bb_div_equiv(whole, fixed).equivalent);
  }
}

TEST_CASE("the frozen specialized index") {
  auto sys = system_of("def D(x0) = 'n1(x0).0\nmain = 0");
  Nat z = encode_def(sys, 1, TypeSig::parse("i=0;g=n1"));
  CHECK(smn(z, 1, 0, {Nat(1)}) == Nat("136791801545159097950907923712362716512"));
}

TEST_CASE("bad specializations are rejected") {
  auto sys = system_of("def F(x0,x1) = 'n1(x0).'n2(x1).0\nmain = 0");
  TypeSig sig = TypeSig::parse("i=0;g=n1,n2");
  Nat z = encode_def(sys, 1, sig);
  CHECK_THROWS_AS(smn(z, 1, 2, {Nat(0)}), Error);          // arity is not k0+k1
  CHECK_THROWS_AS(smn(z, 2, 0, {Nat(0)}), Error);          // one value per fixed param
  CHECK_THROWS_AS(encode_def(sys, 3, sig), Error);         // target out of range
  CHECK_THROWS_AS(encode_def(sys, 0, sig), Error);
}

TEST_CASE("garbage definition indices run inert") {
  TypeSig sig = TypeSig::parse("i=0;g=n1");
  Universal u = universal_def(Nat(987654321), {}, sig);
  CHECK(config_transitions(u.eng, u.root, 4).empty());
  // right shape, wrong arity: also inert
  auto sys = system_of("def D(x0) = 'n1(x0).0\nmain = 0");
  Nat z = encode_def(sys, 1, sig);
  Universal v = universal_def(z, {Nat(0), Nat(1)}, sig);
  CHECK(config_transitions(v.eng, v.root, 4).empty());
}

TEST_CASE("mutually recursive systems survive specialization") {
  const char* src =
      "def A(x0,x1) = 'n1(x0).B(x1)\n"
      "def B(x0) = 'n2(x0).0\n"
      "main = 0";
  TypeSig sig = TypeSig::parse("i=0;g=n1,n2");
  auto sys = system_of(src);
  Nat z = encode_def(sys, 1, sig);
  Nat zf = smn(z, 1, 1, {Nat(7)});
  LtsGraph whole = graph_of(universal_def(z, {Nat(7), Nat(2)}, sig), 2);
  LtsGraph fixed = graph_of(universal_def(zf, {Nat(2)}, sig), 2);
  CHECK(bb_div_equiv(whole, fixed).equivalent);
}
