// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Tolerances (iteration counts, bounds, time budgets) are pinned here.

#include "checker.hpp"
#include "equiv.hpp"
#include "error.hpp"
#include "gen.hpp"
#include "godel.hpp"
#include "hovpc.hpp"
#include "lts.hpp"
#include "pairing.hpp"
#include "parser.hpp"
#include "presburger.hpp"
#include "smn.hpp"
#include "syntax_ops.hpp"
#include "universal.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace vpc;

namespace {

struct Ctx {
  int checks = 0;
  int failed = 0;
  std::string detail;
  void expect(bool ok, const char* what, long long i = -1) {
    ++checks;
    if (ok || failed++) return;
    detail = what;
    if (i >= 0) detail += " #" + std::to_string(i);
  }
};

Subject direct_term(const ProcPtr& t) { return Subject::direct(DirectState{t, make_defs({})}); }

Subject machine_of(const Universal& u) {
  return Subject::machine(std::make_shared<Engine>(u.eng), u.root);
}

/* ---- 1: codec bijectivity ---- */

void crit1(Ctx& c) {
  for (Dialect d : {Dialect::Bang, Dialect::P}) {
    for (uint64_t n = 0; n < 20000; ++n) {
      Nat z(n);
      if (encode_term(decode_term(z, d), d) != z) {
        c.expect(false, "small code re-encode", (long long)n);
        return;
      }
    }
    c.expect(true, "");
    std::mt19937_64 rng(0x5eed0001);
    for (int i = 0; i < 500; ++i) {
      Nat z(rng());
      if (encode_term(decode_term(z, d), d) != z) {
        c.expect(false, "random 64-bit code re-encode", i);
        return;
      }
    }
    c.expect(true, "");
  }
  gen::Rng r(0x5eed0002);
  for (int i = 0; i < 1000; ++i) {
    Dialect d = (i & 1) ? Dialect::P : Dialect::Bang;
    ProcPtr t = gen::arb_term(r, 5, d);
    c.expect(term_eq(decode_term(encode_term(t, d), d), t), "ast round trip", i);
  }
}

/* ---- 2: pairing ---- */

void crit2(Ctx& c) {
  for (uint64_t x = 0; x < 300; ++x)
    for (uint64_t y = 0; y < 300; ++y) {
      auto [a, b] = unpair2(pair2(Nat(x), Nat(y)));
      if (a != x || b != y) {
        c.expect(false, "unpair(pair)", (long long)(x * 300 + y));
        return;
      }
    }
  c.expect(true, "");
  for (uint64_t n = 0; n < 100000; ++n) {
    auto [a, b] = unpair2(Nat(n));
    if (pair2(a, b) != n) {
      c.expect(false, "pair(unpair)", (long long)n);
      return;
    }
  }
  c.expect(true, "");
  c.expect(pair_list({}) == 0, "empty bracket");
  c.expect(pair_list({Nat(41)}) == 41, "unary identity");
  c.expect(pair_list({Nat("123456789123456789")}) == Nat("123456789123456789"),
           "unary identity, wide");
  for (std::size_t k = 2; k <= 6; ++k)
    c.expect(pair_list(std::vector<Nat>(k, Nat(0))) == 0, "zero tuple", (long long)k);
  std::vector<Nat> xs{Nat(3), Nat(0), Nat(7), Nat(2)};
  c.expect(unpair_list(pair_list(xs), 4) == xs, "tuple round trip");
}

/* ---- 3: arithmetic decision procedure ---- */

void crit3(Ctx& c) {
  auto v0 = [] { return vvar(Nat(0)); };
  auto v1 = [] { return vvar(Nat(1)); };
  auto n = [](uint64_t k) { return vnum(Nat(k)); };
  struct Known {
    FormulaPtr f;
    bool truth;
  };
  std::vector<Known> known;
  known.push_back({fexists(Nat(0), feq(vadd(v0(), v0()), n(6))), true});
  known.push_back({fexists(Nat(0), feq(vadd(v0(), v0()), n(7))), false});
  known.push_back({fforall(Nat(0), flt(v0(), vadd(v0(), n(1)))), true});
  known.push_back({fexists(Nat(0), feq(vadd(v0(), n(1)), n(0))), false});
  known.push_back({fforall(Nat(0), fimplies(flt(v0(), n(5)), fexists(Nat(1), fand(flt(v0(), v1()), flt(v1(), n(7)))))), true});
  known.push_back({fexists(Nat(1), fforall(Nat(0), fimplies(flt(v0(), n(3)), flt(v0(), v1())))), true});
  known.push_back({fforall(Nat(0), fforall(Nat(1), feq(vadd(v0(), v1()), vadd(v1(), v0())))), true});
  known.push_back({fexists(Nat(0), fand(flt(n(3), v0()), flt(v0(), n(3)))), false});
  known.push_back({fforall(Nat(0), f_or(feq(v0(), n(0)), flt(n(0), v0()))), true});
  known.push_back({fexists(Nat(0), feq(vadd(vadd(v0(), v0()), v0()), n(12))), true});
  known.push_back({fnot(fexists(Nat(0), flt(v0(), n(0)))), true});
  known.push_back({ftrue(), true});
  known.push_back({ffalse(), false});
  known.push_back({fforall(Nat(0), ffalse()), false});
  known.push_back({fexists(Nat(0), ftrue()), true});
  known.push_back({fforall(Nat(0), fimplies(flt(v0(), n(3)), flt(v0(), n(5)))), true});
  known.push_back({fexists(Nat(0), fexists(Nat(1), fand(feq(v0(), vadd(v1(), n(1))), feq(v1(), n(2))))), true});
  known.push_back({fforall(Nat(0), f_or(fexists(Nat(1), feq(v0(), vadd(v1(), v1()))), fexists(Nat(1), feq(v0(), vadd(vadd(v1(), v1()), n(1)))))), true});
  known.push_back({fexists(Nat(0), feq(v0(), vadd(v0(), n(1)))), false});
  known.push_back({feq(vadd(n(2), n(2)), n(4)), true});
  for (std::size_t i = 0; i < known.size(); ++i) {
    c.expect(decide(known[i].f) == known[i].truth, "hand-written truth", (long long)i);
    c.expect(brute_decide(known[i].f, 64) == known[i].truth, "hand-written brute", (long long)i);
  }
  gen::Rng r(0x5eed0003);
  for (int i = 0; i < 300; ++i) {
    FormulaPtr f = gen::sentence(r);
    c.expect(decide(f) == brute_decide(f, 64), "random sentence", i);
  }
}

/* ---- 4: the code-running engine vs the direct semantics ---- */

void crit4(Ctx& c) {
  struct Member {
    const char* src;
    bool infinite;
  };
  const Member corpus[] = {
      {"main = 0", false},
      {"main = n1(x0).0", false},
      {"main = 'n2(3).0", false},
      {"main = n1(x0).'n2(x0+1).0", false},
      {"main = 'n1(1).0 | n1(x0).'n2(x0).0", false},
      {"main = 'n1(5).0 | n1(x0).'n2(x0).0", false},
      {"main = (n3)('n3(4).0 | n3(x0).'n1(x0).0)", false},
      {"main = if 1 < 2 then 'n1(0).0", false},
      {"main = if 2 < 1 then 'n1(0).0", false},
      {"main = if exists x0. x0+x0 = 4 then 'n1(1).0", false},
      {"main = (n3)(n4)('n3(1).0 | n3(x0).'n4(x0).0 | n4(x1).'n1(x1).0)", false},
      {"main = (n3)('n3(0).0 | n3(x0).(n3)('n3(1).0 | n3(x1).'n1(x1).0))", false},
      {"def E(x0) = if x0 = 0 then 'n1(0).0 else 'n2(x0).E(x0)\nmain = E(1)", false},
      {"def A() = 'n1(0).B()\ndef B() = 'n2(0).A()\nmain = A()", false},
      {"def D(x0) = 'n1(0).0 | (n3)('n3(x0).0 | 'n3(x0).0 | n3(x1).D(x1+1))\nmain = D(0)",
       true},
      {"main = n1(x0).n1(x1).'n2(x0+x1).0", false},
      {"main = n1(x0).if x0 = 1 then 'n2(0).0", false},
      {"main = n1(x0).case x0 of x0 = 0 => 'n1(0).0; tt => 'n2(x0).0; end", false},
      {"main = let x0 = 2+3 in 'n1(x0).0", false},
      {"main = (n3)n3(x0).0", false},
      {"main = 'n1(0).0 | 'n1(1).0 | n1(x0).'n2(x0).0", false},
      {"main = n1(x0).n1(x0).'n2(x0).0", false},
      {"main = (n3)('n3(1).0 | 'n3(2).0 | n3(x0).'n1(x0).0 | n3(x1).'n2(x1).0)", false},
      {"main = if forall x0. x0 < 3 => x0 < 5 then 'n1(0).0", false},
      {"def F(x0,x1) = 'n1(x0).'n2(x1).0\nmain = F(1,2)", false},
      {"def G(x0) = n1(x1).G(x0+x1)\nmain = G(0)", true},
      {"main = 'n1(2).'n1(3).0", false},
  };
  TypeSig sig = TypeSig::parse("i=4;g=n1,n2");
  long long idx = 0;
  for (const Member& m : corpus) {
    Program p = desugar(parse_source(m.src));
    Universal u = boot_universal(encode_program(p), sig);
    Subject dm = Subject::direct(make_state(parse_source(m.src)));
    Subject um = machine_of(u);
    if (m.infinite) {
      c.expect(stratified_equiv(dm, um, 8, 2), "depth-8 member", idx);
    } else {
      LtsGraph gd = explore(dm, {2, 2000, 64});
      LtsGraph gu = explore(um, {2, 2000, 64});
      c.expect(!gd.any_truncated() && !gu.any_truncated(), "member truncated", idx);
      c.expect(bb_div_equiv(gd, gu).equivalent, "member", idx);
    }
    ++idx;
  }
}

/* ---- 5: the replication interpreter vs the direct semantics ---- */

void crit5(Ctx& c) {
  const char* corpus[] = {
      "main = !n1(x0).0",
      "main = !'n1(0).0",
      "main = !n1(x0).'n2(x0).0",
      "main = (n3)(!'n3(0).0 | !n3(x0).'n1(x0).0)",
      "main = 'n1(1).0 | !n1(x0).'n2(x0+1).0",
      "main = !n1(x0).if x0 = 0 then 'n2(0).0",
      "main = (n3)('n3(2).0 | !n3(x0).'n3(x0).0)",
      "main = !'n1(3).0 | n1(x0).'n2(x0).0",
      "main = !n1(x0).!'n2(x0).0",
      "main = n1(x0).!'n1(x0).0",
      "main = !'n1(0).'n2(1).0",
  };
  TypeSig sig = TypeSig::parse("i=2;g=n1,n2");
  long long idx = 0;
  for (const char* src : corpus) {
    Program p = desugar(parse_source(src));
    Nat z = encode_term(p.main, Dialect::Bang);
    Universal u = boot_interpreter(z, sig);
    Subject dm = Subject::direct(make_state(parse_source(src)));
    c.expect(stratified_equiv(dm, machine_of(u), 6, 1), "interpreted member", idx);
    Program der = derive_replication(p);
    c.expect(der.dialect == Dialect::P, "derived dialect", idx);
    c.expect(stratified_equiv(dm, Subject::direct(make_state(der)), 6, 1), "derived member",
             idx);
    ++idx;
  }
}

/* ---- 6: normalization ---- */

void crit6(Ctx& c) {
  TypeSig sig = TypeSig::parse("i=2;g=n5,n3");
  // normal forms live under the identity signature with the same budgets
  TypeSig canon = TypeSig::parse("i=2;g=n1,n2");
  std::map<Nat, Nat> positional{{Nat(5), Nat(1)}, {Nat(3), Nat(2)}};
  gen::Rng r(0x5eed0004);
  for (int i = 0; i < 500; ++i) {
    Dialect d = (i & 1) ? Dialect::P : Dialect::Bang;
    ProcPtr t = gen::typed_term(r, 3, sig, d);
    Nat z = encode_term(t, d);
    Nat nz = normalize(z, sig, d);
    c.expect(normalize(nz, canon, d) == nz, "idempotence", i);
    ProcPtr renamed = gen::rename_free(t, positional);
    c.expect(stratified_equiv(direct_term(renamed), direct_term(decode_term(nz, d)), 4, 1),
             "positional-map semantics", i);
  }

  std::vector<Nat> bad_terms;  // replication dialect, one violation each
  bad_terms.push_back(encode_term(pout(Name(9ul), vnum(Nat(0)), pnil()), Dialect::Bang));
  bad_terms.push_back(encode_term(pin(Name(9ul), Nat(0), pnil()), Dialect::Bang));
  bad_terms.push_back(encode_term(pout(Name(5ul), vvar(Nat(3)), pnil()), Dialect::Bang));
  bad_terms.push_back(encode_term(
      pin(Name(5ul), Nat(0), pout(Name(3ul), vvar(Nat(1)), pnil())), Dialect::Bang));
  bad_terms.push_back(encode_term(
      pres(Name(7ul), pres(Name(8ul), pres(Name(9ul), pout(Name(9ul), vnum(Nat(0)), pnil())))),
      Dialect::Bang));
  bad_terms.push_back(
      encode_term(pcond(flt(vvar(Nat(0)), vnum(Nat(1))), pnil()), Dialect::Bang));
  bad_terms.push_back(encode_term(
      pcond(fexists(Nat(0), flt(vvar(Nat(1)), vnum(Nat(2)))), pnil()), Dialect::Bang));
  bad_terms.push_back(encode_term(prepin(Name(9ul), Nat(0), pnil()), Dialect::Bang));
  bad_terms.push_back(
      encode_term(pout(Name(5ul), vadd(vvar(Nat(0)), vnum(Nat(1))), pnil()), Dialect::Bang));
  bad_terms.push_back(encode_term(pin(Name(3ul), Nat(0), pin(Name(9ul), Nat(1), pnil())),
                                  Dialect::Bang));
  long long idx = 0;
  for (const Nat& z : bad_terms) {
    c.expect(parse_index(z, sig, Dialect::Bang) == 0, "ill-typed term index", idx);
    Universal u = boot_interpreter(z, sig);
    c.expect(!observable(explore(machine_of(u), {2, 100, 16})), "ill-typed term barb", idx);
    ++idx;
  }

  auto mk = [](ProcPtr main, std::vector<ParamDef> defs = {}) {
    Program p;
    p.dialect = Dialect::P;
    p.defs = std::move(defs);
    p.main = std::move(main);
    return p;
  };
  std::vector<Nat> bad_progs;
  bad_progs.push_back(encode_program(mk(pout(Name(9ul), vnum(Nat(0)), pnil()))));
  bad_progs.push_back(encode_program(mk(pout(Name(5ul), vvar(Nat(0)), pnil()))));
  bad_progs.push_back(encode_program(mk(
      pres(Name(7ul), pres(Name(8ul), pres(Name(9ul), pin(Name(9ul), Nat(0), pnil())))))));
  bad_progs.push_back(encode_program(mk(pcond(feq(vvar(Nat(2)), vnum(Nat(0))), pnil()))));
  bad_progs.push_back(encode_program(
      mk(pcall(Nat(1), {vnum(Nat(0))}),
         {ParamDef{"D", {Nat(0)}, pout(Name(5ul), vvar(Nat(1)), pnil())}})));
  bad_progs.push_back(encode_program(
      mk(pcall(Nat(1), {vnum(Nat(0))}),
         {ParamDef{"D", {Nat(0)}, pout(Name(9ul), vvar(Nat(0)), pnil())}})));
  bad_progs.push_back(encode_program(
      mk(pcond(fforall(Nat(0), flt(vvar(Nat(2)), vnum(Nat(3)))), pnil()))));
  bad_progs.push_back(encode_program(mk(ppar(
      pnil(), pres(Name(7ul), pres(Name(8ul), pres(Name(9ul), pout(Name(7ul), vnum(Nat(1)), pnil()))))))));
  bad_progs.push_back(encode_program(mk(pin(Name(9ul), Nat(0), pnil()))));
  bad_progs.push_back(encode_program(
      mk(pcall(Nat(1), {}), {ParamDef{"D", {}, pcond(flt(vvar(Nat(0)), vnum(Nat(1))), pnil())}})));
  for (const Nat& z : bad_progs) {
    c.expect(parse_program_index(z, sig) == 0, "ill-typed program index", idx);
    Universal u = boot_universal(z, sig);
    c.expect(!observable(explore(machine_of(u), {2, 100, 16})), "ill-typed program barb", idx);
    ++idx;
  }
}

/* ---- 7: substitution commutes with the codec ---- */

void crit7(Ctx& c) {
  gen::Rng r(0x5eed0005);
  for (int i = 0; i < 500; ++i) {
    Dialect d = (i & 1) ? Dialect::P : Dialect::Bang;
    ProcPtr t = gen::arb_term(r, 4, d);
    Nat z = encode_term(t, d);
    Nat v(r.u(3));
    Nat val(r.u(7));
    Nat sz = subst_code(z, v, encode_vterm(vnum(val)), d);
    c.expect(term_eq(decode_term(sz, d), subst_value(t, v, vnum(val))), "homomorphism", i);
  }
}

/* ---- 8: parameter fixing ---- */

void crit8(Ctx& c) {
  struct Sys {
    const char* src;
    bool strat;
  };
  const Sys systems[] = {
      {"def F(x0,x1) = 'n1(x0).'n2(x1).0\nmain = 0", false},
      {"def F(x0,x1) = 'n1(x0+x1).0\nmain = 0", false},
      {"def F(x0,x1) = if x0 = x1 then 'n1(0).0\nmain = 0", false},
      {"def F(x0,x1) = 'n1(x0).0 | 'n2(x1).0\nmain = 0", false},
      {"def F(x0,x1) = if x0 = 0 then 'n1(x1).0 else 'n2(x0).F(x0,x1)\nmain = 0", true},
      {"def A(x0,x1) = 'n1(x0).B(x1)\ndef B(x0) = 'n2(x0).0\nmain = 0", false},
      {"def F(x0,x1,x2) = 'n1(x0+x1).'n2(x2).0\nmain = 0", false},
      {"def F(x0,x1) = (n3)('n3(x0+x1).0 | n3(x2).'n1(x2).0)\nmain = 0", false},
  };
  TypeSig sig = TypeSig::parse("i=1;g=n1,n2");
  const Nat fixpool[3] = {Nat(2), Nat(1), Nat(0)};
  long long idx = 0;
  for (const Sys& s : systems) {
    auto defs = desugar(parse_source(s.src)).defs;
    std::size_t arity = defs[0].params.size();
    Nat z = encode_def(defs, 1, sig);
    for (std::size_t k0 = arity >= 3 ? 1 : 0; k0 <= arity && k0 <= 3; ++k0) {
      std::size_t k1 = arity - k0;
      std::vector<Nat> ivec(fixpool, fixpool + k0);
      Nat zs = smn(z, k0, k1, ivec);
      uint64_t combos = 1;
      for (std::size_t j = 0; j < k1; ++j) combos *= 3;
      for (uint64_t m = 0; m < combos; ++m) {
        std::vector<Nat> yvec;
        for (uint64_t q = m, j = 0; j < k1; ++j, q /= 3) yvec.push_back(Nat(q % 3));
        std::vector<Nat> all = ivec;
        all.insert(all.end(), yvec.begin(), yvec.end());
        Universal whole = universal_def(z, all, sig);
        Universal part = universal_def(zs, yvec, sig);
        if (s.strat) {
          c.expect(stratified_equiv(machine_of(whole), machine_of(part), 8, 2), "split", idx);
        } else {
          LtsGraph gw = explore(machine_of(whole), {2, 2000, 64});
          LtsGraph gp = explore(machine_of(part), {2, 2000, 64});
          c.expect(bb_div_equiv(gw, gp).equivalent, "split", idx);
        }
      }
      ++idx;
    }
  }
}

/* ---- 9: higher-order translation ---- */

void crit9(Ctx& c) {
  struct Case {
    const char* composition;
    const char* residual;
  };
  const Case cases[] = {
      {"(n9)('n9(\\g1. 'g1(1).0).0 | n9(X:<0,1>).X(n1))", "main = 'n1(1).0"},
      {"(n9)('n9(\\g1. 'g1(5).0).0 | n9(X:<0,1>).(X(n1) | X(n2)))",
       "main = 'n1(5).0 | 'n2(5).0"},
      {"(n9)('n9(\\g1. 'g1(1).0).'n9(\\g1. 'g1(2).0).0 | "
       "n9(X:<0,1>).n9(Y:<0,1>).(X(n1) | Y(n2)))",
       "main = 'n1(1).0 | 'n2(2).0"},
      {"(n9)('n9(\\. (n5)('n5(1).0 | n5(x0).0)).0 | n9(X:<1,0>).X())", "main = 0"},
      {"(n9)('n9(\\g1. (n5)('n5(2).0 | n5(x0).'g1(x0).0)).0 | n9(X:<1,1>).X(n2))",
       "main = 'n2(2).0"},
  };
  long long idx = 0;
  for (const Case& k : cases) {
    ProcPtr comp = translate(parse_ho_source(k.composition));
    ProcPtr res = translate(ho_embed(desugar(parse_source(k.residual)).main));
    c.expect(stratified_equiv(direct_term(comp), direct_term(res), 6, 2), "scenario", idx);
    ++idx;
  }
}

/* ---- 10: equivalence-checker sanity ---- */

void crit10(Ctx& c) {
  const char* corpus[10] = {
      "main = 0",
      "main = (n3)('n3(0).0 | n3(x0).0)",
      "main = 'n1(0).0",
      "main = 'n1(0).0 | 0",
      "main = (n3)('n3(0).0 | n3(x0).'n1(0).0)",
      "main = if tt then 'n1(0).0",
      "def T() = (n9)('n9(0).0 | n9(x0).T())\nmain = T()",
      "main = 'n1(1).0",
      "main = n1(x0).0",
      "main = n1(x0).'n1(x0).0",
  };
  const int cls[10] = {0, 0, 1, 1, 1, 1, 2, 3, 4, 5};
  std::array<LtsGraph, 10> g;
  for (int i = 0; i < 10; ++i)
    g[i] = explore(Subject::direct(make_state(parse_source(corpus[i]))), {2, 4000, 64});
  c.expect(!bb_div_equiv(g[0], g[6]).equivalent, "codivergence");
  c.expect(bb_div_equiv(g[0], g[1]).equivalent, "inert-step absorption");
  bool eq[10][10];
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) eq[i][j] = bb_div_equiv(g[i], g[j]).equivalent;
  for (int i = 0; i < 10; ++i) {
    c.expect(eq[i][i], "reflexive", i);
    for (int j = 0; j < 10; ++j) {
      c.expect(eq[i][j] == eq[j][i], "symmetric", i * 10 + j);
      c.expect(eq[i][j] == (cls[i] == cls[j]), "expected class", i * 10 + j);
      for (int k = 0; k < 10; ++k)
        if (eq[i][j] && eq[j][k]) c.expect(eq[i][k], "transitive", (i * 10 + j) * 10 + k);
    }
  }
}

/* ---- 11: command-line golden behavior ---- */

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(VPC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
  int st = pclose(f);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

void crit11(Ctx& c) {
  std::string data = VPC_DATA_DIR;
  auto enc = run_cli("encode " + data + "/out1.vpc");
  c.expect(enc.exit_code == 0 && enc.out.rfind("231738155", 0) == 0, "encode golden");
  auto dec = run_cli("decode 231738155");
  auto pretty = run_cli("parse " + data + "/out1.vpc");
  c.expect(dec.exit_code == 0 && dec.out == pretty.out, "decode is byte-exact");

  auto r1 = run_cli("run " + data + "/race.vpc --steps 5 --seed 7");
  auto r2 = run_cli("run " + data + "/race.vpc --steps 5 --seed 7");
  c.expect(r1.exit_code == 0 && !r1.out.empty() && r1.out == r2.out, "seeded trace replay");

  struct Pair {
    const char *a, *b;
    int expect;
  };
  const Pair pairs[] = {
      {"p1a.vpc", "p1b.vpc", 0}, {"p2a.vpc", "p2b.vpc", 1}, {"p3a.vpc", "p3b.vpc", 1},
      {"p4a.vpc", "p4b.vpc", 0}, {"p5a.vpc", "p5b.vpc", 0}, {"p6a.vpc", "p6b.vpc", 1},
  };
  long long idx = 0;
  for (const Pair& p : pairs) {
    auto r = run_cli("bisim " + data + "/" + p.a + " " + data + "/" + p.b + " --vbound 2");
    c.expect(r.exit_code == p.expect, "bisim exit code", idx++);
  }
}

struct Criterion {
  int id;
  const char* desc;
  double budget_s;  // 0: no time budget
  void (*fn)(Ctx&);
};

}  // namespace

int main() {
  const Criterion table[] = {
      {1, "numeric codes decode and re-encode bijectively", 10.0, crit1},
      {2, "tuple pairing is bijective with exact normalizations", 5.0, crit2},
      {3, "the arithmetic decision procedure matches brute force", 30.0, crit3},
      {4, "the code-running engine matches the direct semantics", 60.0, crit4},
      {5, "the replication interpreter matches the direct semantics", 60.0, crit5},
      {6, "normalization is idempotent, semantics-preserving, and total", 0.0, crit6},
      {7, "substitution commutes with the codec", 0.0, crit7},
      {8, "parameter fixing commutes with application", 60.0, crit8},
      {9, "the higher-order translation preserves behavior", 0.0, crit9},
      {10, "the equivalence checker is sane on a mixed corpus", 0.0, crit10},
      {11, "the command-line tool round-trips, replays, and judges", 0.0, crit11},
  };
  int bad = 0;
  for (const Criterion& cr : table) {
    Ctx ctx;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.fn(ctx);
    } catch (const std::exception& e) {
      ctx.expect(false, "unhandled exception");
      ctx.detail = std::string("unhandled exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = cr.budget_s <= 0.0 || secs < cr.budget_s;
    bool pass = ctx.failed == 0 && in_budget;
    if (pass) {
      std::printf("criterion %d: pass (%.2fs) — %s\n", cr.id, secs, cr.desc);
    } else {
      ++bad;
      std::string why = ctx.failed ? ctx.detail + " (" + std::to_string(ctx.failed) + " of " +
                                         std::to_string(ctx.checks) + " checks failed)"
                                   : "exceeded the " + std::to_string((int)cr.budget_s) +
                                         "s budget";
      std::printf("criterion %d: FAIL (%.2fs) — %s: %s\n", cr.id, secs, cr.desc, why.c_str());
    }
    std::fflush(stdout);
  }
  return bad == 0 ? 0 : 1;
}
