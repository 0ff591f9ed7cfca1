#include "doctest.h"

#include "equiv.hpp"
#include "godel.hpp"
#include "lts.hpp"
#include "parser.hpp"
#include "syntax_ops.hpp"
#include "universal.hpp"

#include <memory>
#include <string>

using namespace vpc;

namespace {

Subject direct_src(const char* src) { return Subject::direct(make_state(parse_source(src))); }

Subject machine_src(const char* src, const char* sig) {
  Program p = desugar(parse_source(src));
  Universal u = boot_universal(encode_program(p), TypeSig::parse(sig));
  return Subject::machine(std::make_shared<Engine>(u.eng), u.root);
}

}  // namespace

TEST_CASE("exploration counts states and edges") {
  LtsGraph g = explore(direct_src("main = 'n1(0).0"), {2, 4000, 64});
  CHECK(g.keys.size() == 2);
  CHECK(g.num_edges() == 1);
  CHECK_FALSE(g.any_truncated());
  CHECK_FALSE(g.diverges[0]);
  CHECK(g.dump().find("states") != std::string::npos);

  LtsGraph ins = explore(direct_src("main = n1(x0).0"), {3, 4000, 64});
  CHECK(ins.keys.size() == 2);  // every input collapses to the inert state
  CHECK(ins.num_edges() == 4);
}

TEST_CASE("a self-looping definition folds to one diverging state") {
  LtsGraph g = explore(direct_src("def T() = (n9)('n9(0).0 | n9(x0).T())\nmain = T()"),
                       {1, 4000, 64});
  REQUIRE(g.keys.size() == 1);
  REQUIRE(g.adj[0].size() == 1);
  CHECK(g.adj[0][0].first.k == Action::K::Tau);
  CHECK(g.adj[0][0].second == 0);
  CHECK(g.diverges[0]);
}

TEST_CASE("caps mark truncation instead of lying") {
  // vbound 2 makes five distinct states; a cap of three cuts the frontier
  LtsGraph g = explore(direct_src("main = n1(x0).'n2(x0).0"), {2, 3, 64});
  CHECK(g.any_truncated());
  LtsGraph full = explore(direct_src("main = n1(x0).'n2(x0).0"), {2, 4000, 64});
  CHECK_FALSE(full.any_truncated());
}

TEST_CASE("inert internal steps are absorbed") {
  LtsGraph zero = explore(direct_src("main = 0"), {1, 4000, 64});
  LtsGraph inert = explore(direct_src("main = (n3)('n3(0).0 | n3(x0).0)"), {1, 4000, 64});
  Verdict v = bb_div_equiv(zero, inert);
  CHECK(v.equivalent);
  CHECK(v.witness.empty());
}

TEST_CASE("divergence is preserved") {
  LtsGraph zero = explore(direct_src("main = 0"), {1, 4000, 64});
  LtsGraph loop = explore(direct_src("def T() = (n9)('n9(0).0 | n9(x0).T())\nmain = T()"),
                          {1, 4000, 64});
  Verdict v = bb_div_equiv(zero, loop);
  CHECK_FALSE(v.equivalent);
  CHECK(v.witness.find("diverge") != std::string::npos);
}

TEST_CASE("visible mismatches produce a witness") {
  LtsGraph a = explore(direct_src("main = 'n1(0).0"), {2, 4000, 64});
  LtsGraph b = explore(direct_src("main = 'n1(1).0"), {2, 4000, 64});
  Verdict v = bb_div_equiv(a, b);
  CHECK_FALSE(v.equivalent);
  CHECK_FALSE(v.witness.empty());
  // and a tau in front of a visible action is no distinction
  LtsGraph c = explore(direct_src("main = (n3)('n3(0).0 | n3(x0).'n1(0).0)"), {2, 4000, 64});
  CHECK(bb_div_equiv(a, c).equivalent);
}

TEST_CASE("observability looks through internal steps") {
  CHECK_FALSE(observable(explore(direct_src("main = 0"), {1, 4000, 64})));
  CHECK(observable(explore(direct_src("main = 'n1(0).0"), {1, 4000, 64})));
  CHECK(observable(explore(direct_src("main = (n3)('n3(0).0 | n3(x0).'n1(0).0)"), {1, 4000, 64})));
  CHECK_FALSE(observable(explore(
      direct_src("def T() = (n9)('n9(0).0 | n9(x0).T())\nmain = T()"), {1, 4000, 64})));
}

TEST_CASE("stratified comparison handles replication") {
  Subject bang = direct_src("main = !'n1(0).0");
  Subject def_loop = direct_src("def R() = 'n1(0).R()\nmain = R()");
  CHECK(stratified_equiv(bang, def_loop, 6, 1));
  Subject once = direct_src("main = 'n1(0).0");
  CHECK_FALSE(stratified_equiv(bang, once, 3, 1));
  CHECK(stratified_equiv(once, once, 4, 1));
}

TEST_CASE("machine subjects are comparable with direct ones") {
  const char* src = "main = n1(x0).'n2(x0).0 | 'n1(1).0";
  LtsGraph d = explore(direct_src(src), {2, 4000, 64});
  LtsGraph m = explore(machine_src(src, "i=0;g=n1,n2"), {2, 4000, 64});
  CHECK(bb_div_equiv(d, m).equivalent);

  const char* callsrc = "def A(x0) = 'n2(x0).0\nmain = n1(x0).A(x0+1)";
  LtsGraph dc = explore(direct_src(callsrc), {2, 4000, 64});
  LtsGraph mc = explore(machine_src(callsrc, "i=0;g=n1,n2"), {2, 4000, 64});
  CHECK(bb_div_equiv(dc, mc).equivalent);  // defcall taus are inert
}
