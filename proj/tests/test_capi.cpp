#include "doctest.h"

#include "vpc/vpc.h"

#include <string>
#include <vector>

namespace {

struct Str {
  char* s = nullptr;
  ~Str() { vpc_string_free(s); }
  std::string get() const { return s ? s : ""; }
};

struct Prog {
  vpc_program* p = nullptr;
  explicit Prog(const char* src) { REQUIRE(vpc_parse_source(src, &p) == VPC_OK); }
  Prog(vpc_program* raw) : p(raw) {}
  ~Prog() { vpc_program_free(p); }
};

std::string encode(const char* src) {
  Prog p(src);
  Str code;
  REQUIRE(vpc_program_encode(p.p, &code.s) == VPC_OK);
  return code.get();
}

std::vector<std::string> machine_labels(vpc_machine* m) {
  int n = 0;
  REQUIRE(vpc_machine_step_count(m, &n) == VPC_OK);
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) {
    Str l;
    REQUIRE(vpc_machine_step_label(m, i, &l.s) == VPC_OK);
    out.push_back(l.get());
  }
  return out;
}

}  // namespace

TEST_CASE("programs round-trip through text, codes, and back") {
  CHECK(encode("main = 'n1(1).0") == "231738155");
  CHECK(encode("main = n1(x0).0") == "665");

  vpc_program* back = nullptr;
  REQUIRE(vpc_decode_program("231738155", &back) == VPC_OK);
  Prog d(back);
  Str text;
  REQUIRE(vpc_program_show(d.p, &text.s) == VPC_OK);
  CHECK(encode(text.get().c_str()) == "231738155");
  CHECK(vpc_program_dialect(d.p) == 1);
}

TEST_CASE("term codes follow the program's dialect") {
  Prog bang("main = !'n1(0).0");
  CHECK(vpc_program_dialect(bang.p) == 0);
  Str code;
  REQUIRE(vpc_encode_term_code(bang.p, &code.s) == VPC_OK);
  vpc_program* back = nullptr;
  REQUIRE(vpc_decode_term(code.get().c_str(), 1, &back) == VPC_OK);
  Prog d(back);
  Str text;
  REQUIRE(vpc_program_show(d.p, &text.s) == VPC_OK);
  CHECK(text.get().find('!') != std::string::npos);
  // whole-program codes do not exist in the replication dialect
  Str none;
  CHECK(vpc_program_encode(bang.p, &none.s) == VPC_ERR_DIALECT);
}

TEST_CASE("status codes and the thread error string") {
  vpc_program* p = nullptr;
  CHECK(vpc_parse_source("def def", &p) == VPC_ERR_SYNTAX);
  CHECK(std::string(vpc_last_error()).find("line") != std::string::npos);
  CHECK(vpc_parse_source(nullptr, &p) == VPC_ERR_NULL);
  CHECK(vpc_decode_program("31x", &p) == VPC_ERR_BAD_ARGUMENT);
  Str out;
  CHECK(vpc_normalize_code("665", "i=0;g=n1", 1, 1, &out.s) == VPC_ERR_DIALECT);
}

TEST_CASE("typing violations are reported as text") {
  Prog good("main = 'n1(0).0");
  Str v;
  REQUIRE(vpc_program_check(good.p, "i=0;g=n1", &v.s) == VPC_OK);
  CHECK(v.s == nullptr);
  Prog bad("main = 'n7(0).0");
  Str w;
  REQUIRE(vpc_program_check(bad.p, "i=0;g=n1", &w.s) == VPC_OK);
  CHECK(w.s != nullptr);
}

TEST_CASE("normalization and its total variant") {
  Str out;
  REQUIRE(vpc_normalize_code("106", "i=0;g=n5", 1, 0, &out.s) == VPC_OK);
  CHECK(out.get() == "8");
  Str total;
  REQUIRE(vpc_parse_index("106", "i=0;g=n1", 1, 0, &total.s) == VPC_OK);  // wrong name: junk
  CHECK(total.get() == "0");
}

TEST_CASE("machines step deterministically by index") {
  Prog p("main = 'n1(1).0 | n1(x0).'n2(x0).0");
  vpc_machine* m = nullptr;
  REQUIRE(vpc_machine_direct(p.p, 1, 64, &m) == VPC_OK);
  auto ls = machine_labels(m);
  int tau = -1;
  for (int i = 0; i < (int)ls.size(); ++i)
    if (ls[i] == "tau") tau = i;
  REQUIRE(tau >= 0);
  CHECK(vpc_machine_step_defcall(m, tau) == 0);
  REQUIRE(vpc_machine_take(m, tau) == VPC_OK);
  CHECK(machine_labels(m) == std::vector<std::string>{"out n2 1"});
  Str st;
  REQUIRE(vpc_machine_state(m, &st.s) == VPC_OK);
  CHECK(st.get().find("'n2(1)") != std::string::npos);
  CHECK(vpc_machine_take(m, 5) == VPC_ERR_BAD_ARGUMENT);
  vpc_machine_free(m);
}

TEST_CASE("the code-running machines agree with the frozen codes") {
  vpc_machine* m = nullptr;
  REQUIRE(vpc_machine_universal("231738155", "i=0;g=n1", 1, &m) == VPC_OK);
  CHECK(machine_labels(m) == std::vector<std::string>{"out n1 1"});
  vpc_machine_free(m);
  vpc_machine* t = nullptr;
  REQUIRE(vpc_machine_interpreter("8", "i=0;g=n1", 1, &t) == VPC_OK);
  CHECK(machine_labels(t) == std::vector<std::string>{"in n1 0", "in n1 1"});
  vpc_machine_free(t);
}

TEST_CASE("inert and branching internal steps are told apart") {
  Prog inert("main = (n3)('n3(0).0 | n3(x0).0)");
  vpc_machine* m = nullptr;
  REQUIRE(vpc_machine_direct(inert.p, 1, 64, &m) == VPC_OK);
  CHECK(vpc_machine_step_inert(m, 0, 3) == 1);
  vpc_machine_free(m);

  Prog choice("main = (n3)('n3(0).0 | n3(x0).'n1(0).0 | n3(x0).'n2(0).0)");
  vpc_machine* c = nullptr;
  REQUIRE(vpc_machine_direct(choice.p, 1, 64, &c) == VPC_OK);
  CHECK(vpc_machine_step_inert(c, 0, 3) == 0);
  vpc_machine_free(c);
}

TEST_CASE("graphs expose counts, observability, and equivalence") {
  Prog a("main = 'n1(0).0");
  vpc_graph* ga = nullptr;
  REQUIRE(vpc_graph_direct(a.p, 1, 4000, 64, 64, &ga) == VPC_OK);
  CHECK(vpc_graph_states(ga) == 2);
  CHECK(vpc_graph_edges(ga) == 1);
  CHECK(vpc_graph_truncated(ga) == 0);
  CHECK(vpc_graph_observable(ga) == 1);
  Str dump;
  REQUIRE(vpc_graph_dump(ga, &dump.s) == VPC_OK);
  CHECK(dump.get().find("states") != std::string::npos);

  Prog z("main = 0");
  vpc_graph* gz = nullptr;
  REQUIRE(vpc_graph_direct(z.p, 1, 4000, 64, 64, &gz) == VPC_OK);
  CHECK(vpc_graph_observable(gz) == 0);

  int eq = -1;
  Str witness;
  REQUIRE(vpc_bb_equiv(ga, gz, &eq, &witness.s) == VPC_OK);
  CHECK(eq == 0);
  CHECK(witness.s != nullptr);

  Prog a2("main = (n3)('n3(0).0 | n3(x0).'n1(0).0)");
  vpc_graph* ga2 = nullptr;
  REQUIRE(vpc_graph_direct(a2.p, 1, 4000, 64, 64, &ga2) == VPC_OK);
  int eq2 = -1;
  Str w2;
  REQUIRE(vpc_bb_equiv(ga, ga2, &eq2, &w2.s) == VPC_OK);
  CHECK(eq2 == 1);
  CHECK(w2.s == nullptr);

  int seq = -1;
  REQUIRE(vpc_stratified(a.p, a2.p, 6, 1, &seq) == VPC_OK);
  CHECK(seq == 1);

  vpc_graph_free(ga);
  vpc_graph_free(gz);
  vpc_graph_free(ga2);
}

TEST_CASE("definition index surgery end to end") {
  Prog sys("def D(x0) = 'n1(x0).0\nmain = 0");
  Str idx;
  REQUIRE(vpc_encode_def_index(sys.p, 1, "i=0;g=n1", &idx.s) == VPC_OK);
  CHECK(idx.get() == "3361005287673175174");
  Str fixed;
  REQUIRE(vpc_smn(idx.get().c_str(), "1", &fixed.s) == VPC_OK);
  CHECK(fixed.get() == "136791801545159097950907923712362716512");
  vpc_graph* g = nullptr;
  REQUIRE(vpc_universal_def_graph(fixed.get().c_str(), "", "i=0;g=n1", 2, 4000, 64, &g) ==
          VPC_OK);
  CHECK(vpc_graph_observable(g) == 1);  // runs 'n1(1).0 after the call tau
  vpc_graph_free(g);
}

TEST_CASE("the higher-order translation is reachable from C") {
  Str out;
  REQUIRE(vpc_ho_translate("n1(X:<0,1>).X(n2) | 'n1(\\g1. 'g1(7).0).0", &out.s) == VPC_OK);
  CHECK(out.get() ==
        "n1(x0).(n3)('n3(retarget[n2](x0)).0 | boot[n3;i=0;g=n2]) | "
        "'n1(89452373348653552655).0");
  Str bad;
  CHECK(vpc_ho_translate("X(", &bad.s) == VPC_ERR_SYNTAX);
}
