#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(VPC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
  int st = pclose(f);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string data(const std::string& name) { return std::string(VPC_DATA_DIR) + "/" + name; }

std::string trimmed(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == '\n') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// trace lines -> action labels, definition-call taus dropped
std::vector<std::string> actions(const std::string& trace) {
  std::vector<std::string> out;
  for (auto& l : lines(trace)) {
    if (l.rfind("step ", 0) != 0) continue;
    auto colon = l.find(": ");
    REQUIRE(colon != std::string::npos);
    std::string label = l.substr(colon + 2);
    if (label.find("(defcall)") != std::string::npos) continue;
    out.push_back(label);
  }
  return out;
}

}  // namespace

TEST_CASE("encode and decode are byte-exact inverses on the golden file") {
  auto enc = run_cli("encode " + data("out1.vpc"));
  CHECK(enc.exit_code == 0);
  CHECK(trimmed(enc.out) == "231738155");
  auto dec = run_cli("decode 231738155");
  CHECK(dec.exit_code == 0);
  auto pretty = run_cli("parse " + data("out1.vpc"));
  CHECK(dec.out == pretty.out);
}

TEST_CASE("seeded traces are reproducible") {
  auto a = run_cli("run " + data("race.vpc") + " --steps 5 --seed 42");
  auto b = run_cli("run " + data("race.vpc") + " --steps 5 --seed 42");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(actions(a.out).empty());
}

TEST_CASE("the engine trace replays the direct trace modulo call taus") {
  auto enc = run_cli("encode " + data("call.vpc"));
  REQUIRE(enc.exit_code == 0);
  auto direct = run_cli("run " + data("call.vpc") + " --steps 6 --seed 1");
  auto engine = run_cli("universal run --code " + trimmed(enc.out) +
                        " --sig \"i=1;g=n2\" --steps 6 --seed 1");
  CHECK(engine.exit_code == 0);
  CHECK(actions(direct.out) == actions(engine.out));
  CHECK(actions(direct.out) == std::vector<std::string>{"tau", "out n2 7"});
  // the engine trace really does carry the extra marked tau
  CHECK(engine.out.find("(defcall)") != std::string::npos);
}

TEST_CASE("equivalence checking exits 0 or 1 with a verdict line") {
  struct Pair {
    const char *a, *b;
    int expect;
  };
  const Pair pairs[] = {
      {"p1a.vpc", "p1b.vpc", 0}, {"p2a.vpc", "p2b.vpc", 1}, {"p3a.vpc", "p3b.vpc", 1},
      {"p4a.vpc", "p4b.vpc", 0}, {"p5a.vpc", "p5b.vpc", 0}, {"p6a.vpc", "p6b.vpc", 1},
  };
  for (auto& pr : pairs) {
    CAPTURE(pr.a);
    auto r = run_cli("bisim " + data(pr.a) + " " + data(pr.b) + " --vbound 2");
    CHECK(r.exit_code == pr.expect);
    if (pr.expect == 0) {
      CHECK(r.out.rfind("equivalent", 0) == 0);
    } else {
      CHECK(r.out.rfind("inequivalent", 0) == 0);
      CHECK(r.out.find("witness:") != std::string::npos);
    }
  }
  auto div = run_cli("bisim " + data("p3a.vpc") + " " + data("p3b.vpc") + " --vbound 1");
  CHECK(div.out.find("diverge") != std::string::npos);
}

TEST_CASE("depth-bounded checking covers replication") {
  auto r = run_cli("strat-bisim " + data("p1a.vpc") + " " + data("p1b.vpc") +
                   " --depth 6 --vbound 1");
  CHECK(r.exit_code == 0);
  auto s = run_cli("strat-bisim " + data("p2a.vpc") + " " + data("p2b.vpc") +
                   " --depth 6 --vbound 1");
  CHECK(s.exit_code == 1);
}

TEST_CASE("usage problems exit 2") {
  CHECK(run_cli("nosuchverb").exit_code == 2);
  CHECK(run_cli("run").exit_code == 2);
  CHECK(run_cli("bisim " + data("p1a.vpc")).exit_code == 2);
  CHECK(run_cli("run /nonexistent/file.vpc").exit_code == 2);
  CHECK(run_cli("decode 12z4").exit_code == 2);
}

TEST_CASE("tau steps are classified on request") {
  auto det = run_cli("run " + data("inert.vpc") + " --steps 3 --seed 1 --classify");
  CHECK(det.out.find("tau [deterministic]") != std::string::npos);
  auto nd = run_cli("run " + data("choice.vpc") + " --steps 1 --seed 1 --classify");
  CHECK(nd.out.find("tau [nondet]") != std::string::npos);
}

TEST_CASE("normalization from the command line") {
  auto n = run_cli("normalize 106 --sig \"i=0;g=n5\" --dialect bang --term");
  CHECK(n.exit_code == 0);
  CHECK(trimmed(n.out) == "8");
  auto bad = run_cli("normalize 106 --sig \"i=0;g=n1\" --dialect bang --term");
  CHECK(bad.exit_code == 1);
  auto total = run_cli("normalize 106 --sig \"i=0;g=n1\" --dialect bang --term --total");
  CHECK(trimmed(total.out) == "0");
}

TEST_CASE("definition indices from the command line") {
  auto idx = run_cli("smn " + data("defsys.vpc") + " --target 1 --sig \"i=0;g=n1\"");
  CHECK(idx.exit_code == 0);
  CHECK(idx.out.find("3361005287673175174") != std::string::npos);
  auto fixed = run_cli("smn " + data("defsys.vpc") + " --target 1 --sig \"i=0;g=n1\" --fix 1");
  CHECK(fixed.out.find("136791801545159097950907923712362716512") != std::string::npos);
  auto direct = run_cli("smn --code 3361005287673175174 --fix 1");
  CHECK(direct.out.find("136791801545159097950907923712362716512") != std::string::npos);
}

TEST_CASE("higher-order translation from the command line") {
  auto r = run_cli("ho-translate " + data("ho1.vpc"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("boot[n3;i=0;g=n2]") != std::string::npos);
  CHECK(r.out.find("retarget[n2](x0)") != std::string::npos);
}

TEST_CASE("graph dumps summarize the explored space") {
  auto r = run_cli("graph-dump " + data("out1.vpc") + " --vbound 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("states") != std::string::npos);
  auto m = run_cli("graph-dump --code 231738155 --sig \"i=0;g=n1\" --vbound 1");
  CHECK(m.exit_code == 0);
  CHECK(m.out.find("states") != std::string::npos);
}
