// Command-line front end. Talks to the library exclusively through the C API.

#include "vpc/vpc.h"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

namespace {

int fail_exit(int rc) {
  std::fprintf(stderr, "error: %s\n", vpc_last_error());
  switch (rc) {
    case VPC_ERR_SYNTAX:
    case VPC_ERR_DIALECT:
    case VPC_ERR_BAD_ARGUMENT:
    case VPC_ERR_NULL:
      return 2;
    default:
      return 1;
  }
}

bool slurp(const std::string& path, std::string& out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    std::fprintf(stderr, "error: cannot read %s\n", path.c_str());
    return false;
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  out = ss.str();
  return true;
}

struct Str {
  char* p = nullptr;
  ~Str() { vpc_string_free(p); }
};

struct Prog {
  vpc_program* p = nullptr;
  ~Prog() { vpc_program_free(p); }
};

struct Machine {
  vpc_machine* m = nullptr;
  ~Machine() { vpc_machine_free(m); }
};

struct Graph {
  vpc_graph* g = nullptr;
  ~Graph() { vpc_graph_free(g); }
};

int load_program(const std::string& path, Prog& prog) {
  std::string text;
  if (!slurp(path, text)) return 2;
  if (int rc = vpc_parse_source(text.c_str(), &prog.p)) return fail_exit(rc);
  return 0;
}

int check_against(const Prog& prog, const std::string& sig) {
  Str v;
  if (int rc = vpc_program_check(prog.p, sig.c_str(), &v.p)) return fail_exit(rc);
  if (v.p) {
    std::fprintf(stderr, "violation: %s\n", v.p);
    return 1;
  }
  return 0;
}

int trace_loop(vpc_machine* m, unsigned long steps, unsigned long long seed,
               bool interactive, bool classify, unsigned long depth,
               unsigned long vbound_unused) {
  (void)vbound_unused;
  std::mt19937_64 rng(seed);
  for (unsigned long n = 0; n < steps; ++n) {
    int count = 0;
    if (int rc = vpc_machine_step_count(m, &count)) return fail_exit(rc);
    if (count == 0) break;
    int pick = 0;
    if (interactive) {
      Str st;
      if (int rc = vpc_machine_state(m, &st.p)) return fail_exit(rc);
      std::printf("state: %s\n", st.p);
      for (int i = 0; i < count; ++i) {
        Str lab;
        if (int rc = vpc_machine_step_label(m, i, &lab.p)) return fail_exit(rc);
        std::string line = lab.p;
        if (vpc_machine_step_defcall(m, i) == 1) line += " (defcall)";
        std::printf("  [%d] %s\n", i, line.c_str());
      }
      for (;;) {
        std::fprintf(stderr, "choose> ");
        std::string in;
        if (!std::getline(std::cin, in) || in == "q") return 0;
        try {
          pick = std::stoi(in);
        } catch (...) {
          pick = -1;
        }
        if (pick >= 0 && pick < count) break;
        std::fprintf(stderr, "pick an index 0..%d or q\n", count - 1);
      }
    } else if (count > 1) {
      pick = static_cast<int>(rng() % static_cast<unsigned long long>(count));
    }
    Str lab;
    if (int rc = vpc_machine_step_label(m, pick, &lab.p)) return fail_exit(rc);
    std::string line = lab.p;
    if (vpc_machine_step_defcall(m, pick) == 1) line += " (defcall)";
    if (classify && line.rfind("tau", 0) == 0) {
      int inert = vpc_machine_step_inert(m, pick, depth);
      if (inert < 0) return fail_exit(VPC_ERR_INTERNAL);
      line += inert == 1 ? " [deterministic]" : " [nondet]";
    }
    std::printf("step %lu: %s\n", n, line.c_str());
    if (int rc = vpc_machine_take(m, pick)) return fail_exit(rc);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"value-passing process calculus toolkit"};
  app.require_subcommand(1);

  std::string file, file_b, sig, dialect = "p", code, fix_csv, mode = "run";
  unsigned long vbound = 8, cap = 4000, depth = 64, fuel = 64, steps = 20, target = 1;
  unsigned long classify_depth = 3;
  unsigned long long seed = 0;
  bool term_level = false, total = false, interactive = false, classify = false;

  auto* sc_parse = app.add_subcommand("parse", "parse a source file and pretty-print it");
  sc_parse->add_option("file", file)->required();
  sc_parse->add_option("--sig", sig, "check against a signature i=<n>;g=n1,n2,...");

  auto* sc_encode = app.add_subcommand("encode", "numeric code of a source file");
  sc_encode->add_option("file", file)->required();
  sc_encode->add_option("--sig", sig, "check before encoding");

  auto* sc_decode = app.add_subcommand("decode", "pretty-print a numeric code");
  sc_decode->add_option("code", code)->required();
  sc_decode->add_option("--dialect", dialect)->check(CLI::IsMember({"bang", "p"}));
  sc_decode->add_flag("--term", term_level, "treat as a bare term code, not a program code");

  auto* sc_norm = app.add_subcommand("normalize", "canonical renaming of a code");
  sc_norm->add_option("code", code)->required();
  sc_norm->add_option("--sig", sig)->required();
  sc_norm->add_option("--dialect", dialect)->check(CLI::IsMember({"bang", "p"}));
  sc_norm->add_flag("--term", term_level);
  sc_norm->add_flag("--total", total, "ill-typed input maps to 0 instead of failing");

  auto* sc_run = app.add_subcommand("run", "trace a source file under the direct semantics");
  sc_run->add_option("file", file)->required();
  sc_run->add_option("--vbound", vbound);
  sc_run->add_option("--fuel", fuel);
  sc_run->add_option("--steps", steps);
  sc_run->add_option("--seed", seed);
  sc_run->add_option("--depth", classify_depth, "equivalence depth used by --classify");
  sc_run->add_flag("--interactive", interactive);
  sc_run->add_flag("--classify", classify, "mark tau steps [deterministic] or [nondet]");

  auto* sc_univ = app.add_subcommand("universal", "run a code on the code-running engine");
  sc_univ->add_option("mode", mode)->check(CLI::IsMember({"run"}));
  sc_univ->add_option("--code", code)->required();
  sc_univ->add_option("--sig", sig)->required();
  sc_univ->add_option("--dialect", dialect, "p: program code; bang: replication term code")
      ->check(CLI::IsMember({"bang", "p"}));
  sc_univ->add_option("--vbound", vbound);
  sc_univ->add_option("--steps", steps);
  sc_univ->add_option("--seed", seed);
  sc_univ->add_option("--depth", classify_depth);
  sc_univ->add_flag("--interactive", interactive);
  sc_univ->add_flag("--classify", classify);

  auto* sc_bisim = app.add_subcommand("bisim", "divergence-preserving branching bisimilarity");
  sc_bisim->add_option("file_a", file)->required();
  sc_bisim->add_option("file_b", file_b)->required();
  sc_bisim->add_option("--vbound", vbound);
  sc_bisim->add_option("--cap", cap);
  sc_bisim->add_option("--depth", depth);
  sc_bisim->add_option("--fuel", fuel);

  auto* sc_strat = app.add_subcommand("strat-bisim", "depth-bounded equivalence check");
  sc_strat->add_option("file_a", file)->required();
  sc_strat->add_option("file_b", file_b)->required();
  sc_strat->add_option("--depth", depth)->required();
  sc_strat->add_option("--vbound", vbound);

  auto* sc_smn = app.add_subcommand("smn", "definition indices and partial application");
  sc_smn->add_option("file", file, "source file holding the definition system");
  sc_smn->add_option("--target", target, "1-based definition to point the index at");
  sc_smn->add_option("--sig", sig);
  sc_smn->add_option("--code", code, "existing definition index");
  sc_smn->add_option("--fix", fix_csv, "comma-separated values for the leading parameters");

  auto* sc_ho = app.add_subcommand("ho-translate", "first-order image of a higher-order term");
  sc_ho->add_option("file", file)->required();

  auto* sc_graph = app.add_subcommand("graph-dump", "explore and dump a transition graph");
  sc_graph->add_option("file", file, "source file for the direct semantics");
  sc_graph->add_option("--code", code, "run a code on the engine instead");
  sc_graph->add_option("--sig", sig);
  sc_graph->add_option("--dialect", dialect)->check(CLI::IsMember({"bang", "p"}));
  sc_graph->add_option("--vbound", vbound);
  sc_graph->add_option("--cap", cap);
  sc_graph->add_option("--depth", depth);
  sc_graph->add_option("--fuel", fuel);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : 2;
  }

  if (sc_parse->parsed()) {
    Prog prog;
    if (int rc = load_program(file, prog)) return rc;
    if (!sig.empty())
      if (int rc = check_against(prog, sig)) return rc;
    Str s;
    if (int rc = vpc_program_show(prog.p, &s.p)) return fail_exit(rc);
    std::printf("%s", s.p);
    return 0;
  }

  if (sc_encode->parsed()) {
    Prog prog;
    if (int rc = load_program(file, prog)) return rc;
    if (!sig.empty())
      if (int rc = check_against(prog, sig)) return rc;
    int d = vpc_program_dialect(prog.p);
    Str c;
    int rc = d == 1 ? vpc_program_encode(prog.p, &c.p) : vpc_encode_term_code(prog.p, &c.p);
    if (rc) return fail_exit(rc);
    std::printf("%s\n", c.p);
    return 0;
  }

  if (sc_decode->parsed()) {
    Prog prog;
    int rc;
    if (dialect == "bang")
      rc = vpc_decode_term(code.c_str(), 1, &prog.p);
    else if (term_level)
      rc = vpc_decode_term(code.c_str(), 0, &prog.p);
    else
      rc = vpc_decode_program(code.c_str(), &prog.p);
    if (rc) return fail_exit(rc);
    Str s;
    if ((rc = vpc_program_show(prog.p, &s.p))) return fail_exit(rc);
    std::printf("%s", s.p);
    return 0;
  }

  if (sc_norm->parsed()) {
    int bang = dialect == "bang" ? 1 : 0;
    int whole = (!bang && !term_level) ? 1 : 0;
    Str out;
    int rc = total ? vpc_parse_index(code.c_str(), sig.c_str(), bang, whole, &out.p)
                   : vpc_normalize_code(code.c_str(), sig.c_str(), bang, whole, &out.p);
    if (rc) return fail_exit(rc);
    std::printf("%s\n", out.p);
    return 0;
  }

  if (sc_run->parsed()) {
    Prog prog;
    if (int rc = load_program(file, prog)) return rc;
    Machine m;
    if (int rc = vpc_machine_direct(prog.p, vbound, fuel, &m.m)) return fail_exit(rc);
    return trace_loop(m.m, steps, seed, interactive, classify, classify_depth, vbound);
  }

  if (sc_univ->parsed()) {
    Machine m;
    int rc = dialect == "bang"
                 ? vpc_machine_interpreter(code.c_str(), sig.c_str(), vbound, &m.m)
                 : vpc_machine_universal(code.c_str(), sig.c_str(), vbound, &m.m);
    if (rc) return fail_exit(rc);
    return trace_loop(m.m, steps, seed, interactive, classify, classify_depth, vbound);
  }

  if (sc_bisim->parsed()) {
    Prog a, b;
    if (int rc = load_program(file, a)) return rc;
    if (int rc = load_program(file_b, b)) return rc;
    Graph ga, gb;
    if (int rc = vpc_graph_direct(a.p, vbound, cap, depth, fuel, &ga.g)) return fail_exit(rc);
    if (int rc = vpc_graph_direct(b.p, vbound, cap, depth, fuel, &gb.g)) return fail_exit(rc);
    if (vpc_graph_truncated(ga.g) == 1 || vpc_graph_truncated(gb.g) == 1)
      std::fprintf(stderr, "warning: exploration hit a cap; verdict covers the explored part\n");
    int eq = 0;
    Str w;
    if (int rc = vpc_bb_equiv(ga.g, gb.g, &eq, &w.p)) return fail_exit(rc);
    if (eq) {
      std::printf("equivalent\n");
      return 0;
    }
    std::printf("inequivalent\n");
    if (w.p) std::printf("witness: %s\n", w.p);
    return 1;
  }

  if (sc_strat->parsed()) {
    Prog a, b;
    if (int rc = load_program(file, a)) return rc;
    if (int rc = load_program(file_b, b)) return rc;
    int eq = 0;
    if (int rc = vpc_stratified(a.p, b.p, depth, vbound, &eq)) return fail_exit(rc);
    std::printf(eq ? "equivalent\n" : "inequivalent\n");
    return eq ? 0 : 1;
  }

  if (sc_smn->parsed()) {
    std::string cur = code;
    if (!file.empty()) {
      if (sig.empty()) {
        std::fprintf(stderr, "error: --sig is required when building an index from a file\n");
        return 2;
      }
      Prog prog;
      if (int rc = load_program(file, prog)) return rc;
      Str c;
      if (int rc = vpc_encode_def_index(prog.p, target, sig.c_str(), &c.p))
        return fail_exit(rc);
      cur = c.p;
    } else if (cur.empty()) {
      std::fprintf(stderr, "error: give a source file or --code\n");
      return 2;
    }
    if (!fix_csv.empty() || sc_smn->count("--fix")) {
      Str c;
      if (int rc = vpc_smn(cur.c_str(), fix_csv.c_str(), &c.p)) return fail_exit(rc);
      cur = c.p;
    }
    std::printf("%s\n", cur.c_str());
    return 0;
  }

  if (sc_ho->parsed()) {
    std::string text;
    if (!slurp(file, text)) return 2;
    Str out;
    if (int rc = vpc_ho_translate(text.c_str(), &out.p)) return fail_exit(rc);
    std::printf("%s\n", out.p);
    return 0;
  }

  if (sc_graph->parsed()) {
    Graph g;
    if (!code.empty()) {
      if (sig.empty()) {
        std::fprintf(stderr, "error: --sig is required with --code\n");
        return 2;
      }
      int rc = dialect == "bang"
                   ? vpc_graph_interpreter(code.c_str(), sig.c_str(), vbound, cap, depth, &g.g)
                   : vpc_graph_universal(code.c_str(), sig.c_str(), vbound, cap, depth, &g.g);
      if (rc) return fail_exit(rc);
    } else if (!file.empty()) {
      Prog prog;
      if (int rc = load_program(file, prog)) return rc;
      if (int rc = vpc_graph_direct(prog.p, vbound, cap, depth, fuel, &g.g))
        return fail_exit(rc);
    } else {
      std::fprintf(stderr, "error: give a source file or --code\n");
      return 2;
    }
    Str s;
    if (int rc = vpc_graph_dump(g.g, &s.p)) return fail_exit(rc);
    std::printf("%s", s.p);
    return 0;
  }

  return 2;
}
