#include "vpc/vpc.h"

#include "ast.hpp"
#include "checker.hpp"
#include "equiv.hpp"
#include "error.hpp"
#include "godel.hpp"
#include "hovpc.hpp"
#include "lts.hpp"
#include "parser.hpp"
#include "smn.hpp"
#include "syntax_ops.hpp"
#include "universal.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using namespace vpc;

struct vpc_program {
  Program p;
};

struct vpc_machine {
  bool direct = true;
  DirectState ds;
  std::shared_ptr<const Engine> eng;
  ConfigPtr cfg;
  uint64_t vbound = 8;
  uint64_t fuel = 64;
  bool steps_ready = false;
  std::vector<Action> acts;
  std::vector<DirectState> dnext;
  std::vector<ConfigPtr> cnext;
};

struct vpc_graph {
  LtsGraph g;
};

namespace {

thread_local std::string g_err;

int code_of(const Error& e) {
  switch (e.code) {
    case ErrCode::Syntax: return VPC_ERR_SYNTAX;
    case ErrCode::Dialect: return VPC_ERR_DIALECT;
    case ErrCode::OpenTerm: return VPC_ERR_OPEN_TERM;
    case ErrCode::IllTyped: return VPC_ERR_ILL_TYPED;
    case ErrCode::FuelExhausted: return VPC_ERR_FUEL;
    case ErrCode::BadArgument: return VPC_ERR_BAD_ARGUMENT;
    case ErrCode::Capture: return VPC_ERR_CAPTURE;
    case ErrCode::Internal: return VPC_ERR_INTERNAL;
  }
  return VPC_ERR_INTERNAL;
}

template <typename F>
int wrap(F&& f) {
  try {
    f();
    return VPC_OK;
  } catch (const Error& e) {
    g_err = e.what();
    return code_of(e);
  } catch (const std::exception& e) {
    g_err = e.what();
    return VPC_ERR_INTERNAL;
  }
}

char* dup_str(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int require(bool ok, const char* what) {
  if (ok) return VPC_OK;
  g_err = what;
  return VPC_ERR_NULL;
}

Nat parse_nat(const char* s) {
  if (!s || !*s) fail(ErrCode::BadArgument, "empty number");
  for (const char* p = s; *p; ++p)
    if (*p < '0' || *p > '9') fail(ErrCode::BadArgument, "not a decimal natural");
  return Nat(std::string(s));
}

std::vector<Nat> parse_csv(const char* s) {
  std::vector<Nat> out;
  if (!s || !*s) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) fail(ErrCode::BadArgument, "empty entry in number list");
    out.push_back(parse_nat(item.c_str()));
  }
  return out;
}

void ensure_steps(vpc_machine* m) {
  if (m->steps_ready) return;
  m->acts.clear();
  m->dnext.clear();
  m->cnext.clear();
  if (m->direct) {
    StepOpts o;
    o.vbound = m->vbound;
    o.fuel = m->fuel;
    for (DirectStep& s : direct_transitions(m->ds, o)) {
      m->acts.push_back(s.act);
      m->dnext.push_back(std::move(s.next));
    }
  } else {
    for (UStep& s : config_transitions(*m->eng, m->cfg, m->vbound)) {
      m->acts.push_back(s.act);
      m->cnext.push_back(std::move(s.next));
    }
  }
  m->steps_ready = true;
}

Subject subject_at(const vpc_machine* m, int i /* -1: current state */) {
  if (m->direct) {
    DirectState s = i < 0 ? m->ds : m->dnext[static_cast<std::size_t>(i)];
    return Subject::direct(std::move(s), m->fuel);
  }
  ConfigPtr c = i < 0 ? m->cfg : m->cnext[static_cast<std::size_t>(i)];
  return Subject::machine(m->eng, std::move(c));
}

LtsGraph explore_universal(const Universal& u, uint64_t vbound, std::size_t cap,
                           std::size_t depth) {
  ExploreOpts o;
  o.vbound = vbound;
  o.state_cap = cap;
  o.depth_cap = depth;
  auto eng = std::make_shared<Engine>(u.eng);
  return explore(Subject::machine(eng, u.root), o);
}

}  // namespace

extern "C" {

const char* vpc_last_error(void) { return g_err.c_str(); }

void vpc_string_free(char* s) { std::free(s); }

int vpc_parse_source(const char* text, vpc_program** out) {
  if (int rc = require(text && out, "null argument")) return rc;
  return wrap([&] { *out = new vpc_program{parse_source(text)}; });
}

void vpc_program_free(vpc_program* p) { delete p; }

int vpc_program_show(const vpc_program* p, char** out) {
  if (int rc = require(p && out, "null argument")) return rc;
  return wrap([&] { *out = dup_str(show(p->p)); });
}

int vpc_program_dialect(const vpc_program* p) {
  if (!p) {
    g_err = "null argument";
    return -1;
  }
  return p->p.dialect == Dialect::P ? 1 : 0;
}

int vpc_program_encode(const vpc_program* p, char** out_code) {
  if (int rc = require(p && out_code, "null argument")) return rc;
  return wrap([&] { *out_code = dup_str(nat_str(encode_program(desugar(p->p)))); });
}

int vpc_encode_term_code(const vpc_program* p, char** out_code) {
  if (int rc = require(p && out_code, "null argument")) return rc;
  return wrap([&] {
    ProcPtr t = desugar(p->p.main);
    *out_code = dup_str(nat_str(encode_term(t, p->p.dialect)));
  });
}

int vpc_program_check(const vpc_program* p, const char* sig, char** out_violation) {
  if (int rc = require(p && sig && out_violation, "null argument")) return rc;
  return wrap([&] {
    TypeSig ts = TypeSig::parse(sig);
    auto v = check_program(desugar(p->p), ts);
    *out_violation = v ? dup_str(v->str()) : nullptr;
  });
}

int vpc_decode_program(const char* code, vpc_program** out) {
  if (int rc = require(code && out, "null argument")) return rc;
  return wrap([&] { *out = new vpc_program{decode_program(parse_nat(code))}; });
}

int vpc_decode_term(const char* code, int bang, vpc_program** out) {
  if (int rc = require(code && out, "null argument")) return rc;
  return wrap([&] {
    Program p;
    p.dialect = bang ? Dialect::Bang : Dialect::P;
    p.main = decode_term(parse_nat(code), p.dialect);
    *out = new vpc_program{std::move(p)};
  });
}

int vpc_normalize_code(const char* code, const char* sig, int bang, int whole_program,
                       char** out) {
  if (int rc = require(code && sig && out, "null argument")) return rc;
  return wrap([&] {
    TypeSig ts = TypeSig::parse(sig);
    Nat z = parse_nat(code);
    if (whole_program && bang)
      fail(ErrCode::Dialect, "program codes exist in the definition dialect only");
    Nat r = whole_program ? normalize_program_code(z, ts)
                          : normalize(z, ts, bang ? Dialect::Bang : Dialect::P);
    *out = dup_str(nat_str(r));
  });
}

int vpc_parse_index(const char* code, const char* sig, int bang, int whole_program,
                    char** out) {
  if (int rc = require(code && sig && out, "null argument")) return rc;
  return wrap([&] {
    TypeSig ts = TypeSig::parse(sig);
    Nat z = parse_nat(code);
    if (whole_program && bang)
      fail(ErrCode::Dialect, "program codes exist in the definition dialect only");
    Nat r = whole_program ? parse_program_index(z, ts)
                          : ::vpc::parse_index(z, ts, bang ? Dialect::Bang : Dialect::P);
    *out = dup_str(nat_str(r));
  });
}

/* -- machines -------------------------------------------------------------- */

int vpc_machine_direct(const vpc_program* p, unsigned long vbound, unsigned long fuel,
                       vpc_machine** out) {
  if (int rc = require(p && out, "null argument")) return rc;
  return wrap([&] {
    auto* m = new vpc_machine;
    m->direct = true;
    m->ds = make_state(p->p);
    m->vbound = vbound;
    m->fuel = fuel;
    *out = m;
  });
}

int vpc_machine_universal(const char* program_code, const char* sig, unsigned long vbound,
                          vpc_machine** out) {
  if (int rc = require(program_code && sig && out, "null argument")) return rc;
  return wrap([&] {
    Universal u = boot_universal(parse_nat(program_code), TypeSig::parse(sig));
    auto* m = new vpc_machine;
    m->direct = false;
    m->eng = std::make_shared<Engine>(u.eng);
    m->cfg = u.root;
    m->vbound = vbound;
    *out = m;
  });
}

int vpc_machine_interpreter(const char* term_code, const char* sig, unsigned long vbound,
                            vpc_machine** out) {
  if (int rc = require(term_code && sig && out, "null argument")) return rc;
  return wrap([&] {
    Universal u = boot_interpreter(parse_nat(term_code), TypeSig::parse(sig));
    auto* m = new vpc_machine;
    m->direct = false;
    m->eng = std::make_shared<Engine>(u.eng);
    m->cfg = u.root;
    m->vbound = vbound;
    *out = m;
  });
}

void vpc_machine_free(vpc_machine* m) { delete m; }

int vpc_machine_state(const vpc_machine* m, char** out) {
  if (int rc = require(m && out, "null argument")) return rc;
  return wrap([&] { *out = dup_str(m->direct ? show(m->ds.term) : config_str(m->cfg)); });
}

int vpc_machine_step_count(vpc_machine* m, int* out) {
  if (int rc = require(m && out, "null argument")) return rc;
  return wrap([&] {
    ensure_steps(m);
    *out = static_cast<int>(m->acts.size());
  });
}

int vpc_machine_step_label(vpc_machine* m, int i, char** out) {
  if (int rc = require(m && out, "null argument")) return rc;
  return wrap([&] {
    ensure_steps(m);
    if (i < 0 || static_cast<std::size_t>(i) >= m->acts.size())
      fail(ErrCode::BadArgument, "step index out of range");
    *out = dup_str(m->acts[static_cast<std::size_t>(i)].str());
  });
}

int vpc_machine_step_defcall(vpc_machine* m, int i) {
  if (!m) {
    g_err = "null argument";
    return -1;
  }
  int r = -1;
  int rc = wrap([&] {
    ensure_steps(m);
    if (i < 0 || static_cast<std::size_t>(i) >= m->acts.size())
      fail(ErrCode::BadArgument, "step index out of range");
    r = m->acts[static_cast<std::size_t>(i)].defcall ? 1 : 0;
  });
  return rc == VPC_OK ? r : -1;
}

int vpc_machine_step_inert(vpc_machine* m, int i, unsigned long depth) {
  if (!m) {
    g_err = "null argument";
    return -1;
  }
  int r = -1;
  int rc = wrap([&] {
    ensure_steps(m);
    if (i < 0 || static_cast<std::size_t>(i) >= m->acts.size())
      fail(ErrCode::BadArgument, "step index out of range");
    if (m->acts[static_cast<std::size_t>(i)].k != Action::K::Tau) {
      r = 0;
      return;
    }
    r = stratified_equiv(subject_at(m, -1), subject_at(m, i), depth, m->vbound) ? 1 : 0;
  });
  return rc == VPC_OK ? r : -1;
}

int vpc_machine_take(vpc_machine* m, int i) {
  if (int rc = require(m != nullptr, "null argument")) return rc;
  return wrap([&] {
    ensure_steps(m);
    if (i < 0 || static_cast<std::size_t>(i) >= m->acts.size())
      fail(ErrCode::BadArgument, "step index out of range");
    if (m->direct)
      m->ds = m->dnext[static_cast<std::size_t>(i)];
    else
      m->cfg = m->cnext[static_cast<std::size_t>(i)];
    m->steps_ready = false;
  });
}

/* -- graphs ---------------------------------------------------------------- */

int vpc_graph_direct(const vpc_program* p, unsigned long vbound, unsigned long state_cap,
                     unsigned long depth_cap, unsigned long fuel, vpc_graph** out) {
  if (int rc = require(p && out, "null argument")) return rc;
  return wrap([&] {
    ExploreOpts o;
    o.vbound = vbound;
    o.state_cap = state_cap;
    o.depth_cap = depth_cap;
    *out = new vpc_graph{explore(Subject::direct(make_state(p->p), fuel), o)};
  });
}

int vpc_graph_universal(const char* program_code, const char* sig, unsigned long vbound,
                        unsigned long state_cap, unsigned long depth_cap, vpc_graph** out) {
  if (int rc = require(program_code && sig && out, "null argument")) return rc;
  return wrap([&] {
    Universal u = boot_universal(parse_nat(program_code), TypeSig::parse(sig));
    *out = new vpc_graph{explore_universal(u, vbound, state_cap, depth_cap)};
  });
}

int vpc_graph_interpreter(const char* term_code, const char* sig, unsigned long vbound,
                          unsigned long state_cap, unsigned long depth_cap, vpc_graph** out) {
  if (int rc = require(term_code && sig && out, "null argument")) return rc;
  return wrap([&] {
    Universal u = boot_interpreter(parse_nat(term_code), TypeSig::parse(sig));
    *out = new vpc_graph{explore_universal(u, vbound, state_cap, depth_cap)};
  });
}

void vpc_graph_free(vpc_graph* g) { delete g; }

int vpc_graph_states(const vpc_graph* g) {
  if (!g) {
    g_err = "null argument";
    return -1;
  }
  return static_cast<int>(g->g.keys.size());
}

int vpc_graph_edges(const vpc_graph* g) {
  if (!g) {
    g_err = "null argument";
    return -1;
  }
  return static_cast<int>(g->g.num_edges());
}

int vpc_graph_truncated(const vpc_graph* g) {
  if (!g) {
    g_err = "null argument";
    return -1;
  }
  return g->g.any_truncated() ? 1 : 0;
}

int vpc_graph_observable(const vpc_graph* g) {
  if (!g) {
    g_err = "null argument";
    return -1;
  }
  int r = -1;
  int rc = wrap([&] { r = observable(g->g) ? 1 : 0; });
  return rc == VPC_OK ? r : -1;
}

int vpc_graph_dump(const vpc_graph* g, char** out) {
  if (int rc = require(g && out, "null argument")) return rc;
  return wrap([&] { *out = dup_str(g->g.dump()); });
}

int vpc_bb_equiv(const vpc_graph* a, const vpc_graph* b, int* out_equivalent,
                 char** out_witness) {
  if (int rc = require(a && b && out_equivalent, "null argument")) return rc;
  return wrap([&] {
    Verdict v = bb_div_equiv(a->g, b->g);
    *out_equivalent = v.equivalent ? 1 : 0;
    if (out_witness) *out_witness = v.witness.empty() ? nullptr : dup_str(v.witness);
  });
}

int vpc_stratified(const vpc_program* a, const vpc_program* b, unsigned long depth,
                   unsigned long vbound, int* out_equivalent) {
  if (int rc = require(a && b && out_equivalent, "null argument")) return rc;
  return wrap([&] {
    Subject sa = Subject::direct(make_state(a->p));
    Subject sb = Subject::direct(make_state(b->p));
    *out_equivalent = stratified_equiv(sa, sb, depth, vbound) ? 1 : 0;
  });
}

/* -- definition indices ------------------------------------------------------ */

int vpc_encode_def_index(const vpc_program* system, unsigned long target, const char* sig,
                         char** out_code) {
  if (int rc = require(system && sig && out_code, "null argument")) return rc;
  return wrap([&] {
    Program p = desugar(system->p);
    if (p.dialect != Dialect::P)
      fail(ErrCode::Dialect, "definition indices need the definition dialect");
    *out_code = dup_str(nat_str(encode_def(p.defs, target, TypeSig::parse(sig))));
  });
}

int vpc_smn(const char* def_code, const char* fixed_csv, char** out_code) {
  if (int rc = require(def_code && out_code, "null argument")) return rc;
  return wrap([&] {
    Nat z = parse_nat(def_code);
    std::vector<Nat> vals = parse_csv(fixed_csv);
    DefSystem sys = decode_def(z);
    if (sys.target < 1 || sys.target > sys.defs.size())
      fail(ErrCode::BadArgument, "definition index out of range");
    std::size_t arity = sys.defs[sys.target - 1].params.size();
    if (vals.size() > arity)
      fail(ErrCode::BadArgument, "more fixed values than parameters");
    *out_code = dup_str(nat_str(smn(z, vals.size(), arity - vals.size(), vals)));
  });
}

int vpc_universal_def_graph(const char* def_code, const char* args_csv, const char* sig,
                            unsigned long vbound, unsigned long state_cap,
                            unsigned long depth_cap, vpc_graph** out) {
  if (int rc = require(def_code && sig && out, "null argument")) return rc;
  return wrap([&] {
    Universal u =
        universal_def(parse_nat(def_code), parse_csv(args_csv), TypeSig::parse(sig));
    *out = new vpc_graph{explore_universal(u, vbound, state_cap, depth_cap)};
  });
}

/* -- higher-order ------------------------------------------------------------ */

int vpc_ho_translate(const char* text, char** out_term) {
  if (int rc = require(text && out_term, "null argument")) return rc;
  return wrap([&] { *out_term = dup_str(show(translate(parse_ho_source(text)))); });
}

}  // extern "C"
