#include "ast.hpp"

#include "error.hpp"

#include <sstream>

namespace vpc {

std::optional<std::size_t> TypeSig::global_pos(const Nat& idx) const {
  for (std::size_t m = 0; m < globals.size(); ++m)
    if (globals[m].idx == idx) return m + 1;
  return std::nullopt;
}

std::string TypeSig::str() const {
  std::string out = "i=" + std::to_string(local_budget) + ";g=";
  for (std::size_t m = 0; m < globals.size(); ++m) {
    if (m) out += ",";
    out += globals[m].str();
  }
  return out;
}

TypeSig TypeSig::parse(const std::string& txt) {
  // "i=<n>;g=n1,n2" — g part may be empty.
  TypeSig sig;
  auto semi = txt.find(';');
  if (txt.rfind("i=", 0) != 0 || semi == std::string::npos || txt.find("g=", semi) != semi + 1)
    fail(ErrCode::BadArgument, "signature must look like i=<n>;g=n1,n2 — got \"" + txt + "\"");
  sig.local_budget = std::stoull(txt.substr(2, semi - 2));
  std::string gs = txt.substr(semi + 3);
  std::size_t pos = 0;
  while (pos < gs.size()) {
    auto comma = gs.find(',', pos);
    std::string tok = gs.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty() || tok[0] != 'n' || tok.find_first_not_of("0123456789", 1) != std::string::npos)
      fail(ErrCode::BadArgument, "bad name \"" + tok + "\" in signature");
    Name nm{Nat(tok.substr(1))};
    for (auto& g : sig.globals)
      if (g == nm) fail(ErrCode::BadArgument, "duplicate global " + nm.str() + " in signature");
    sig.globals.push_back(nm);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return sig;
}

// ---------------------------------------------------------------------------
// Builders

ValuePtr vnum(Nat n) {
  auto v = std::make_shared<ValueTerm>();
  v->k = ValueTerm::K::Num;
  v->num = std::move(n);
  return v;
}

ValuePtr vvar(Nat x) {
  auto v = std::make_shared<ValueTerm>();
  v->k = ValueTerm::K::Var;
  v->var = std::move(x);
  return v;
}

ValuePtr vadd(ValuePtr a, ValuePtr b) {
  auto v = std::make_shared<ValueTerm>();
  v->k = ValueTerm::K::Add;
  v->lhs = std::move(a);
  v->rhs = std::move(b);
  return v;
}

ValuePtr vretarget(ValuePtr inner, std::vector<Name> names) {
  auto v = std::make_shared<ValueTerm>();
  v->k = ValueTerm::K::Retarget;
  v->lhs = std::move(inner);
  v->retarget_names = std::move(names);
  return v;
}

static FormulaPtr mkf(Formula::K k) {
  auto f = std::make_shared<Formula>();
  f->k = k;
  return f;
}

FormulaPtr ffalse() { return mkf(Formula::K::False); }
FormulaPtr ftrue() { return mkf(Formula::K::True); }

static FormulaPtr fbin(Formula::K k, FormulaPtr a, FormulaPtr b) {
  auto f = mkf(k);
  auto* m = const_cast<Formula*>(f.get());
  m->f = std::move(a);
  m->g = std::move(b);
  return f;
}

FormulaPtr fand(FormulaPtr a, FormulaPtr b) { return fbin(Formula::K::And, std::move(a), std::move(b)); }
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return fbin(Formula::K::Or, std::move(a), std::move(b)); }
FormulaPtr fimplies(FormulaPtr a, FormulaPtr b) { return fbin(Formula::K::Implies, std::move(a), std::move(b)); }
FormulaPtr fnot(FormulaPtr a) { return fimplies(std::move(a), ffalse()); }

static FormulaPtr fquant(Formula::K k, Nat v, FormulaPtr body) {
  auto f = mkf(k);
  auto* m = const_cast<Formula*>(f.get());
  m->var = std::move(v);
  m->f = std::move(body);
  return f;
}

FormulaPtr fexists(Nat v, FormulaPtr body) { return fquant(Formula::K::Exists, std::move(v), std::move(body)); }
FormulaPtr fforall(Nat v, FormulaPtr body) { return fquant(Formula::K::Forall, std::move(v), std::move(body)); }

static FormulaPtr fcmp(Formula::K k, ValuePtr s, ValuePtr t) {
  auto f = mkf(k);
  auto* m = const_cast<Formula*>(f.get());
  m->s = std::move(s);
  m->t = std::move(t);
  return f;
}

FormulaPtr flt(ValuePtr s, ValuePtr t) { return fcmp(Formula::K::Lt, std::move(s), std::move(t)); }
FormulaPtr feq(ValuePtr s, ValuePtr t) { return fcmp(Formula::K::Eq, std::move(s), std::move(t)); }

static std::shared_ptr<ProcTerm> mkp(ProcTerm::K k) {
  auto p = std::make_shared<ProcTerm>();
  p->k = k;
  return p;
}

ProcPtr pnil() {
  static ProcPtr nil = mkp(ProcTerm::K::Nil);
  return nil;
}

ProcPtr pin(Name a, Nat x, ProcPtr cont) {
  auto p = mkp(ProcTerm::K::In);
  p->chan = std::move(a);
  p->var = std::move(x);
  p->a = std::move(cont);
  return p;
}

ProcPtr pout(Name a, ValuePtr t, ProcPtr cont) {
  auto p = mkp(ProcTerm::K::Out);
  p->chan = std::move(a);
  p->val = std::move(t);
  p->a = std::move(cont);
  return p;
}

ProcPtr ppar(ProcPtr l, ProcPtr r) {
  auto p = mkp(ProcTerm::K::Par);
  p->a = std::move(l);
  p->b = std::move(r);
  return p;
}

ProcPtr pres(Name c, ProcPtr body) {
  auto p = mkp(ProcTerm::K::Res);
  p->chan = std::move(c);
  p->a = std::move(body);
  return p;
}

ProcPtr pcond(FormulaPtr guard, ProcPtr body) {
  auto p = mkp(ProcTerm::K::Cond);
  p->guard = std::move(guard);
  p->a = std::move(body);
  return p;
}

ProcPtr pcall(Nat def_pos, std::vector<ValuePtr> args) {
  auto p = mkp(ProcTerm::K::Call);
  p->def_pos = std::move(def_pos);
  p->args = std::move(args);
  return p;
}

ProcPtr prepin(Name a, Nat x, ProcPtr cont) {
  auto p = mkp(ProcTerm::K::RepIn);
  p->chan = std::move(a);
  p->var = std::move(x);
  p->a = std::move(cont);
  return p;
}

ProcPtr prepout(Name a, ValuePtr t, ProcPtr cont) {
  auto p = mkp(ProcTerm::K::RepOut);
  p->chan = std::move(a);
  p->val = std::move(t);
  p->a = std::move(cont);
  return p;
}

ProcPtr pboot(Name chan, TypeSig sig) {
  auto p = mkp(ProcTerm::K::Boot);
  p->chan = std::move(chan);
  p->boot_sig = std::move(sig);
  return p;
}

ProcPtr pifelse(FormulaPtr guard, ProcPtr then_t, ProcPtr else_t) {
  auto p = mkp(ProcTerm::K::IfElse);
  p->guard = std::move(guard);
  p->a = std::move(then_t);
  p->b = std::move(else_t);
  return p;
}

ProcPtr pcase(Nat scrutinee_var, std::vector<CaseClause> clauses) {
  auto p = mkp(ProcTerm::K::Case);
  p->var = std::move(scrutinee_var);
  p->clauses = std::move(clauses);
  return p;
}

ProcPtr plet(Nat v, ValuePtr t, ProcPtr body) {
  auto p = mkp(ProcTerm::K::Let);
  p->var = std::move(v);
  p->val = std::move(t);
  p->a = std::move(body);
  return p;
}

// ---------------------------------------------------------------------------
// Canonical serialization; doubles as the equality witness.

void key_append(std::string& out, const ValuePtr& v) {
  switch (v->k) {
    case ValueTerm::K::Num: out += "N" + nat_str(v->num); break;
    case ValueTerm::K::Var: out += "V" + nat_str(v->var); break;
    case ValueTerm::K::Add:
      out += "A(";
      key_append(out, v->lhs);
      out += ",";
      key_append(out, v->rhs);
      out += ")";
      break;
    case ValueTerm::K::Retarget:
      out += "R(";
      key_append(out, v->lhs);
      for (auto& nm : v->retarget_names) out += "," + nat_str(nm.idx);
      out += ")";
      break;
  }
}

void key_append(std::string& out, const FormulaPtr& f) {
  switch (f->k) {
    case Formula::K::False: out += "ff"; break;
    case Formula::K::True: out += "tt"; break;
    case Formula::K::And:
    case Formula::K::Or:
    case Formula::K::Implies:
      out += f->k == Formula::K::And ? "&(" : f->k == Formula::K::Or ? "|(" : ">(";
      key_append(out, f->f);
      out += ",";
      key_append(out, f->g);
      out += ")";
      break;
    case Formula::K::Exists:
    case Formula::K::Forall:
      out += f->k == Formula::K::Exists ? "E" : "U";
      out += nat_str(f->var) + "(";
      key_append(out, f->f);
      out += ")";
      break;
    case Formula::K::Lt:
    case Formula::K::Eq:
      out += f->k == Formula::K::Lt ? "<(" : "=(";
      key_append(out, f->s);
      out += ",";
      key_append(out, f->t);
      out += ")";
      break;
  }
}

void key_append(std::string& out, const ProcPtr& t) {
  switch (t->k) {
    case ProcTerm::K::Nil: out += "0"; break;
    case ProcTerm::K::In:
    case ProcTerm::K::RepIn:
      out += t->k == ProcTerm::K::In ? "i" : "I";
      out += nat_str(t->chan.idx) + "," + nat_str(t->var) + "(";
      key_append(out, t->a);
      out += ")";
      break;
    case ProcTerm::K::Out:
    case ProcTerm::K::RepOut:
      out += t->k == ProcTerm::K::Out ? "o" : "O";
      out += nat_str(t->chan.idx) + "[";
      key_append(out, t->val);
      out += "](";
      key_append(out, t->a);
      out += ")";
      break;
    case ProcTerm::K::Par:
      out += "p(";
      key_append(out, t->a);
      out += ",";
      key_append(out, t->b);
      out += ")";
      break;
    case ProcTerm::K::Res:
      out += "r" + nat_str(t->chan.idx) + "(";
      key_append(out, t->a);
      out += ")";
      break;
    case ProcTerm::K::Cond:
      out += "c[";
      key_append(out, t->guard);
      out += "](";
      key_append(out, t->a);
      out += ")";
      break;
    case ProcTerm::K::Call:
      out += "d" + nat_str(t->def_pos) + "(";
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) out += ",";
        key_append(out, t->args[i]);
      }
      out += ")";
      break;
    case ProcTerm::K::Boot:
      out += "b" + nat_str(t->chan.idx) + "[" + t->boot_sig.str() + "]";
      break;
    case ProcTerm::K::IfElse:
      out += "e[";
      key_append(out, t->guard);
      out += "](";
      key_append(out, t->a);
      out += ",";
      key_append(out, t->b);
      out += ")";
      break;
    case ProcTerm::K::Case:
      out += "s" + nat_str(t->var) + "(";
      for (auto& cl : t->clauses) {
        key_append(out, cl.guard);
        out += ":";
        key_append(out, cl.body);
        out += ";";
      }
      out += ")";
      break;
    case ProcTerm::K::Let:
      out += "l" + nat_str(t->var) + "[";
      key_append(out, t->val);
      out += "](";
      key_append(out, t->a);
      out += ")";
      break;
  }
}

std::string term_key(const ProcPtr& t) {
  std::string out;
  key_append(out, t);
  return out;
}

bool value_eq(const ValuePtr& a, const ValuePtr& b) {
  if (a == b) return true;
  std::string ka, kb;
  key_append(ka, a);
  key_append(kb, b);
  return ka == kb;
}

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  std::string ka, kb;
  key_append(ka, a);
  key_append(kb, b);
  return ka == kb;
}

bool term_eq(const ProcPtr& a, const ProcPtr& b) {
  if (a == b) return true;
  return term_key(a) == term_key(b);
}

// ---------------------------------------------------------------------------
// Pretty-printer (canonical surface syntax)

namespace {

// Value terms: + is left-associative, no precedence conflicts.
void show_val(std::string& out, const ValuePtr& v) {
  switch (v->k) {
    case ValueTerm::K::Num: out += nat_str(v->num); break;
    case ValueTerm::K::Var: out += "x" + nat_str(v->var); break;
    case ValueTerm::K::Add:
      show_val(out, v->lhs);
      out += "+";
      show_val(out, v->rhs);
      break;
    case ValueTerm::K::Retarget: {
      out += "retarget[";
      for (std::size_t i = 0; i < v->retarget_names.size(); ++i) {
        if (i) out += ",";
        out += v->retarget_names[i].str();
      }
      out += "](";
      show_val(out, v->lhs);
      out += ")";
      break;
    }
  }
}

int fprec(Formula::K k) {
  switch (k) {
    case Formula::K::Implies: return 1;  // right-assoc, loosest
    case Formula::K::Or: return 2;
    case Formula::K::And: return 3;
    default: return 5;
  }
}

void show_formula(std::string& out, const FormulaPtr& f, int parent_prec) {
  // Print Implies(f, ff) back as ~f.
  if (f->k == Formula::K::Implies && f->g->k == Formula::K::False) {
    out += "~";
    show_formula(out, f->f, 4);
    return;
  }
  switch (f->k) {
    case Formula::K::False: out += "ff"; return;
    case Formula::K::True: out += "tt"; return;
    case Formula::K::And:
    case Formula::K::Or:
    case Formula::K::Implies: {
      int p = fprec(f->k);
      bool parens = p < parent_prec || (p == parent_prec && f->k != Formula::K::Implies);
      // left operand at p+1 keeps /\ \/ left-grouping unambiguous
      if (parens) out += "(";
      show_formula(out, f->f, p + 1);
      out += f->k == Formula::K::And ? " /\\ " : f->k == Formula::K::Or ? " \\/ " : " => ";
      show_formula(out, f->g, p);
      if (parens) out += ")";
      return;
    }
    case Formula::K::Exists:
    case Formula::K::Forall:
      if (parent_prec > 1) out += "(";
      out += f->k == Formula::K::Exists ? "exists x" : "forall x";
      out += nat_str(f->var) + ". ";
      show_formula(out, f->f, 1);
      if (parent_prec > 1) out += ")";
      return;
    case Formula::K::Lt:
    case Formula::K::Eq:
      show_val(out, f->s);
      out += f->k == Formula::K::Lt ? " < " : " = ";
      show_val(out, f->t);
      return;
  }
}

std::string def_display(const Program* prog, const Nat& pos) {
  if (prog && pos >= 1 && pos <= prog->defs.size()) {
    const auto& d = prog->defs[nat_to_size(pos - 1)].display;
    if (!d.empty()) return d;
  }
  return "D" + nat_str(pos);
}

// Terms. Par binds loosest; everything else is prefix-like and self-delimiting
// to the right except that Par bodies need parentheses.
void show_term(std::string& out, const ProcPtr& t, const Program* prog, bool par_ctx) {
  auto child = [&](const ProcPtr& c) {
    // prefix continuations / unary bodies: parenthesize Par and the dangling-
    // else-prone sugar forms
    bool parens = c->k == ProcTerm::K::Par;
    if (parens) out += "(";
    show_term(out, c, prog, false);
    if (parens) out += ")";
  };
  switch (t->k) {
    case ProcTerm::K::Nil: out += "0"; return;
    case ProcTerm::K::In:
    case ProcTerm::K::RepIn:
      if (t->k == ProcTerm::K::RepIn) out += "!";
      out += t->chan.str() + "(x" + nat_str(t->var) + ").";
      child(t->a);
      return;
    case ProcTerm::K::Out:
    case ProcTerm::K::RepOut:
      if (t->k == ProcTerm::K::RepOut) out += "!";
      out += "'" + t->chan.str() + "(";
      show_val(out, t->val);
      out += ").";
      child(t->a);
      return;
    case ProcTerm::K::Par: {
      if (par_ctx) out += "(";
      show_term(out, t->a, prog, true);
      out += " | ";
      show_term(out, t->b, prog, true);
      if (par_ctx) out += ")";
      return;
    }
    case ProcTerm::K::Res:
      out += "(" + t->chan.str() + ")";
      child(t->a);
      return;
    case ProcTerm::K::Cond:
      out += "if ";
      show_formula(out, t->guard, 0);
      out += " then ";
      child(t->a);
      return;
    case ProcTerm::K::Call: {
      out += def_display(prog, t->def_pos) + "(";
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) out += ",";
        show_val(out, t->args[i]);
      }
      out += ")";
      return;
    }
    case ProcTerm::K::Boot:
      out += "boot[" + t->chan.str() + ";" + t->boot_sig.str() + "]";
      return;
    case ProcTerm::K::IfElse:
      out += "if ";
      show_formula(out, t->guard, 0);
      out += " then ";
      child(t->a);
      out += " else ";
      child(t->b);
      return;
    case ProcTerm::K::Case: {
      out += "case x" + nat_str(t->var) + " of ";
      for (auto& cl : t->clauses) {
        show_formula(out, cl.guard, 0);
        out += " => ";
        child(cl.body);
        out += "; ";
      }
      out += "end";
      return;
    }
    case ProcTerm::K::Let:
      out += "let x" + nat_str(t->var) + " = ";
      show_val(out, t->val);
      out += " in ";
      child(t->a);
      return;
  }
}

}  // namespace

std::string show(const ValuePtr& v) {
  std::string out;
  show_val(out, v);
  return out;
}

std::string show(const FormulaPtr& f) {
  std::string out;
  show_formula(out, f, 0);
  return out;
}

std::string show(const ProcPtr& t, const Program* prog) {
  std::string out;
  show_term(out, t, prog, false);
  return out;
}

std::string show(const Program& p) {
  std::string out;
  for (std::size_t i = 0; i < p.defs.size(); ++i) {
    const auto& d = p.defs[i];
    out += "def " + (d.display.empty() ? "D" + std::to_string(i + 1) : d.display) + "(";
    for (std::size_t j = 0; j < d.params.size(); ++j) {
      if (j) out += ",";
      out += "x" + nat_str(d.params[j]);
    }
    out += ") = " + show(d.body, &p) + "\n";
  }
  out += "main = " + show(p.main, &p) + "\n";
  return out;
}

}  // namespace vpc
