#include "checker.hpp"

#include "error.hpp"
#include "godel.hpp"

#include <map>

namespace vpc {

std::string Violation::str() const {
  const char* k = "?";
  switch (kind) {
    case ViolationKind::FreeVariable: k = "free variable"; break;
    case ViolationKind::GlobalBudget: k = "name outside signature globals"; break;
    case ViolationKind::LocalBudget: k = "local name budget exceeded"; break;
    case ViolationKind::OpenFormula: k = "open formula"; break;
    case ViolationKind::DialectMismatch: k = "dialect mismatch"; break;
  }
  return std::string(k) + " at " + (path.empty() ? "/" : path);
}

namespace {

struct Checker {
  const TypeSig& sig;
  Dialect d;
  std::set<Nat> res_seen;  // distinct restricted identities, program-wide
  std::optional<Violation> bad;
  std::vector<std::string> path;

  void report(ViolationKind k) {
    if (bad) return;
    std::string p;
    for (auto& seg : path) {
      p += '/';
      p += seg;
    }
    bad = Violation{k, p};
  }

  struct Seg {
    Checker& c;
    Seg(Checker& c_, std::string s) : c(c_) { c.path.push_back(std::move(s)); }
    ~Seg() { c.path.pop_back(); }
  };

  void name(const Name& nm, const std::set<Nat>& scope) {
    if (bad) return;
    if (scope.count(nm.idx)) return;
    if (!sig.global_pos(nm.idx)) report(ViolationKind::GlobalBudget);
  }

  void value(const ValuePtr& v, const std::set<Nat>& bound, bool in_formula) {
    if (bad) return;
    switch (v->k) {
      case ValueTerm::K::Num: return;
      case ValueTerm::K::Var:
        if (!bound.count(v->var))
          report(in_formula ? ViolationKind::OpenFormula : ViolationKind::FreeVariable);
        return;
      case ValueTerm::K::Add:
        value(v->lhs, bound, in_formula);
        value(v->rhs, bound, in_formula);
        return;
      case ValueTerm::K::Retarget: report(ViolationKind::DialectMismatch); return;
    }
  }

  void formula(const FormulaPtr& f, std::set<Nat> bound) {
    if (bad) return;
    switch (f->k) {
      case Formula::K::False:
      case Formula::K::True: return;
      case Formula::K::And:
      case Formula::K::Or:
      case Formula::K::Implies:
        formula(f->f, bound);
        formula(f->g, std::move(bound));
        return;
      case Formula::K::Exists:
      case Formula::K::Forall:
        bound.insert(f->var);
        formula(f->f, std::move(bound));
        return;
      case Formula::K::Lt:
      case Formula::K::Eq:
        value(f->s, bound, true);
        value(f->t, bound, true);
        return;
    }
  }

  void term(const ProcPtr& t, std::set<Nat> bound, std::set<Nat> scope) {
    if (bad) return;
    switch (t->k) {
      case ProcTerm::K::Nil: return;
      case ProcTerm::K::In:
      case ProcTerm::K::RepIn: {
        if (t->k == ProcTerm::K::RepIn && d == Dialect::P) {
          report(ViolationKind::DialectMismatch);
          return;
        }
        name(t->chan, scope);
        bound.insert(t->var);
        Seg s(*this, "body");
        term(t->a, std::move(bound), std::move(scope));
        return;
      }
      case ProcTerm::K::Out:
      case ProcTerm::K::RepOut: {
        if (t->k == ProcTerm::K::RepOut && d == Dialect::P) {
          report(ViolationKind::DialectMismatch);
          return;
        }
        name(t->chan, scope);
        value(t->val, bound, false);
        Seg s(*this, "body");
        term(t->a, std::move(bound), std::move(scope));
        return;
      }
      case ProcTerm::K::Par: {
        {
          Seg s(*this, "par.L");
          term(t->a, bound, scope);
        }
        Seg s(*this, "par.R");
        term(t->b, std::move(bound), std::move(scope));
        return;
      }
      case ProcTerm::K::Res: {
        if (res_seen.insert(t->chan.idx).second && res_seen.size() > sig.local_budget) {
          report(ViolationKind::LocalBudget);
          return;
        }
        scope.insert(t->chan.idx);
        Seg s(*this, "res");
        term(t->a, std::move(bound), std::move(scope));
        return;
      }
      case ProcTerm::K::Cond: {
        formula(t->guard, bound);
        Seg s(*this, "then");
        term(t->a, std::move(bound), std::move(scope));
        return;
      }
      case ProcTerm::K::Call: {
        if (d == Dialect::Bang) {
          report(ViolationKind::DialectMismatch);
          return;
        }
        for (std::size_t i = 0; i < t->args.size(); ++i) {
          Seg s(*this, "arg" + std::to_string(i + 1));
          value(t->args[i], bound, false);
        }
        return;
      }
      case ProcTerm::K::Boot: report(ViolationKind::DialectMismatch); return;
      case ProcTerm::K::IfElse: {
        formula(t->guard, bound);
        {
          Seg s(*this, "then");
          term(t->a, bound, scope);
        }
        Seg s(*this, "else");
        term(t->b, std::move(bound), std::move(scope));
        return;
      }
      case ProcTerm::K::Case: {
        if (!bound.count(t->var)) report(ViolationKind::OpenFormula);
        for (std::size_t i = 0; i < t->clauses.size(); ++i) {
          Seg s(*this, "clause" + std::to_string(i + 1));
          formula(t->clauses[i].guard, bound);
          term(t->clauses[i].body, bound, scope);
        }
        return;
      }
      case ProcTerm::K::Let: {
        value(t->val, bound, false);
        bound.insert(t->var);
        Seg s(*this, "body");
        term(t->a, std::move(bound), std::move(scope));
        return;
      }
    }
  }
};

}  // namespace

std::optional<Violation> check_term(const ProcPtr& t, const TypeSig& sig, Dialect d,
                                    const std::vector<Nat>& bound) {
  Checker c{sig, d};
  c.term(t, std::set<Nat>(bound.begin(), bound.end()), {});
  return c.bad;
}

std::optional<Violation> check_program(const Program& p, const TypeSig& sig) {
  Checker c{sig, p.dialect};
  if (p.dialect == Dialect::Bang && !p.defs.empty()) {
    c.bad = Violation{ViolationKind::DialectMismatch, "/defs"};
    return c.bad;
  }
  {
    Checker::Seg s(c, "main");
    c.term(p.main, {}, {});
  }
  for (std::size_t i = 0; i < p.defs.size() && !c.bad; ++i) {
    Checker::Seg s(c, "def" + std::to_string(i + 1));
    c.term(p.defs[i].body, std::set<Nat>(p.defs[i].params.begin(), p.defs[i].params.end()), {});
  }
  return c.bad;
}

std::optional<Violation> grammar_check(const Nat& z, const TypeSig& sig, Dialect d) {
  return check_term(decode_term(z, d), sig, d);
}

std::optional<Violation> grammar_check_program(const Nat& z, const TypeSig& sig) {
  return check_program(decode_program(z), sig);
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

struct Slots {
  const TypeSig& sig;
  std::map<Nat, Nat> slot;  // restricted identity -> canonical index
  Nat next;

  explicit Slots(const TypeSig& s) : sig(s), next(Nat(s.globals.size()) + 1) {}

  // pass A: first-binder-occurrence order, leftmost-outermost
  void assign(const ProcPtr& t) {
    switch (t->k) {
      case ProcTerm::K::Nil:
      case ProcTerm::K::Call:
      case ProcTerm::K::Boot: return;
      case ProcTerm::K::In:
      case ProcTerm::K::RepIn:
      case ProcTerm::K::Out:
      case ProcTerm::K::RepOut:
      case ProcTerm::K::Cond:
      case ProcTerm::K::Let: assign(t->a); return;
      case ProcTerm::K::Par:
      case ProcTerm::K::IfElse:
        assign(t->a);
        assign(t->b);
        return;
      case ProcTerm::K::Res:
        if (!slot.count(t->chan.idx)) {
          slot.emplace(t->chan.idx, next);
          ++next;
        }
        assign(t->a);
        return;
      case ProcTerm::K::Case:
        for (auto& cl : t->clauses) assign(cl.body);
        return;
    }
  }

  Name rename(const Name& nm, const std::set<Nat>& scope) const {
    if (scope.count(nm.idx)) return Name{slot.at(nm.idx)};
    auto pos = sig.global_pos(nm.idx);
    if (!pos) fail(ErrCode::Internal, "unchecked free name in normalization");
    return Name{Nat(*pos)};
  }

  // pass B
  ProcPtr rewrite(const ProcPtr& t, std::set<Nat> scope) const {
    switch (t->k) {
      case ProcTerm::K::Nil:
      case ProcTerm::K::Call: return t;
      case ProcTerm::K::In: {
        Name ch = rename(t->chan, scope);
        return pin(ch, t->var, rewrite(t->a, std::move(scope)));
      }
      case ProcTerm::K::RepIn: {
        Name ch = rename(t->chan, scope);
        return prepin(ch, t->var, rewrite(t->a, std::move(scope)));
      }
      case ProcTerm::K::Out: {
        Name ch = rename(t->chan, scope);
        return pout(ch, t->val, rewrite(t->a, std::move(scope)));
      }
      case ProcTerm::K::RepOut: {
        Name ch = rename(t->chan, scope);
        return prepout(ch, t->val, rewrite(t->a, std::move(scope)));
      }
      case ProcTerm::K::Par: {
        ProcPtr l = rewrite(t->a, scope);
        return ppar(std::move(l), rewrite(t->b, std::move(scope)));
      }
      case ProcTerm::K::Res: {
        Name binder{slot.at(t->chan.idx)};
        scope.insert(t->chan.idx);
        return pres(binder, rewrite(t->a, std::move(scope)));
      }
      case ProcTerm::K::Cond: return pcond(t->guard, rewrite(t->a, std::move(scope)));
      case ProcTerm::K::Boot: fail(ErrCode::Internal, "runtime constructor in normalization");
      case ProcTerm::K::IfElse: {
        ProcPtr th = rewrite(t->a, scope);
        return pifelse(t->guard, std::move(th), rewrite(t->b, std::move(scope)));
      }
      case ProcTerm::K::Case: {
        std::vector<CaseClause> cls;
        for (auto& cl : t->clauses) cls.push_back({cl.guard, rewrite(cl.body, scope)});
        return pcase(t->var, std::move(cls));
      }
      case ProcTerm::K::Let: return plet(t->var, t->val, rewrite(t->a, std::move(scope)));
    }
    fail(ErrCode::Internal, "bad process term");
  }
};

[[noreturn]] void reject(const Violation& v) {
  fail(ErrCode::IllTyped, "ill-typed index: " + v.str());
}

}  // namespace

ProcPtr normalize_term(const ProcPtr& t, const TypeSig& sig, Dialect d,
                       const std::vector<Nat>& bound) {
  if (auto v = check_term(t, sig, d, bound)) reject(*v);
  Slots s(sig);
  s.assign(t);
  return s.rewrite(t, {});
}

Program normalize_program(const Program& p, const TypeSig& sig) {
  if (auto v = check_program(p, sig)) reject(*v);
  Slots s(sig);
  s.assign(p.main);
  for (auto& d : p.defs) s.assign(d.body);
  Program out = p;
  out.main = s.rewrite(p.main, {});
  for (auto& d : out.defs) d.body = s.rewrite(d.body, {});
  return out;
}

Nat normalize(const Nat& z, const TypeSig& sig, Dialect d) {
  return encode_term(normalize_term(decode_term(z, d), sig, d), d);
}

Nat normalize_program_code(const Nat& z, const TypeSig& sig) {
  return encode_program(normalize_program(decode_program(z), sig));
}

Nat parse_index(const Nat& z, const TypeSig& sig, Dialect d) {
  try {
    ProcPtr t = decode_term(z, d);
    if (check_term(t, sig, d)) return Nat(0);
    Slots s(sig);
    s.assign(t);
    return encode_term(s.rewrite(t, {}), d);
  } catch (const Error&) {
    return Nat(0);
  }
}

ParsedProgram parse_program(const Nat& z, const TypeSig& sig) {
  ParsedProgram out;
  out.code = 0;
  out.prog.dialect = Dialect::P;
  out.prog.main = pnil();
  try {
    Program p = decode_program(z);
    if (check_program(p, sig)) return out;
    Slots s(sig);
    s.assign(p.main);
    for (auto& d : p.defs) s.assign(d.body);
    Program np = p;
    np.main = s.rewrite(p.main, {});
    for (auto& d : np.defs) d.body = s.rewrite(d.body, {});
    out.prog = std::move(np);
    out.code = encode_program(out.prog);
    out.ok = true;
  } catch (const Error&) {
    out = ParsedProgram{};
    out.code = 0;
    out.prog.dialect = Dialect::P;
    out.prog.main = pnil();
  }
  return out;
}

Nat parse_program_index(const Nat& z, const TypeSig& sig) { return parse_program(z, sig).code; }

}  // namespace vpc
