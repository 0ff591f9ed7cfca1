#include "syntax_ops.hpp"

#include "error.hpp"

#include <algorithm>

namespace vpc {

// ---------------------------------------------------------------------------
// Free variables

static void fv_val(const ValuePtr& t, std::set<Nat>& out) {
  switch (t->k) {
    case ValueTerm::K::Num: return;
    case ValueTerm::K::Var: out.insert(t->var); return;
    case ValueTerm::K::Add:
      fv_val(t->lhs, out);
      fv_val(t->rhs, out);
      return;
    case ValueTerm::K::Retarget: fv_val(t->lhs, out); return;
  }
}

static void fv_formula(const FormulaPtr& f, std::set<Nat> bound, std::set<Nat>& out) {
  switch (f->k) {
    case Formula::K::False:
    case Formula::K::True: return;
    case Formula::K::And:
    case Formula::K::Or:
    case Formula::K::Implies:
      fv_formula(f->f, bound, out);
      fv_formula(f->g, std::move(bound), out);
      return;
    case Formula::K::Exists:
    case Formula::K::Forall:
      bound.insert(f->var);
      fv_formula(f->f, std::move(bound), out);
      return;
    case Formula::K::Lt:
    case Formula::K::Eq: {
      std::set<Nat> vars;
      fv_val(f->s, vars);
      fv_val(f->t, vars);
      for (auto& v : vars)
        if (!bound.count(v)) out.insert(v);
      return;
    }
  }
}

static void fv_term(const ProcPtr& t, std::set<Nat> bound, std::set<Nat>& out) {
  auto add_val = [&](const ValuePtr& v) {
    std::set<Nat> vars;
    fv_val(v, vars);
    for (auto& x : vars)
      if (!bound.count(x)) out.insert(x);
  };
  switch (t->k) {
    case ProcTerm::K::Nil:
    case ProcTerm::K::Boot: return;
    case ProcTerm::K::In:
    case ProcTerm::K::RepIn: {
      bound.insert(t->var);
      fv_term(t->a, std::move(bound), out);
      return;
    }
    case ProcTerm::K::Out:
    case ProcTerm::K::RepOut:
      add_val(t->val);
      fv_term(t->a, std::move(bound), out);
      return;
    case ProcTerm::K::Par:
      fv_term(t->a, bound, out);
      fv_term(t->b, std::move(bound), out);
      return;
    case ProcTerm::K::Res:
      fv_term(t->a, std::move(bound), out);
      return;
    case ProcTerm::K::Cond: {
      std::set<Nat> fvs;
      fv_formula(t->guard, {}, fvs);
      for (auto& v : fvs)
        if (!bound.count(v)) out.insert(v);
      fv_term(t->a, std::move(bound), out);
      return;
    }
    case ProcTerm::K::Call:
      for (auto& a : t->args) add_val(a);
      return;
    case ProcTerm::K::IfElse: {
      std::set<Nat> fvs;
      fv_formula(t->guard, {}, fvs);
      for (auto& v : fvs)
        if (!bound.count(v)) out.insert(v);
      fv_term(t->a, bound, out);
      fv_term(t->b, std::move(bound), out);
      return;
    }
    case ProcTerm::K::Case: {
      if (!bound.count(t->var)) out.insert(t->var);
      for (auto& cl : t->clauses) {
        std::set<Nat> fvs;
        fv_formula(cl.guard, {}, fvs);
        for (auto& v : fvs)
          if (!bound.count(v)) out.insert(v);
        fv_term(cl.body, bound, out);
      }
      return;
    }
    case ProcTerm::K::Let: {
      add_val(t->val);
      bound.insert(t->var);
      fv_term(t->a, std::move(bound), out);
      return;
    }
  }
}

std::set<Nat> free_vars(const ValuePtr& t) {
  std::set<Nat> out;
  fv_val(t, out);
  return out;
}

std::set<Nat> free_vars(const FormulaPtr& f) {
  std::set<Nat> out;
  fv_formula(f, {}, out);
  return out;
}

std::set<Nat> free_vars(const ProcPtr& t) {
  std::set<Nat> out;
  fv_term(t, {}, out);
  return out;
}

// ---------------------------------------------------------------------------
// analyze

namespace {

struct AnalyzeCtx {
  std::set<Nat> res_bound;             // identities restricted on the current path
  std::set<Nat>* local_idents;         // all identities seen under a Res binder
  std::vector<Name>* globals;          // ordered
  std::set<Nat>* global_seen;
};

void touch_name(const Name& nm, AnalyzeCtx& ctx) {
  if (ctx.res_bound.count(nm.idx)) return;
  if (ctx.global_seen->insert(nm.idx).second) ctx.globals->push_back(nm);
}

void walk_names(const ProcPtr& t, AnalyzeCtx ctx) {
  switch (t->k) {
    case ProcTerm::K::Nil: return;
    case ProcTerm::K::In:
    case ProcTerm::K::RepIn:
      touch_name(t->chan, ctx);
      walk_names(t->a, std::move(ctx));
      return;
    case ProcTerm::K::Out:
    case ProcTerm::K::RepOut: {
      touch_name(t->chan, ctx);
      // retarget payloads mention names
      std::vector<const ValueTerm*> stack{t->val.get()};
      while (!stack.empty()) {
        const ValueTerm* v = stack.back();
        stack.pop_back();
        if (v->k == ValueTerm::K::Retarget) {
          for (auto& nm : v->retarget_names) touch_name(nm, ctx);
          stack.push_back(v->lhs.get());
        } else if (v->k == ValueTerm::K::Add) {
          stack.push_back(v->lhs.get());
          stack.push_back(v->rhs.get());
        }
      }
      walk_names(t->a, std::move(ctx));
      return;
    }
    case ProcTerm::K::Par:
      walk_names(t->a, ctx);
      walk_names(t->b, std::move(ctx));
      return;
    case ProcTerm::K::Res:
      ctx.local_idents->insert(t->chan.idx);
      ctx.res_bound.insert(t->chan.idx);
      walk_names(t->a, std::move(ctx));
      return;
    case ProcTerm::K::Cond:
      walk_names(t->a, std::move(ctx));
      return;
    case ProcTerm::K::Call: return;
    case ProcTerm::K::Boot:
      touch_name(t->chan, ctx);
      for (auto& g : t->boot_sig.globals) touch_name(g, ctx);
      return;
    case ProcTerm::K::IfElse:
      walk_names(t->a, ctx);
      walk_names(t->b, std::move(ctx));
      return;
    case ProcTerm::K::Case:
      for (auto& cl : t->clauses) walk_names(cl.body, ctx);
      return;
    case ProcTerm::K::Let:
      walk_names(t->a, std::move(ctx));
      return;
  }
}

}  // namespace

Analysis analyze(const ProcPtr& t) {
  Analysis out;
  std::set<Nat> local_idents, global_seen;
  AnalyzeCtx ctx{{}, &local_idents, &out.global_names, &global_seen};
  walk_names(t, ctx);
  out.local_name_count = local_idents.size();
  out.free_vars = free_vars(t);
  return out;
}

Analysis analyze_program(const Program& p) {
  Analysis out;
  std::set<Nat> local_idents, global_seen;
  AnalyzeCtx ctx{{}, &local_idents, &out.global_names, &global_seen};
  walk_names(p.main, ctx);
  out.free_vars = free_vars(p.main);
  for (auto& d : p.defs) {
    walk_names(d.body, ctx);
    std::set<Nat> fv = free_vars(d.body);
    for (auto& x : d.params) fv.erase(x);
    out.free_vars.insert(fv.begin(), fv.end());
  }
  out.local_name_count = local_idents.size();
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

ValuePtr subst_value(const ValuePtr& t, const Nat& v, const ValuePtr& s) {
  switch (t->k) {
    case ValueTerm::K::Num: return t;
    case ValueTerm::K::Var: return t->var == v ? s : t;
    case ValueTerm::K::Add: {
      ValuePtr a = subst_value(t->lhs, v, s), b = subst_value(t->rhs, v, s);
      return a == t->lhs && b == t->rhs ? t : vadd(a, b);
    }
    case ValueTerm::K::Retarget: {
      ValuePtr a = subst_value(t->lhs, v, s);
      return a == t->lhs ? t : vretarget(a, t->retarget_names);
    }
  }
  fail(ErrCode::Internal, "bad value term");
}

namespace {

bool value_mentions(const ValuePtr& t, const Nat& v) {
  switch (t->k) {
    case ValueTerm::K::Num: return false;
    case ValueTerm::K::Var: return t->var == v;
    case ValueTerm::K::Add: return value_mentions(t->lhs, v) || value_mentions(t->rhs, v);
    case ValueTerm::K::Retarget: return value_mentions(t->lhs, v);
  }
  return false;
}

[[noreturn]] void capture(const Nat& binder) {
  fail(ErrCode::Capture,
       "substitution would capture x" + nat_str(binder) + " (binders are never renamed)");
}

// binder == v: substitution stops (shadowed). binder free in s: capture iff
// v still occurs free underneath.
template <class Node, class Recurse>
auto under_binder(const Nat& binder, const Node& body, const Nat& v, const ValuePtr& s,
                  const std::set<Nat>& s_fv, Recurse rec) {
  if (binder == v) return body;
  if (s_fv.count(binder) && free_vars(body).count(v)) capture(binder);
  return rec(body);
}

FormulaPtr subst_f(const FormulaPtr& f, const Nat& v, const ValuePtr& s, const std::set<Nat>& s_fv) {
  switch (f->k) {
    case Formula::K::False:
    case Formula::K::True: return f;
    case Formula::K::And: return fand(subst_f(f->f, v, s, s_fv), subst_f(f->g, v, s, s_fv));
    case Formula::K::Or: return f_or(subst_f(f->f, v, s, s_fv), subst_f(f->g, v, s, s_fv));
    case Formula::K::Implies: return fimplies(subst_f(f->f, v, s, s_fv), subst_f(f->g, v, s, s_fv));
    case Formula::K::Exists:
    case Formula::K::Forall: {
      auto body = under_binder(f->var, f->f, v, s, s_fv,
                               [&](const FormulaPtr& b) { return subst_f(b, v, s, s_fv); });
      return f->k == Formula::K::Exists ? fexists(f->var, body) : fforall(f->var, body);
    }
    case Formula::K::Lt: return flt(subst_value(f->s, v, s), subst_value(f->t, v, s));
    case Formula::K::Eq: return feq(subst_value(f->s, v, s), subst_value(f->t, v, s));
  }
  fail(ErrCode::Internal, "bad formula");
}

ProcPtr subst_t(const ProcPtr& t, const Nat& v, const ValuePtr& s, const std::set<Nat>& s_fv) {
  switch (t->k) {
    case ProcTerm::K::Nil:
    case ProcTerm::K::Boot: return t;
    case ProcTerm::K::In:
    case ProcTerm::K::RepIn: {
      auto body = under_binder(t->var, t->a, v, s, s_fv,
                               [&](const ProcPtr& b) { return subst_t(b, v, s, s_fv); });
      if (body == t->a) return t;
      return t->k == ProcTerm::K::In ? pin(t->chan, t->var, body) : prepin(t->chan, t->var, body);
    }
    case ProcTerm::K::Out:
    case ProcTerm::K::RepOut: {
      auto val = subst_value(t->val, v, s);
      auto body = subst_t(t->a, v, s, s_fv);
      if (val == t->val && body == t->a) return t;
      return t->k == ProcTerm::K::Out ? pout(t->chan, val, body) : prepout(t->chan, val, body);
    }
    case ProcTerm::K::Par: return ppar(subst_t(t->a, v, s, s_fv), subst_t(t->b, v, s, s_fv));
    case ProcTerm::K::Res: return pres(t->chan, subst_t(t->a, v, s, s_fv));
    case ProcTerm::K::Cond: return pcond(subst_f(t->guard, v, s, s_fv), subst_t(t->a, v, s, s_fv));
    case ProcTerm::K::Call: {
      std::vector<ValuePtr> args;
      args.reserve(t->args.size());
      for (auto& a : t->args) args.push_back(subst_value(a, v, s));
      return pcall(t->def_pos, std::move(args));
    }
    case ProcTerm::K::IfElse:
      return pifelse(subst_f(t->guard, v, s, s_fv), subst_t(t->a, v, s, s_fv),
                     subst_t(t->b, v, s, s_fv));
    case ProcTerm::K::Case: {
      if (t->var == v)
        fail(ErrCode::BadArgument, "cannot substitute into a case scrutinee; desugar first");
      std::vector<CaseClause> cls;
      for (auto& cl : t->clauses)
        cls.push_back({subst_f(cl.guard, v, s, s_fv), subst_t(cl.body, v, s, s_fv)});
      return pcase(t->var, std::move(cls));
    }
    case ProcTerm::K::Let: {
      auto val = subst_value(t->val, v, s);
      auto body = under_binder(t->var, t->a, v, s, s_fv,
                               [&](const ProcPtr& b) { return subst_t(b, v, s, s_fv); });
      return plet(t->var, val, body);
    }
  }
  fail(ErrCode::Internal, "bad process term");
}

}  // namespace

FormulaPtr subst_value(const FormulaPtr& f, const Nat& v, const ValuePtr& s) {
  return subst_f(f, v, s, free_vars(s));
}

ProcPtr subst_value(const ProcPtr& t, const Nat& v, const ValuePtr& s) {
  return subst_t(t, v, s, free_vars(s));
}

// ---------------------------------------------------------------------------
// Desugaring

ProcPtr desugar(const ProcPtr& t) {
  switch (t->k) {
    case ProcTerm::K::Nil:
    case ProcTerm::K::Boot: return t;
    case ProcTerm::K::In: {
      auto a = desugar(t->a);
      return a == t->a ? t : pin(t->chan, t->var, a);
    }
    case ProcTerm::K::RepIn: {
      auto a = desugar(t->a);
      return a == t->a ? t : prepin(t->chan, t->var, a);
    }
    case ProcTerm::K::Out: {
      auto a = desugar(t->a);
      return a == t->a ? t : pout(t->chan, t->val, a);
    }
    case ProcTerm::K::RepOut: {
      auto a = desugar(t->a);
      return a == t->a ? t : prepout(t->chan, t->val, a);
    }
    case ProcTerm::K::Par: return ppar(desugar(t->a), desugar(t->b));
    case ProcTerm::K::Res: return pres(t->chan, desugar(t->a));
    case ProcTerm::K::Cond: {
      auto a = desugar(t->a);
      return a == t->a ? t : pcond(t->guard, a);
    }
    case ProcTerm::K::Call: return t;
    case ProcTerm::K::IfElse:
      // two one-leg conditions in parallel, guarded complementarily
      return ppar(pcond(t->guard, desugar(t->a)), pcond(fnot(t->guard), desugar(t->b)));
    case ProcTerm::K::Case: {
      // right-to-left: if g0 then b0 else (if g1 then b1 else ...)
      if (t->clauses.empty()) return pnil();
      ProcPtr acc = pcond(t->clauses.back().guard, desugar(t->clauses.back().body));
      for (std::size_t i = t->clauses.size() - 1; i-- > 0;) {
        const auto& cl = t->clauses[i];
        acc = ppar(pcond(cl.guard, desugar(cl.body)), pcond(fnot(cl.guard), acc));
      }
      return acc;
    }
    case ProcTerm::K::Let: return subst_value(desugar(t->a), t->var, t->val);
  }
  fail(ErrCode::Internal, "bad process term");
}

Program desugar(const Program& p) {
  Program out = p;
  out.main = desugar(p.main);
  for (auto& d : out.defs) d.body = desugar(d.body);
  return out;
}

// ---------------------------------------------------------------------------
// Replication removal

namespace {

ProcPtr strip_reps(const ProcPtr& t, std::vector<ParamDef>& defs) {
  switch (t->k) {
    case ProcTerm::K::Nil:
    case ProcTerm::K::Call:
    case ProcTerm::K::Boot: return t;
    case ProcTerm::K::In: return pin(t->chan, t->var, strip_reps(t->a, defs));
    case ProcTerm::K::Out: return pout(t->chan, t->val, strip_reps(t->a, defs));
    case ProcTerm::K::Par: return ppar(strip_reps(t->a, defs), strip_reps(t->b, defs));
    case ProcTerm::K::Res: return pres(t->chan, strip_reps(t->a, defs));
    case ProcTerm::K::Cond: return pcond(t->guard, strip_reps(t->a, defs));
    case ProcTerm::K::RepIn:
    case ProcTerm::K::RepOut: {
      ProcPtr cont = strip_reps(t->a, defs);
      ProcPtr prefix = t->k == ProcTerm::K::RepIn ? pin(t->chan, t->var, cont)
                                                  : pout(t->chan, t->val, cont);
      std::set<Nat> fv = free_vars(prefix);
      std::vector<Nat> params(fv.begin(), fv.end());
      std::vector<ValuePtr> args;
      args.reserve(params.size());
      for (auto& x : params) args.push_back(vvar(x));
      Nat pos = defs.size() + 1;
      ParamDef d;
      d.display = "Rep" + nat_str(pos);
      d.params = params;
      d.body = ppar(prefix, pcall(pos, args));
      defs.push_back(std::move(d));
      return pcall(pos, std::move(args));
    }
    case ProcTerm::K::IfElse:
    case ProcTerm::K::Case:
    case ProcTerm::K::Let:
      fail(ErrCode::BadArgument, "desugar before removing replication");
  }
  fail(ErrCode::Internal, "bad process term");
}

}  // namespace

Program derive_replication(const Program& p) {
  Program out;
  out.dialect = Dialect::P;
  out.defs = p.defs;
  out.name_syms = p.name_syms;
  out.var_syms = p.var_syms;
  out.main = strip_reps(desugar(p.main), out.defs);
  // strip_reps appends fresh (already clean) defs, so index over the originals
  std::size_t original = p.defs.size();
  for (std::size_t i = 0; i < original; ++i) {
    ProcPtr body = strip_reps(desugar(out.defs[i].body), out.defs);
    out.defs[i].body = std::move(body);
  }
  return out;
}

}  // namespace vpc
