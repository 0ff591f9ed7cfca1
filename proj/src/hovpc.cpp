#include "hovpc.hpp"

#include "checker.hpp"
#include "error.hpp"
#include "godel.hpp"
#include "pairing.hpp"
#include "presburger.hpp"
#include "syntax_ops.hpp"

#include <functional>
#include <set>

namespace vpc {

std::string AbsType::str() const {
  return "<" + std::to_string(local_count) + "," + std::to_string(param_count) + ">";
}

namespace {

void body_value_ok(const ValuePtr& v) {
  switch (v->k) {
    case ValueTerm::K::Num:
    case ValueTerm::K::Var:
      return;
    case ValueTerm::K::Add:
      body_value_ok(v->lhs);
      body_value_ok(v->rhs);
      return;
    case ValueTerm::K::Retarget:
      fail(ErrCode::BadArgument, "abstraction bodies cannot retarget");
  }
}

void body_formula_ok(const FormulaPtr& f) {
  switch (f->k) {
    case Formula::K::False:
    case Formula::K::True:
      return;
    case Formula::K::And:
    case Formula::K::Or:
    case Formula::K::Implies:
      body_formula_ok(f->f);
      body_formula_ok(f->g);
      return;
    case Formula::K::Exists:
    case Formula::K::Forall:
      body_formula_ok(f->f);
      return;
    case Formula::K::Lt:
    case Formula::K::Eq:
      body_value_ok(f->s);
      body_value_ok(f->t);
      return;
  }
}

void body_ok(const ProcPtr& t) {
  switch (t->k) {
    case ProcTerm::K::Nil:
      return;
    case ProcTerm::K::In:
      body_ok(t->a);
      return;
    case ProcTerm::K::Out:
      body_value_ok(t->val);
      body_ok(t->a);
      return;
    case ProcTerm::K::Par:
      body_ok(t->a);
      body_ok(t->b);
      return;
    case ProcTerm::K::Res:
      body_ok(t->a);
      return;
    case ProcTerm::K::Cond:
      body_formula_ok(t->guard);
      body_ok(t->a);
      return;
    default:
      fail(ErrCode::BadArgument, "abstraction bodies are first-order and definition-free");
  }
}

}  // namespace

Abstraction make_abstraction(std::vector<Name> params, ProcPtr body, uint64_t local_count) {
  body = desugar(body);
  body_ok(body);
  std::set<Nat> param_ids;
  for (const Name& p : params)
    if (!param_ids.insert(p.idx).second) fail(ErrCode::BadArgument, "duplicate abstraction parameter");
  Analysis an = analyze(body);
  if (!an.free_vars.empty()) fail(ErrCode::BadArgument, "abstraction body has a free value variable");
  for (const Name& g : an.global_names)
    if (!param_ids.count(g.idx))
      fail(ErrCode::BadArgument, "abstraction body uses " + g.str() + " outside its parameters");
  if (an.local_name_count > local_count)
    fail(ErrCode::BadArgument, "abstraction exceeds its local-name budget");
  Abstraction a;
  a.ty = AbsType{local_count, static_cast<uint64_t>(params.size())};
  a.params = std::move(params);
  a.body = std::move(body);
  return a;
}

Nat encode_abstraction(const Abstraction& a) {
  TypeSig sig;
  sig.local_budget = a.ty.local_count;
  sig.globals = a.params;
  Program p;
  p.dialect = Dialect::P;
  p.main = normalize_term(a.body, sig, Dialect::P);
  return encode_program(p);
}

// ---------------------------------------------------------------------------
// Retargeting: placeholder globals 1..j of a program code become real names.

namespace {

// decoded programs carry core P constructors only
void scan_term_names(const ProcPtr& t, const std::function<void(const Name&, bool)>& f) {
  switch (t->k) {
    case ProcTerm::K::Nil:
    case ProcTerm::K::Call:
      return;
    case ProcTerm::K::In:
    case ProcTerm::K::Out:
      f(t->chan, false);
      scan_term_names(t->a, f);
      return;
    case ProcTerm::K::Par:
      scan_term_names(t->a, f);
      scan_term_names(t->b, f);
      return;
    case ProcTerm::K::Res:
      f(t->chan, true);
      scan_term_names(t->a, f);
      return;
    case ProcTerm::K::Cond:
      scan_term_names(t->a, f);
      return;
    default:
      fail(ErrCode::Internal, "unexpected constructor in a decoded program");
  }
}

void scan_program_names(const Program& p, const std::function<void(const Name&, bool)>& f) {
  scan_term_names(p.main, f);
  for (const ParamDef& d : p.defs) scan_term_names(d.body, f);
}

ProcPtr map_term_names(const ProcPtr& t, const std::function<Name(const Name&)>& f) {
  switch (t->k) {
    case ProcTerm::K::Nil:
    case ProcTerm::K::Call:
      return t;
    case ProcTerm::K::In:
      return pin(f(t->chan), t->var, map_term_names(t->a, f));
    case ProcTerm::K::Out:
      return pout(f(t->chan), t->val, map_term_names(t->a, f));
    case ProcTerm::K::Par:
      return ppar(map_term_names(t->a, f), map_term_names(t->b, f));
    case ProcTerm::K::Res:
      return pres(f(t->chan), map_term_names(t->a, f));
    case ProcTerm::K::Cond:
      return pcond(t->guard, map_term_names(t->a, f));
    default:
      fail(ErrCode::Internal, "unexpected constructor in a decoded program");
  }
}

Nat retarget_impl(const Nat& z, const std::vector<Name>& names, bool strict) {
  Program p;
  try {
    p = decode_program(z);
  } catch (const Error&) {
    if (strict) throw;
    return z;
  }
  const Nat j(names.size());
  if (strict) {
    Analysis an = analyze_program(p);
    for (const Name& g : an.global_names)
      if (g.idx < 1 || g.idx > j) fail(ErrCode::BadArgument, "placeholder out of range");
    scan_program_names(p, [&](const Name& n, bool binder) {
      if (binder && n.idx <= j)
        fail(ErrCode::BadArgument, "local binder inside the placeholder range");
    });
  }
  // Binders move above everything in sight so no retargeted occurrence can be
  // captured; normalizing against the target names undoes the shift exactly.
  Nat max_id = j;
  for (const Name& n : names)
    if (n.idx > max_id) max_id = n.idx;
  scan_program_names(p, [&](const Name& n, bool) {
    if (n.idx > max_id) max_id = n.idx;
  });
  const Nat base = max_id + 1;
  auto ren = [&](const Name& n) -> Name {
    if (n.idx >= 1 && n.idx <= j) return names[nat_to_size(n.idx, "placeholder") - 1];
    if (n.idx > j) return Name(base + (n.idx - j - 1));
    return n;
  };
  p.main = map_term_names(p.main, ren);
  for (ParamDef& d : p.defs) d.body = map_term_names(d.body, ren);
  return encode_program(p);
}

}  // namespace

Nat retarget_code(const Nat& z, const std::vector<Name>& names) {
  return retarget_impl(z, names, true);
}

Nat retarget_code_total(const Nat& z, const std::vector<Name>& names) {
  return retarget_impl(z, names, false);
}

// ---------------------------------------------------------------------------
// Higher-order terms

namespace {

std::shared_ptr<HoTerm> hmk(HoTerm::K k) {
  auto t = std::make_shared<HoTerm>();
  t->k = k;
  return t;
}

}  // namespace

HoPtr hnil() {
  static const HoPtr n = hmk(HoTerm::K::Nil);
  return n;
}

HoPtr hin(Name a, Nat x, HoPtr cont) {
  auto t = hmk(HoTerm::K::In);
  t->chan = std::move(a);
  t->var = std::move(x);
  t->a = std::move(cont);
  return t;
}

HoPtr hout(Name a, ValuePtr v, HoPtr cont) {
  auto t = hmk(HoTerm::K::Out);
  t->chan = std::move(a);
  t->val = std::move(v);
  t->a = std::move(cont);
  return t;
}

HoPtr hpar(HoPtr l, HoPtr r) {
  auto t = hmk(HoTerm::K::Par);
  t->a = std::move(l);
  t->b = std::move(r);
  return t;
}

HoPtr hres(Name c, HoPtr body) {
  auto t = hmk(HoTerm::K::Res);
  t->chan = std::move(c);
  t->a = std::move(body);
  return t;
}

HoPtr hcond(FormulaPtr guard, HoPtr body) {
  auto t = hmk(HoTerm::K::Cond);
  t->guard = std::move(guard);
  t->a = std::move(body);
  return t;
}

HoPtr hhoin(Name a, Nat abs_var, AbsType ty, HoPtr cont) {
  auto t = hmk(HoTerm::K::HoIn);
  t->chan = std::move(a);
  t->abs_var = std::move(abs_var);
  t->ty = ty;
  t->a = std::move(cont);
  return t;
}

HoPtr hhoout(Name a, Abstraction payload, HoPtr cont) {
  auto t = hmk(HoTerm::K::HoOut);
  t->chan = std::move(a);
  t->ty = payload.ty;
  t->abs = std::move(payload);
  t->a = std::move(cont);
  return t;
}

HoPtr habsvar(Nat abs_var, AbsType ty, std::vector<Name> names) {
  if (names.size() != ty.param_count)
    fail(ErrCode::BadArgument, "application arity disagrees with the variable's type");
  auto t = hmk(HoTerm::K::AbsVarApp);
  t->abs_var = std::move(abs_var);
  t->ty = ty;
  t->app_names = std::move(names);
  return t;
}

namespace {

ProcPtr rename_free_names(const ProcPtr& t, const std::map<Nat, Nat>& m,
                          const std::set<Nat>& scope) {
  auto sub = [&](const Name& n) -> Name {
    if (scope.count(n.idx)) return n;
    auto it = m.find(n.idx);
    if (it == m.end()) return n;
    if (scope.count(it->second))
      fail(ErrCode::Capture, "instantiation would capture n" + nat_str(it->second) +
                                 " under a restriction");
    return Name(it->second);
  };
  switch (t->k) {
    case ProcTerm::K::Nil:
      return t;
    case ProcTerm::K::In:
      return pin(sub(t->chan), t->var, rename_free_names(t->a, m, scope));
    case ProcTerm::K::Out:
      return pout(sub(t->chan), t->val, rename_free_names(t->a, m, scope));
    case ProcTerm::K::Par:
      return ppar(rename_free_names(t->a, m, scope), rename_free_names(t->b, m, scope));
    case ProcTerm::K::Res: {
      std::set<Nat> inner = scope;
      inner.insert(t->chan.idx);
      return pres(t->chan, rename_free_names(t->a, m, inner));
    }
    case ProcTerm::K::Cond:
      return pcond(t->guard, rename_free_names(t->a, m, scope));
    default:
      fail(ErrCode::Internal, "abstraction body is not first-order");
  }
}

HoPtr embed_core(const ProcPtr& t) {
  switch (t->k) {
    case ProcTerm::K::Nil:
      return hnil();
    case ProcTerm::K::In:
      return hin(t->chan, t->var, embed_core(t->a));
    case ProcTerm::K::Out:
      return hout(t->chan, t->val, embed_core(t->a));
    case ProcTerm::K::Par:
      return hpar(embed_core(t->a), embed_core(t->b));
    case ProcTerm::K::Res:
      return hres(t->chan, embed_core(t->a));
    case ProcTerm::K::Cond:
      return hcond(t->guard, embed_core(t->a));
    default:
      fail(ErrCode::BadArgument, "only first-order core terms embed");
  }
}

}  // namespace

HoPtr ho_apply(const Abstraction& a, const std::vector<Name>& names) {
  if (names.size() != a.params.size()) fail(ErrCode::BadArgument, "application arity mismatch");
  std::map<Nat, Nat> m;
  for (std::size_t i = 0; i < names.size(); ++i) m[a.params[i].idx] = names[i].idx;
  return embed_core(rename_free_names(a.body, m, {}));
}

HoPtr ho_embed(const ProcPtr& t) { return embed_core(desugar(t)); }

bool ho_first_order(const HoPtr& t) {
  switch (t->k) {
    case HoTerm::K::Nil:
      return true;
    case HoTerm::K::In:
    case HoTerm::K::Out:
    case HoTerm::K::Res:
    case HoTerm::K::Cond:
      return ho_first_order(t->a);
    case HoTerm::K::Par:
      return ho_first_order(t->a) && ho_first_order(t->b);
    case HoTerm::K::HoIn:
    case HoTerm::K::HoOut:
    case HoTerm::K::AbsVarApp:
      return false;
  }
  return false;
}

ProcPtr ho_project(const HoPtr& t) {
  switch (t->k) {
    case HoTerm::K::Nil:
      return pnil();
    case HoTerm::K::In:
      return pin(t->chan, t->var, ho_project(t->a));
    case HoTerm::K::Out:
      return pout(t->chan, t->val, ho_project(t->a));
    case HoTerm::K::Par:
      return ppar(ho_project(t->a), ho_project(t->b));
    case HoTerm::K::Res:
      return pres(t->chan, ho_project(t->a));
    case HoTerm::K::Cond:
      return pcond(t->guard, ho_project(t->a));
    case HoTerm::K::HoIn:
    case HoTerm::K::HoOut:
    case HoTerm::K::AbsVarApp:
      fail(ErrCode::BadArgument, "higher-order construct has no first-order projection");
  }
  fail(ErrCode::Internal, "bad term");
}

HoPtr ho_subst_abs(const HoPtr& t, const Nat& abs_var, const Abstraction& a) {
  switch (t->k) {
    case HoTerm::K::Nil:
      return t;
    case HoTerm::K::In:
      return hin(t->chan, t->var, ho_subst_abs(t->a, abs_var, a));
    case HoTerm::K::Out:
      return hout(t->chan, t->val, ho_subst_abs(t->a, abs_var, a));
    case HoTerm::K::Par:
      return hpar(ho_subst_abs(t->a, abs_var, a), ho_subst_abs(t->b, abs_var, a));
    case HoTerm::K::Res:
      return hres(t->chan, ho_subst_abs(t->a, abs_var, a));
    case HoTerm::K::Cond:
      return hcond(t->guard, ho_subst_abs(t->a, abs_var, a));
    case HoTerm::K::HoIn:
      if (t->abs_var == abs_var) return t;  // shadowed
      return hhoin(t->chan, t->abs_var, t->ty, ho_subst_abs(t->a, abs_var, a));
    case HoTerm::K::HoOut:
      // payload bodies are closed first-order terms; nothing to do inside
      return hhoout(t->chan, *t->abs, ho_subst_abs(t->a, abs_var, a));
    case HoTerm::K::AbsVarApp: {
      if (t->abs_var != abs_var) return t;
      if (!(a.ty == t->ty)) fail(ErrCode::BadArgument, "abstraction type mismatch at application");
      return ho_apply(a, t->app_names);
    }
  }
  fail(ErrCode::Internal, "bad term");
}

// value substitution through higher-order structure (s closed, so no capture)
namespace {

HoPtr ho_subst_value(const HoPtr& t, const Nat& v, const ValuePtr& s) {
  switch (t->k) {
    case HoTerm::K::Nil:
    case HoTerm::K::AbsVarApp:
      return t;
    case HoTerm::K::In:
      if (t->var == v) return t;
      return hin(t->chan, t->var, ho_subst_value(t->a, v, s));
    case HoTerm::K::Out:
      return hout(t->chan, subst_value(t->val, v, s), ho_subst_value(t->a, v, s));
    case HoTerm::K::Par:
      return hpar(ho_subst_value(t->a, v, s), ho_subst_value(t->b, v, s));
    case HoTerm::K::Res:
      return hres(t->chan, ho_subst_value(t->a, v, s));
    case HoTerm::K::Cond:
      return hcond(subst_value(t->guard, v, s), ho_subst_value(t->a, v, s));
    case HoTerm::K::HoIn:
      return hhoin(t->chan, t->abs_var, t->ty, ho_subst_value(t->a, v, s));
    case HoTerm::K::HoOut:
      return hhoout(t->chan, *t->abs, ho_subst_value(t->a, v, s));
  }
  fail(ErrCode::Internal, "bad term");
}

void abs_key_append(std::string& out, const Abstraction& a) {
  out += "L";
  out += std::to_string(a.ty.local_count);
  out += "[";
  for (const Name& p : a.params) {
    out += nat_str(p.idx);
    out += ",";
  }
  out += "]";
  key_append(out, a.body);
}

void hkey(std::string& out, const HoPtr& t) {
  switch (t->k) {
    case HoTerm::K::Nil:
      out += "0";
      return;
    case HoTerm::K::In:
      out += "i" + nat_str(t->chan.idx) + "," + nat_str(t->var) + "(";
      hkey(out, t->a);
      out += ")";
      return;
    case HoTerm::K::Out:
      out += "o" + nat_str(t->chan.idx) + ",";
      key_append(out, t->val);
      out += "(";
      hkey(out, t->a);
      out += ")";
      return;
    case HoTerm::K::Par:
      out += "(";
      hkey(out, t->a);
      out += "|";
      hkey(out, t->b);
      out += ")";
      return;
    case HoTerm::K::Res:
      out += "r" + nat_str(t->chan.idx) + "(";
      hkey(out, t->a);
      out += ")";
      return;
    case HoTerm::K::Cond:
      out += "c";
      key_append(out, t->guard);
      out += "(";
      hkey(out, t->a);
      out += ")";
      return;
    case HoTerm::K::HoIn:
      out += "I" + nat_str(t->chan.idx) + ",X" + nat_str(t->abs_var) + t->ty.str() + "(";
      hkey(out, t->a);
      out += ")";
      return;
    case HoTerm::K::HoOut:
      out += "O" + nat_str(t->chan.idx) + ",";
      abs_key_append(out, *t->abs);
      out += "(";
      hkey(out, t->a);
      out += ")";
      return;
    case HoTerm::K::AbsVarApp:
      out += "V" + nat_str(t->abs_var) + t->ty.str() + "[";
      for (const Name& n : t->app_names) out += nat_str(n.idx) + ",";
      out += "]";
      return;
  }
}

std::string abs_show(const Abstraction& a) {
  std::string out = "\\";
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    if (i) out += ",";
    out += a.params[i].str();
  }
  out += ". " + show(a.body);
  return out;
}

}  // namespace

std::string ho_key(const HoPtr& t) {
  std::string out;
  hkey(out, t);
  return out;
}

std::string ho_show(const HoPtr& t) {
  switch (t->k) {
    case HoTerm::K::Nil:
      return "0";
    case HoTerm::K::In:
      return t->chan.str() + "(x" + nat_str(t->var) + ")." + ho_show(t->a);
    case HoTerm::K::Out:
      return "'" + t->chan.str() + "(" + show(t->val) + ")." + ho_show(t->a);
    case HoTerm::K::Par:
      return "(" + ho_show(t->a) + " | " + ho_show(t->b) + ")";
    case HoTerm::K::Res:
      return "(" + t->chan.str() + ")" + ho_show(t->a);
    case HoTerm::K::Cond:
      return "if " + show(t->guard) + " then " + ho_show(t->a);
    case HoTerm::K::HoIn:
      return t->chan.str() + "(X" + nat_str(t->abs_var) + ":" + t->ty.str() + ")." +
             ho_show(t->a);
    case HoTerm::K::HoOut:
      return "'" + t->chan.str() + "(" + abs_show(*t->abs) + ")." + ho_show(t->a);
    case HoTerm::K::AbsVarApp: {
      std::string out = "X" + nat_str(t->abs_var) + "(";
      for (std::size_t i = 0; i < t->app_names.size(); ++i) {
        if (i) out += ",";
        out += t->app_names[i].str();
      }
      return out + ")";
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Transitions

std::string HoAction::str() const {
  switch (k) {
    case K::Fo:
      return fo.str();
    case K::HoIn:
      return "in " + chan.str() + " A" + nat_str(encode_abstraction(abs));
    case K::HoOut:
      return "out " + chan.str() + " A" + nat_str(encode_abstraction(abs));
  }
  return "?";
}

Action ho_lower(const HoAction& a) {
  if (a.k == HoAction::K::Fo) return a.fo;
  Action out;
  out.k = a.k == HoAction::K::HoIn ? Action::K::In : Action::K::Out;
  out.chan = a.chan;
  out.value = encode_abstraction(a.abs);
  return out;
}

namespace {

using VExtras = std::map<Nat, std::set<Nat>>;

struct AbsEntry {
  Nat code;
  Abstraction abs;
};
using AExtras = std::map<Nat, std::vector<AbsEntry>>;

void add_abs(std::vector<AbsEntry>& v, const Abstraction& a, const Nat& code) {
  for (const AbsEntry& e : v)
    if (e.code == code && e.abs.ty == a.ty) return;
  v.push_back({code, a});
}

// first-step value outputs, for exact synchronization of sibling inputs
void fo_outs(const HoPtr& t, VExtras& acc) {
  switch (t->k) {
    case HoTerm::K::Out:
      acc[t->chan.idx].insert(eval_term(t->val));
      return;
    case HoTerm::K::Par:
      fo_outs(t->a, acc);
      fo_outs(t->b, acc);
      return;
    case HoTerm::K::Res: {
      VExtras inner;
      fo_outs(t->a, inner);
      inner.erase(t->chan.idx);
      for (auto& [c, vs] : inner) acc[c].insert(vs.begin(), vs.end());
      return;
    }
    case HoTerm::K::Cond:
      if (decide(t->guard)) fo_outs(t->a, acc);
      return;
    default:
      return;
  }
}

// first-step abstraction outputs, same purpose on the higher-order side
void abs_outs(const HoPtr& t, AExtras& acc) {
  switch (t->k) {
    case HoTerm::K::HoOut:
      add_abs(acc[t->chan.idx], *t->abs, encode_abstraction(*t->abs));
      return;
    case HoTerm::K::Par:
      abs_outs(t->a, acc);
      abs_outs(t->b, acc);
      return;
    case HoTerm::K::Res: {
      AExtras inner;
      abs_outs(t->a, inner);
      inner.erase(t->chan.idx);
      for (auto& [c, es] : inner)
        for (const AbsEntry& e : es) add_abs(acc[c], e.abs, e.code);
      return;
    }
    case HoTerm::K::Cond:
      if (decide(t->guard)) abs_outs(t->a, acc);
      return;
    default:
      return;
  }
}

bool syncable(const HoAction& o, const HoAction& i) {
  if (o.k == HoAction::K::Fo && i.k == HoAction::K::Fo)
    return o.fo.k == Action::K::Out && i.fo.k == Action::K::In &&
           o.fo.chan.idx == i.fo.chan.idx && o.fo.value == i.fo.value;
  if (o.k == HoAction::K::HoOut && i.k == HoAction::K::HoIn)
    return o.chan.idx == i.chan.idx && o.abs.ty == i.abs.ty &&
           encode_abstraction(o.abs) == encode_abstraction(i.abs);
  return false;
}

std::vector<HoStep> ho_go(const HoPtr& t, uint64_t vbound,
                          const std::vector<Abstraction>& candidates, const VExtras& vx,
                          const AExtras& ax) {
  std::vector<HoStep> out;
  switch (t->k) {
    case HoTerm::K::Nil:
      return out;
    case HoTerm::K::In: {
      auto emit = [&](const Nat& v) {
        HoAction act;
        act.k = HoAction::K::Fo;
        act.fo.k = Action::K::In;
        act.fo.chan = t->chan;
        act.fo.value = v;
        out.push_back({act, ho_subst_value(t->a, t->var, vnum(v))});
      };
      for (uint64_t v = 0; v <= vbound; ++v) emit(Nat(v));
      auto it = vx.find(t->chan.idx);
      if (it != vx.end())
        for (const Nat& v : it->second)
          if (v > vbound) emit(v);
      return out;
    }
    case HoTerm::K::Out: {
      HoAction act;
      act.k = HoAction::K::Fo;
      act.fo.k = Action::K::Out;
      act.fo.chan = t->chan;
      act.fo.value = eval_term(t->val);
      out.push_back({act, t->a});
      return out;
    }
    case HoTerm::K::HoIn: {
      std::vector<AbsEntry> options;
      for (const Abstraction& c : candidates)
        if (c.ty == t->ty) add_abs(options, c, encode_abstraction(c));
      auto it = ax.find(t->chan.idx);
      if (it != ax.end())
        for (const AbsEntry& e : it->second)
          if (e.abs.ty == t->ty) add_abs(options, e.abs, e.code);
      for (const AbsEntry& e : options) {
        HoAction act;
        act.k = HoAction::K::HoIn;
        act.chan = t->chan;
        act.abs = e.abs;
        out.push_back({act, ho_subst_abs(t->a, t->abs_var, e.abs)});
      }
      return out;
    }
    case HoTerm::K::HoOut: {
      HoAction act;
      act.k = HoAction::K::HoOut;
      act.chan = t->chan;
      act.abs = *t->abs;
      out.push_back({act, t->a});
      return out;
    }
    case HoTerm::K::Par: {
      VExtras vxl = vx, vxr = vx;
      AExtras axl = ax, axr = ax;
      fo_outs(t->b, vxl);
      abs_outs(t->b, axl);
      fo_outs(t->a, vxr);
      abs_outs(t->a, axr);
      std::vector<HoStep> ls = ho_go(t->a, vbound, candidates, vxl, axl);
      std::vector<HoStep> rs = ho_go(t->b, vbound, candidates, vxr, axr);
      for (const HoStep& s : ls) out.push_back({s.act, hpar(s.next, t->b)});
      for (const HoStep& s : rs) out.push_back({s.act, hpar(t->a, s.next)});
      HoAction tau;
      tau.k = HoAction::K::Fo;
      tau.fo.k = Action::K::Tau;
      for (const HoStep& o : ls)
        for (const HoStep& i : rs)
          if (syncable(o.act, i.act)) out.push_back({tau, hpar(o.next, i.next)});
      for (const HoStep& o : rs)
        for (const HoStep& i : ls)
          if (syncable(o.act, i.act)) out.push_back({tau, hpar(i.next, o.next)});
      return out;
    }
    case HoTerm::K::Res: {
      VExtras vx2 = vx;
      vx2.erase(t->chan.idx);
      AExtras ax2 = ax;
      ax2.erase(t->chan.idx);
      for (const HoStep& s : ho_go(t->a, vbound, candidates, vx2, ax2)) {
        bool hidden;
        if (s.act.k == HoAction::K::Fo)
          hidden = s.act.fo.k != Action::K::Tau && s.act.fo.chan.idx == t->chan.idx;
        else
          hidden = s.act.chan.idx == t->chan.idx;
        if (hidden) continue;
        out.push_back({s.act, hres(t->chan, s.next)});
      }
      return out;
    }
    case HoTerm::K::Cond:
      if (decide(t->guard)) return ho_go(t->a, vbound, candidates, vx, ax);
      return out;
    case HoTerm::K::AbsVarApp:
      fail(ErrCode::OpenTerm, "unapplied abstraction variable");
  }
  return out;
}

}  // namespace

std::vector<HoStep> ho_transitions(const HoPtr& t, uint64_t vbound,
                                   const std::vector<Abstraction>& candidates) {
  return ho_go(t, vbound, candidates, {}, {});
}

// ---------------------------------------------------------------------------
// Translation

namespace {

void val_names(const ValuePtr& v, const std::function<void(const Name&)>& f) {
  switch (v->k) {
    case ValueTerm::K::Num:
    case ValueTerm::K::Var:
      return;
    case ValueTerm::K::Add:
      val_names(v->lhs, f);
      val_names(v->rhs, f);
      return;
    case ValueTerm::K::Retarget:
      for (const Name& n : v->retarget_names) f(n);
      val_names(v->lhs, f);
      return;
  }
}

void ho_names(const HoPtr& t, const std::function<void(const Name&)>& f) {
  switch (t->k) {
    case HoTerm::K::Nil:
      return;
    case HoTerm::K::In:
    case HoTerm::K::HoIn:
      f(t->chan);
      ho_names(t->a, f);
      return;
    case HoTerm::K::Out:
      f(t->chan);
      val_names(t->val, f);
      ho_names(t->a, f);
      return;
    case HoTerm::K::HoOut:
      f(t->chan);
      ho_names(t->a, f);
      return;
    case HoTerm::K::Par:
      ho_names(t->a, f);
      ho_names(t->b, f);
      return;
    case HoTerm::K::Res:
      f(t->chan);
      ho_names(t->a, f);
      return;
    case HoTerm::K::Cond:
      ho_names(t->a, f);
      return;
    case HoTerm::K::AbsVarApp:
      for (const Name& n : t->app_names) f(n);
      return;
  }
}

// every variable identity visible in the term, for fresh-variable picking
void ho_vars(const HoPtr& t, std::set<Nat>& vs) {
  switch (t->k) {
    case HoTerm::K::Nil:
    case HoTerm::K::AbsVarApp:
      return;
    case HoTerm::K::In: {
      vs.insert(t->var);
      ho_vars(t->a, vs);
      return;
    }
    case HoTerm::K::Out: {
      for (const Nat& v : free_vars(t->val)) vs.insert(v);
      ho_vars(t->a, vs);
      return;
    }
    case HoTerm::K::Par:
      ho_vars(t->a, vs);
      ho_vars(t->b, vs);
      return;
    case HoTerm::K::Res:
    case HoTerm::K::HoIn:
    case HoTerm::K::HoOut:
      ho_vars(t->a, vs);
      return;
    case HoTerm::K::Cond: {
      for (const Nat& v : free_vars(t->guard)) vs.insert(v);
      ho_vars(t->a, vs);
      return;
    }
  }
}

struct Translator {
  Nat next_fresh;

  ProcPtr go(const HoPtr& t, const std::map<Nat, Nat>& env) {
    switch (t->k) {
      case HoTerm::K::Nil:
        return pnil();
      case HoTerm::K::In:
        return pin(t->chan, t->var, go(t->a, env));
      case HoTerm::K::Out:
        return pout(t->chan, t->val, go(t->a, env));
      case HoTerm::K::Par:
        return ppar(go(t->a, env), go(t->b, env));
      case HoTerm::K::Res:
        return pres(t->chan, go(t->a, env));
      case HoTerm::K::Cond:
        return pcond(t->guard, go(t->a, env));
      case HoTerm::K::HoIn: {
        // the received code rides an ordinary value variable
        std::set<Nat> used;
        ho_vars(t->a, used);
        for (const auto& [x, v] : env) used.insert(v);
        Nat x(0);
        while (used.count(x)) x += 1;
        std::map<Nat, Nat> env2 = env;
        env2[t->abs_var] = x;
        return pin(t->chan, x, go(t->a, env2));
      }
      case HoTerm::K::HoOut:
        return pout(t->chan, vnum(encode_abstraction(*t->abs)), go(t->a, env));
      case HoTerm::K::AbsVarApp: {
        auto it = env.find(t->abs_var);
        if (it == env.end()) fail(ErrCode::OpenTerm, "unbound abstraction variable");
        // retarget the carried code at the application's names and hand it to
        // a one-shot private booter
        Name d(next_fresh);
        next_fresh += 1;
        TypeSig bsig;
        bsig.local_budget = t->ty.local_count;
        bsig.globals = t->app_names;
        return pres(d, ppar(pout(d, vretarget(vvar(it->second), t->app_names), pnil()),
                            pboot(d, bsig)));
      }
    }
    fail(ErrCode::Internal, "bad term");
  }
};

}  // namespace

ProcPtr translate(const HoPtr& t, const std::map<Nat, Nat>& env) {
  Nat mx(0);
  ho_names(t, [&](const Name& n) {
    if (n.idx > mx) mx = n.idx;
  });
  Translator tr;
  tr.next_fresh = mx + 1;
  return tr.go(t, env);
}

ProcPtr translate(const HoPtr& t) { return translate(t, {}); }

}  // namespace vpc
