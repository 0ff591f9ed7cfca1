#include "lts.hpp"

#include "checker.hpp"
#include "error.hpp"
#include "godel.hpp"
#include "pairing.hpp"
#include "presburger.hpp"
#include "syntax_ops.hpp"

#include <functional>
#include <map>
#include <set>

namespace vpc {

std::string Action::str() const {
  switch (k) {
    case K::In: return "in " + chan.str() + " " + nat_str(value);
    case K::Out: return "out " + chan.str() + " " + nat_str(value);
    case K::Tau: return "tau";
  }
  return "?";
}

bool operator==(const Action& a, const Action& b) {
  if (a.k != b.k) return false;
  if (a.k == Action::K::Tau) return true;
  return a.chan == b.chan && a.value == b.value;
}

bool operator!=(const Action& a, const Action& b) { return !(a == b); }

bool operator<(const Action& a, const Action& b) {
  if (a.k != b.k) return a.k < b.k;
  if (a.k == Action::K::Tau) return false;
  if (a.chan != b.chan) return a.chan < b.chan;
  return a.value < b.value;
}

DefsPtr make_defs(std::vector<ParamDef> defs) {
  return std::make_shared<const std::vector<ParamDef>>(std::move(defs));
}

namespace {

using Extras = std::map<Nat, std::set<Nat>>;  // channel identity -> sibling output values

void merge_extras(Extras& into, const Extras& add) {
  for (auto& [c, vs] : add) into[c].insert(vs.begin(), vs.end());
}

struct Ctx {
  const std::vector<ParamDef>* defs;
  uint64_t vbound;
  uint64_t fuel;                      // remaining nested unfoldings on this path
  std::set<std::string> in_progress;  // calls being unfolded on this path
};

struct Raw {
  Action act;
  ProcPtr next;
  DefsPtr new_defs;  // replaces the state's table when a boot fired
};

std::string call_key(const Nat& pos, const std::vector<ValuePtr>& args) {
  std::string k = "c" + nat_str(pos);
  for (auto& a : args) {
    k += ',';
    key_append(k, a);
  }
  return k;
}

// Transparent definition unfolding. False: the call contributes nothing
// (unknown definition, or a same-arguments re-entry already on this path —
// its transitions are exactly the ones being computed, so the least fixed
// point adds nothing new).
bool unfold(const ProcPtr& t, Ctx& ctx, ProcPtr& body_out) {
  if (t->def_pos < 1 || t->def_pos > ctx.defs->size()) return false;
  std::string key = call_key(t->def_pos, t->args);
  if (!ctx.in_progress.insert(key).second) return false;
  if (ctx.fuel == 0) fail(ErrCode::FuelExhausted, "unguarded recursive definition");
  --ctx.fuel;
  const ParamDef& d = (*ctx.defs)[nat_to_size(t->def_pos) - 1];
  std::vector<ValuePtr> args = t->args;
  if (args.size() != d.params.size()) {
    // reinterpret the argument tuple at the definition's declared arity,
    // exactly as the code-level dispatcher reads it
    std::vector<Nat> codes;
    codes.reserve(args.size());
    for (auto& a : args) codes.push_back(encode_vterm(a));
    Nat packed = pair_list(codes);
    args.clear();
    if (!d.params.empty())
      for (auto& c : unpair_list(packed, d.params.size())) args.push_back(decode_vterm(c));
  }
  ProcPtr body = d.body;
  for (std::size_t i = 0; i < d.params.size(); ++i)
    body = subst_value(body, d.params[i], args[i]);
  body_out = std::move(body);
  return true;
}

// First-step output values, per channel — drives the sibling side's input
// enumeration so internal synchronization is exact at any value magnitude.
void out_values(const ProcPtr& t, Ctx ctx, Extras& acc) {
  switch (t->k) {
    case ProcTerm::K::Nil:
    case ProcTerm::K::In:
    case ProcTerm::K::RepIn:
    case ProcTerm::K::Boot: return;
    case ProcTerm::K::Out:
    case ProcTerm::K::RepOut: acc[t->chan.idx].insert(eval_term(t->val)); return;
    case ProcTerm::K::Par:
      out_values(t->a, ctx, acc);
      out_values(t->b, std::move(ctx), acc);
      return;
    case ProcTerm::K::Res: {
      Extras inner;
      out_values(t->a, std::move(ctx), inner);
      inner.erase(t->chan.idx);
      merge_extras(acc, inner);
      return;
    }
    case ProcTerm::K::Cond:
      if (decide(t->guard)) out_values(t->a, std::move(ctx), acc);
      return;
    case ProcTerm::K::Call: {
      ProcPtr body;
      if (unfold(t, ctx, body)) out_values(body, std::move(ctx), acc);
      return;
    }
    case ProcTerm::K::IfElse:
    case ProcTerm::K::Case:
    case ProcTerm::K::Let: fail(ErrCode::Internal, "desugar before running");
  }
}

// Boot firing: parse the received code against the recorded signature, remap
// the normalized program onto the signature's actual names (locals to fresh
// identities, call positions past the current table) and append its defs.
std::pair<ProcPtr, DefsPtr> boot_fire(const Nat& v, const TypeSig& bsig,
                                      const std::vector<ParamDef>& cur) {
  ParsedProgram pp = parse_program(v, bsig);
  if (!pp.ok) return {pnil(), nullptr};

  std::size_t k = bsig.globals.size();
  std::size_t dm = pp.prog.defs.size();
  std::size_t B = cur.size();

  Nat max_ident = 0;
  for (auto& g : bsig.globals) max_ident = std::max(max_ident, g.idx);
  std::function<void(const ProcPtr&)> scan = [&](const ProcPtr& t) {
    switch (t->k) {
      case ProcTerm::K::Nil:
      case ProcTerm::K::Call: return;
      case ProcTerm::K::In:
      case ProcTerm::K::Out:
      case ProcTerm::K::Res:
        max_ident = std::max(max_ident, t->chan.idx);
        scan(t->a);
        return;
      case ProcTerm::K::Par:
        scan(t->a);
        scan(t->b);
        return;
      case ProcTerm::K::Cond: scan(t->a); return;
      default: fail(ErrCode::Internal, "non-core constructor in parsed program");
    }
  };
  scan(pp.prog.main);
  for (auto& d : pp.prog.defs) scan(d.body);
  Nat base = max_ident + 1;

  auto rename = [&](const Name& nm) -> Name {
    if (nm.idx >= 1 && nm.idx <= Nat(k)) return bsig.globals[nat_to_size(nm.idx) - 1];
    if (nm.idx > Nat(k)) return Name(base + (nm.idx - Nat(k) - 1));
    return nm;
  };
  std::function<ProcPtr(const ProcPtr&)> go = [&](const ProcPtr& t) -> ProcPtr {
    switch (t->k) {
      case ProcTerm::K::Nil: return t;
      case ProcTerm::K::In: return pin(rename(t->chan), t->var, go(t->a));
      case ProcTerm::K::Out: return pout(rename(t->chan), t->val, go(t->a));
      case ProcTerm::K::Par: return ppar(go(t->a), go(t->b));
      case ProcTerm::K::Res: return pres(rename(t->chan), go(t->a));
      case ProcTerm::K::Cond: return pcond(t->guard, go(t->a));
      case ProcTerm::K::Call: {
        bool own = t->def_pos >= 1 && t->def_pos <= Nat(dm);
        return pcall(own ? t->def_pos + Nat(B) : Nat(0), t->args);
      }
      default: fail(ErrCode::Internal, "non-core constructor in parsed program");
    }
  };

  ProcPtr main = go(pp.prog.main);
  if (dm == 0) return {main, nullptr};
  std::vector<ParamDef> table = cur;
  for (auto& d : pp.prog.defs) table.push_back({d.display, d.params, go(d.body)});
  return {main, make_defs(std::move(table))};
}

std::vector<Raw> trans(const ProcPtr& t, Ctx ctx, const Extras& extras) {
  switch (t->k) {
    case ProcTerm::K::Nil: return {};

    case ProcTerm::K::In:
    case ProcTerm::K::RepIn: {
      std::vector<Raw> out;
      auto emit = [&](const Nat& v) {
        ProcPtr cont = subst_value(t->a, t->var, vnum(v));
        if (t->k == ProcTerm::K::RepIn) cont = ppar(cont, t);
        out.push_back({Action{Action::K::In, t->chan, v}, std::move(cont), nullptr});
      };
      for (uint64_t v = 0; v <= ctx.vbound; ++v) emit(Nat(v));
      if (auto it = extras.find(t->chan.idx); it != extras.end())
        for (auto& v : it->second)
          if (v > ctx.vbound) emit(v);
      return out;
    }

    case ProcTerm::K::Out:
    case ProcTerm::K::RepOut: {
      ProcPtr cont = t->a;
      if (t->k == ProcTerm::K::RepOut) cont = ppar(cont, t);
      return {{Action{Action::K::Out, t->chan, eval_term(t->val)}, std::move(cont), nullptr}};
    }

    case ProcTerm::K::Par: {
      Extras ex_l = extras, ex_r = extras;
      {
        Extras sib;
        out_values(t->b, ctx, sib);
        merge_extras(ex_l, sib);
      }
      {
        Extras sib;
        out_values(t->a, ctx, sib);
        merge_extras(ex_r, sib);
      }
      auto ls = trans(t->a, ctx, ex_l);
      auto rs = trans(t->b, ctx, ex_r);
      std::vector<Raw> out;
      for (auto& s : ls) out.push_back({s.act, ppar(s.next, t->b), s.new_defs});
      for (auto& s : rs) out.push_back({s.act, ppar(t->a, s.next), s.new_defs});
      for (auto& o : ls)
        if (o.act.k == Action::K::Out)
          for (auto& i : rs)
            if (i.act.k == Action::K::In && i.act.chan == o.act.chan &&
                i.act.value == o.act.value)
              out.push_back({Action{Action::K::Tau}, ppar(o.next, i.next), i.new_defs});
      for (auto& o : rs)
        if (o.act.k == Action::K::Out)
          for (auto& i : ls)
            if (i.act.k == Action::K::In && i.act.chan == o.act.chan &&
                i.act.value == o.act.value)
              out.push_back({Action{Action::K::Tau}, ppar(i.next, o.next), i.new_defs});
      return out;
    }

    case ProcTerm::K::Res: {
      Extras inner = extras;
      inner.erase(t->chan.idx);
      auto ss = trans(t->a, std::move(ctx), inner);
      std::vector<Raw> out;
      for (auto& s : ss) {
        if (s.act.k != Action::K::Tau && s.act.chan == t->chan) continue;
        out.push_back({s.act, pres(t->chan, s.next), s.new_defs});
      }
      return out;
    }

    case ProcTerm::K::Cond:
      return decide(t->guard) ? trans(t->a, std::move(ctx), extras) : std::vector<Raw>{};

    case ProcTerm::K::Call: {
      ProcPtr body;
      if (!unfold(t, ctx, body)) return {};
      return trans(body, std::move(ctx), extras);
    }

    case ProcTerm::K::Boot: {
      std::vector<Raw> out;
      auto emit = [&](const Nat& v) {
        auto [next, defs] = boot_fire(v, t->boot_sig, *ctx.defs);
        out.push_back({Action{Action::K::In, t->chan, v}, std::move(next), std::move(defs)});
      };
      for (uint64_t v = 0; v <= ctx.vbound; ++v) emit(Nat(v));
      if (auto it = extras.find(t->chan.idx); it != extras.end())
        for (auto& v : it->second)
          if (v > ctx.vbound) emit(v);
      return out;
    }

    case ProcTerm::K::IfElse:
    case ProcTerm::K::Case:
    case ProcTerm::K::Let: fail(ErrCode::Internal, "desugar before running");
  }
  fail(ErrCode::Internal, "bad process term");
}

const std::vector<ParamDef>& table_of(const DefsPtr& p) {
  static const std::vector<ParamDef> empty;
  return p ? *p : empty;
}

using Reach = std::vector<std::set<Nat>>;

// Names a term can mention freely, where a call contributes everything its
// definition can reach; bound tracks the binders on the path, which capture
// both syntactic occurrences and occurrences arriving via unfolding.
void scan_free(const ProcPtr& t, const std::vector<ParamDef>& defs, const Reach& reach,
               std::map<Nat, int>& bound, std::set<Nat>& acc) {
  switch (t->k) {
    case ProcTerm::K::Nil: return;
    case ProcTerm::K::In:
    case ProcTerm::K::RepIn:
    case ProcTerm::K::Out:
    case ProcTerm::K::RepOut:
      if (!bound.count(t->chan.idx)) acc.insert(t->chan.idx);
      scan_free(t->a, defs, reach, bound, acc);
      return;
    case ProcTerm::K::Boot:
      // a boot may spawn code over any of its recorded globals
      if (!bound.count(t->chan.idx)) acc.insert(t->chan.idx);
      for (const Name& g : t->boot_sig.globals)
        if (!bound.count(g.idx)) acc.insert(g.idx);
      return;
    case ProcTerm::K::Par:
      scan_free(t->a, defs, reach, bound, acc);
      scan_free(t->b, defs, reach, bound, acc);
      return;
    case ProcTerm::K::Res: {
      ++bound[t->chan.idx];
      scan_free(t->a, defs, reach, bound, acc);
      if (--bound[t->chan.idx] == 0) bound.erase(t->chan.idx);
      return;
    }
    case ProcTerm::K::Cond: scan_free(t->a, defs, reach, bound, acc); return;
    case ProcTerm::K::Call:
      if (t->def_pos >= 1 && t->def_pos <= defs.size())
        for (const Nat& n : reach[nat_to_size(t->def_pos) - 1])
          if (!bound.count(n)) acc.insert(n);
      return;
    case ProcTerm::K::IfElse:
    case ProcTerm::K::Case:
    case ProcTerm::K::Let: fail(ErrCode::Internal, "desugar before running");
  }
}

// Per-definition free-name closure over the call graph (Kleene iteration;
// the sets only grow and are bounded by the names in the table).
Reach def_reach(const std::vector<ParamDef>& defs) {
  Reach reach(defs.size());
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < defs.size(); ++i) {
      std::set<Nat> acc;
      std::map<Nat, int> bound;
      scan_free(defs[i].body, defs, reach, bound, acc);
      if (acc.size() != reach[i].size()) {
        reach[i] = std::move(acc);
        changed = true;
      }
    }
  }
  return reach;
}

// Successor cleanup on the par/res spine: drop nil units and restrictions
// whose name can no longer be mentioned — not even by unfolding a call, since
// dynamic binding lets a binder capture names inside definition bodies. Sound
// for strong bisimilarity, and it closes recursive loops syntactically so
// revisits deduplicate instead of growing.
ProcPtr tidy(const ProcPtr& t, const std::vector<ParamDef>& defs, const Reach& reach) {
  switch (t->k) {
    case ProcTerm::K::Par: {
      ProcPtr a = tidy(t->a, defs, reach), b = tidy(t->b, defs, reach);
      if (a->k == ProcTerm::K::Nil) return b;
      if (b->k == ProcTerm::K::Nil) return a;
      if (a == t->a && b == t->b) return t;
      return ppar(std::move(a), std::move(b));
    }
    case ProcTerm::K::Res: {
      ProcPtr body = tidy(t->a, defs, reach);
      if (body->k == ProcTerm::K::Nil) return body;
      std::set<Nat> acc;
      std::map<Nat, int> bound;
      scan_free(body, defs, reach, bound, acc);
      if (acc.count(t->chan.idx)) return body == t->a ? t : pres(t->chan, std::move(body));
      return body;
    }
    case ProcTerm::K::Cond:
      // a ground guard that is already false never fires; the component is nil
      if (free_vars(t->guard).empty() && !decide(t->guard)) return pnil();
      return t;
    default: return t;
  }
}

}  // namespace

std::vector<DirectStep> direct_transitions(const DirectState& s, const StepOpts& o) {
  Ctx ctx{&table_of(s.defs), o.vbound, o.fuel, {}};
  auto raws = trans(s.term, ctx, {});
  Reach reach = def_reach(table_of(s.defs));
  std::vector<DirectStep> out;
  out.reserve(raws.size());
  for (auto& r : raws) {
    if (!r.new_defs) {
      out.push_back({r.act, DirectState{tidy(r.next, table_of(s.defs), reach), s.defs}});
    } else {
      Reach nr = def_reach(*r.new_defs);
      out.push_back({r.act, DirectState{tidy(r.next, *r.new_defs, nr), r.new_defs}});
    }
  }
  return out;
}

DirectState make_state(const Program& p) {
  Program d = desugar(p);
  Reach reach = def_reach(d.defs);
  ProcPtr main = tidy(d.main, d.defs, reach);
  return {std::move(main), make_defs(std::move(d.defs))};
}

std::string defs_key(const DefsPtr& defs) {
  std::string k;
  for (auto& d : table_of(defs)) {
    k += '[';
    for (auto& p : d.params) {
      k += 'x';
      k += nat_str(p);
      k += ',';
    }
    k += ':';
    key_append(k, d.body);
    k += ']';
  }
  return k;
}

std::string state_key(const DirectState& s) { return term_key(s.term) + "&" + defs_key(s.defs); }

}  // namespace vpc
