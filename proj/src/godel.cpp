#include "godel.hpp"

#include "error.hpp"
#include "pairing.hpp"
#include "presburger.hpp"
#include "syntax_ops.hpp"

namespace vpc {

namespace {

// keeps hostile inputs from materializing absurd tuples; 64-bit codes stay
// far below this
constexpr std::uint64_t kTupleCap = 1u << 22;

std::size_t checked_len(const Nat& n, const char* what) {
  if (n >= kTupleCap) fail(ErrCode::BadArgument, std::string(what) + " of " + nat_str(n) + " elements is unreasonably large");
  return n.convert_to<std::size_t>();
}

unsigned modulus(Dialect d) { return d == Dialect::Bang ? 7 : 6; }

}  // namespace

Nat encode_vterm(const ValuePtr& t) {
  switch (t->k) {
    case ValueTerm::K::Num: return 3 * t->num;
    case ValueTerm::K::Var: return 3 * t->var + 1;
    case ValueTerm::K::Add: return 3 * pair2(encode_vterm(t->lhs), encode_vterm(t->rhs)) + 2;
    case ValueTerm::K::Retarget: fail(ErrCode::Dialect, "retarget expressions are not encodable");
  }
  fail(ErrCode::Internal, "bad value term");
}

ValuePtr decode_vterm(const Nat& z) {
  Nat r = z % 3, q = z / 3;
  if (r == 0) return vnum(q);
  if (r == 1) return vvar(q);
  auto [a, b] = unpair2(q);
  return vadd(decode_vterm(a), decode_vterm(b));
}

Nat encode_formula(const FormulaPtr& f) {
  auto tagged = [](unsigned r, const Nat& q) { return 7 * q + r + 2; };
  switch (f->k) {
    case Formula::K::False: return 0;
    case Formula::K::True: return 1;
    case Formula::K::And: return tagged(0, pair2(encode_formula(f->f), encode_formula(f->g)));
    case Formula::K::Or: return tagged(1, pair2(encode_formula(f->f), encode_formula(f->g)));
    case Formula::K::Implies: return tagged(2, pair2(encode_formula(f->f), encode_formula(f->g)));
    case Formula::K::Exists: return tagged(3, pair2(f->var, encode_formula(f->f)));
    case Formula::K::Forall: return tagged(4, pair2(f->var, encode_formula(f->f)));
    case Formula::K::Lt: return tagged(5, pair2(encode_vterm(f->s), encode_vterm(f->t)));
    case Formula::K::Eq: return tagged(6, pair2(encode_vterm(f->s), encode_vterm(f->t)));
  }
  fail(ErrCode::Internal, "bad formula");
}

FormulaPtr decode_formula(const Nat& z) {
  if (z == 0) return ffalse();
  if (z == 1) return ftrue();
  Nat m = z - 2;
  unsigned r = (m % 7).convert_to<unsigned>();
  auto [a, b] = unpair2(m / 7);
  switch (r) {
    case 0: return fand(decode_formula(a), decode_formula(b));
    case 1: return f_or(decode_formula(a), decode_formula(b));
    case 2: return fimplies(decode_formula(a), decode_formula(b));
    case 3: return fexists(a, decode_formula(b));
    case 4: return fforall(a, decode_formula(b));
    case 5: return flt(decode_vterm(a), decode_vterm(b));
    default: return feq(decode_vterm(a), decode_vterm(b));
  }
}

Nat encode_term(const ProcPtr& t, Dialect d) {
  unsigned m = modulus(d);
  auto tagged = [m](unsigned tag, const Nat& payload) { return m * payload + tag; };
  switch (t->k) {
    case ProcTerm::K::Nil: return 0;
    case ProcTerm::K::In:
      return tagged(1, pair_list({t->chan.idx, t->var, encode_term(t->a, d)}));
    case ProcTerm::K::Out:
      return tagged(2, pair_list({t->chan.idx, encode_vterm(t->val), encode_term(t->a, d)}));
    case ProcTerm::K::Par:
      return tagged(3, pair_list({encode_term(t->a, d), encode_term(t->b, d)}));
    case ProcTerm::K::Res:
      return tagged(4, pair_list({t->chan.idx, encode_term(t->a, d)}));
    case ProcTerm::K::Cond:
      return tagged(5, pair_list({encode_formula(t->guard), encode_term(t->a, d)}));
    case ProcTerm::K::RepIn:
      if (d != Dialect::Bang) fail(ErrCode::Dialect, "replication is not encodable in this dialect");
      return tagged(6, pair_list({t->chan.idx, t->var, encode_term(t->a, d)}));
    case ProcTerm::K::RepOut:
      if (d != Dialect::Bang) fail(ErrCode::Dialect, "replication is not encodable in this dialect");
      return tagged(7, pair_list({t->chan.idx, encode_vterm(t->val), encode_term(t->a, d)}));
    case ProcTerm::K::Call: {
      if (d != Dialect::P) fail(ErrCode::Dialect, "definition calls are not encodable in this dialect");
      // arguments as a self-delimiting list: [] -> 0, c:rest -> 1 + pair2(c, rest')
      Nat seq = 0;
      for (auto it = t->args.rbegin(); it != t->args.rend(); ++it)
        seq = 1 + pair2(encode_vterm(*it), seq);
      return tagged(6, pair2(t->def_pos, seq));
    }
    case ProcTerm::K::Boot:
      fail(ErrCode::Dialect, "boot leaves are runtime-only and not encodable");
    case ProcTerm::K::IfElse:
    case ProcTerm::K::Case:
    case ProcTerm::K::Let:
      fail(ErrCode::Dialect, "desugar before encoding");
  }
  fail(ErrCode::Internal, "bad process term");
}

ProcPtr decode_term(const Nat& z, Dialect d) {
  if (z == 0) return pnil();
  auto [tag, payload] = tag_split(z, modulus(d));
  unsigned r = tag.convert_to<unsigned>();
  if (d == Dialect::P && r == 6) {
    auto [j, seq] = unpair2(payload);
    std::vector<ValuePtr> args;
    while (seq != 0) {
      auto [h, rest] = unpair2(seq - 1);  // rest < seq: the walk terminates
      args.push_back(decode_vterm(h));
      seq = rest;
    }
    return pcall(j, std::move(args));
  }
  switch (r) {
    case 1: {
      auto p = unpair_list(payload, 3);
      return pin(Name{p[0]}, p[1], decode_term(p[2], d));
    }
    case 2: {
      auto p = unpair_list(payload, 3);
      return pout(Name{p[0]}, decode_vterm(p[1]), decode_term(p[2], d));
    }
    case 3: {
      auto p = unpair_list(payload, 2);
      return ppar(decode_term(p[0], d), decode_term(p[1], d));
    }
    case 4: {
      auto p = unpair_list(payload, 2);
      return pres(Name{p[0]}, decode_term(p[1], d));
    }
    case 5: {
      auto p = unpair_list(payload, 2);
      return pcond(decode_formula(p[0]), decode_term(p[1], d));
    }
    case 6: {  // Bang only: replicated input
      auto p = unpair_list(payload, 3);
      return prepin(Name{p[0]}, p[1], decode_term(p[2], d));
    }
    default: {  // 7, Bang only: replicated output
      auto p = unpair_list(payload, 3);
      return prepout(Name{p[0]}, decode_vterm(p[1]), decode_term(p[2], d));
    }
  }
}

Nat encode_program(const Program& p) {
  if (p.dialect != Dialect::P)
    fail(ErrCode::Dialect, "only definition-based programs have program codes");
  std::vector<Nat> def_entries;
  def_entries.reserve(p.defs.size());
  for (auto& d : p.defs) {
    std::vector<Nat> inner = d.params;
    inner.push_back(encode_term(d.body, Dialect::P));
    def_entries.push_back(pair2(Nat(d.params.size()), pair_list(inner)));
  }
  return pair2(Nat(p.defs.size()), pair2(pair_list(def_entries), encode_term(p.main, Dialect::P)));
}

Program decode_program(const Nat& z) {
  auto [k, rest] = unpair2(z);
  std::size_t n_defs = checked_len(k, "definition table");
  auto [defs_code, main_code] = unpair2(rest);
  Program p;
  p.dialect = Dialect::P;
  auto entries = unpair_list(defs_code, n_defs);
  for (std::size_t i = 0; i < n_defs; ++i) {
    auto [arity, inner] = unpair2(entries[i]);
    std::size_t n_params = checked_len(arity, "parameter list");
    auto parts = unpair_list(inner, n_params + 1);
    ParamDef d;
    d.display = "D" + std::to_string(i + 1);
    d.params.assign(parts.begin(), parts.end() - 1);
    d.body = decode_term(parts.back(), Dialect::P);
    p.defs.push_back(std::move(d));
  }
  p.main = decode_term(main_code, Dialect::P);
  return p;
}

Nat subst_code(const Nat& z, const Nat& v, const Nat& t, Dialect d) {
  return encode_term(subst_value(decode_term(z, d), v, decode_vterm(t)), d);
}

Nat val_vterm(const Nat& z) { return eval_term(decode_vterm(z)); }

bool val_formula(const Nat& z) { return decide(decode_formula(z)); }

}  // namespace vpc
