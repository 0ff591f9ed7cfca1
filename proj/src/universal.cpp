#include "universal.hpp"

#include "checker.hpp"
#include "error.hpp"
#include "godel.hpp"
#include "pairing.hpp"
#include "presburger.hpp"
#include "syntax_ops.hpp"

#include <map>
#include <set>

namespace vpc {

namespace {
ConfigPtr mk(Config c) { return std::make_shared<const Config>(std::move(c)); }
}  // namespace

ConfigPtr cnil() {
  static const ConfigPtr c = mk({Config::K::NilC, Nat(0), nullptr, nullptr, Nat(0), nullptr});
  return c;
}

ConfigPtr csim(Nat code) {
  if (code == 0) return cnil();  // 0 is the nil index in every dialect
  return mk({Config::K::Sim, std::move(code), nullptr, nullptr, Nat(0), nullptr});
}

// Both composites absorb nil: keeps residual configurations small and lets
// revisited shapes deduplicate.
ConfigPtr cpar(ConfigPtr l, ConfigPtr r) {
  if (l->k == Config::K::NilC) return r;
  if (r->k == Config::K::NilC) return l;
  return mk({Config::K::ParC, Nat(0), std::move(l), std::move(r), Nat(0), nullptr});
}

ConfigPtr cres(Nat idx, ConfigPtr body) {
  if (body->k == Config::K::NilC) return body;
  return mk({Config::K::ResC, Nat(0), nullptr, nullptr, std::move(idx), std::move(body)});
}

namespace {
unsigned modulus(Dialect d) { return d == Dialect::Bang ? 7u : 6u; }
}  // namespace

ConfigPtr expand(const Engine& eng, const Nat& code) {
  auto [r, d] = tag_split(code, modulus(eng.dialect));
  if (r == 0) return cnil();
  if (r == 3) {
    auto [a, b] = unpair2(d);
    return cpar(expand(eng, a), expand(eng, b));
  }
  if (r == 4) {
    auto [c, t] = unpair2(d);
    return cres(c, expand(eng, t));
  }
  if (r == 5) {
    // a ground guard that is already false never fires; the component is nil
    auto [f, body] = unpair2(d);
    (void)body;
    FormulaPtr guard = decode_formula(f);
    if (free_vars(guard).empty() && !decide(guard)) return cnil();
  }
  return csim(code);
}

Universal boot_interpreter(const Nat& z, const TypeSig& sig) {
  Universal u;
  u.eng = Engine{Dialect::Bang, sig, {}};
  u.root = expand(u.eng, parse_index(z, sig, Dialect::Bang));
  return u;
}

Universal boot_universal(const Nat& z, const TypeSig& sig) {
  Universal u;
  u.eng.dialect = Dialect::P;
  u.eng.sig = sig;
  ParsedProgram pp = parse_program(z, sig);
  for (auto& d : pp.prog.defs)
    u.eng.defs.push_back({d.params, encode_term(d.body, Dialect::P)});
  u.root = expand(u.eng, encode_term(pp.prog.main, Dialect::P));
  return u;
}

namespace {

using Extras = std::map<Nat, std::set<Nat>>;  // raw name index -> sibling output values

void merge_extras(Extras& into, const Extras& add) {
  for (auto& [c, vs] : add) into[c].insert(vs.begin(), vs.end());
}

struct Raw {
  Action act;  // chan.idx is a RAW normal index until mapped at the root
  ConfigPtr next;
};

void outs(const Engine& eng, const ConfigPtr& c, Extras& acc) {
  switch (c->k) {
    case Config::K::NilC: return;
    case Config::K::ParC:
      outs(eng, c->l, acc);
      outs(eng, c->r, acc);
      return;
    case Config::K::ResC: {
      Extras inner;
      outs(eng, c->body, inner);
      inner.erase(c->res_idx);
      merge_extras(acc, inner);
      return;
    }
    case Config::K::Sim: {
      auto [r, d] = tag_split(c->code, modulus(eng.dialect));
      if (r == 2 || (eng.dialect == Dialect::Bang && r == 7)) {
        auto [a, tail] = unpair2(d);
        auto [tv, cont] = unpair2(tail);
        (void)cont;
        acc[a].insert(val_vterm(tv));
        return;
      }
      if (r == 5) {
        auto [f, body] = unpair2(d);
        if (val_formula(f)) outs(eng, expand(eng, body), acc);
        return;
      }
      if (r == 3 || r == 4) outs(eng, expand(eng, c->code), acc);
      // inputs and definition calls contribute no first-step output
      return;
    }
  }
}

std::vector<Raw> ntrans(const Engine& eng, const ConfigPtr& c, uint64_t vbound,
                        const Extras& extras) {
  switch (c->k) {
    case Config::K::NilC: return {};

    case Config::K::ParC: {
      Extras ex_l = extras, ex_r = extras;
      {
        Extras sib;
        outs(eng, c->r, sib);
        merge_extras(ex_l, sib);
      }
      {
        Extras sib;
        outs(eng, c->l, sib);
        merge_extras(ex_r, sib);
      }
      auto ls = ntrans(eng, c->l, vbound, ex_l);
      auto rs = ntrans(eng, c->r, vbound, ex_r);
      std::vector<Raw> out;
      for (auto& s : ls) out.push_back({s.act, cpar(s.next, c->r)});
      for (auto& s : rs) out.push_back({s.act, cpar(c->l, s.next)});
      for (auto& o : ls)
        if (o.act.k == Action::K::Out)
          for (auto& i : rs)
            if (i.act.k == Action::K::In && i.act.chan == o.act.chan &&
                i.act.value == o.act.value)
              out.push_back({Action{Action::K::Tau}, cpar(o.next, i.next)});
      for (auto& o : rs)
        if (o.act.k == Action::K::Out)
          for (auto& i : ls)
            if (i.act.k == Action::K::In && i.act.chan == o.act.chan &&
                i.act.value == o.act.value)
              out.push_back({Action{Action::K::Tau}, cpar(i.next, o.next)});
      return out;
    }

    case Config::K::ResC: {
      Extras inner = extras;
      inner.erase(c->res_idx);
      auto ss = ntrans(eng, c->body, vbound, inner);
      std::vector<Raw> out;
      for (auto& s : ss) {
        if (s.act.k != Action::K::Tau && s.act.chan.idx == c->res_idx) continue;
        out.push_back({s.act, cres(c->res_idx, s.next)});
      }
      return out;
    }

    case Config::K::Sim: {
      auto [tag, d] = tag_split(c->code, modulus(eng.dialect));
      if (tag == 0 || tag == 3 || tag == 4)
        return ntrans(eng, expand(eng, c->code), vbound, extras);

      if (tag == 1 || (eng.dialect == Dialect::Bang && tag == 6)) {
        auto [a, tail] = unpair2(d);
        auto [x, body] = unpair2(tail);
        std::vector<Raw> out;
        auto emit = [&, a_ = a, x_ = x, body_ = body](const Nat& v) {
          ConfigPtr cont = expand(eng, subst_code(body_, x_, encode_vterm(vnum(v)), eng.dialect));
          if (tag == 6) cont = cpar(cont, c);  // replication respawns the leaf
          out.push_back({Action{Action::K::In, Name(a_), v}, std::move(cont)});
        };
        for (uint64_t v = 0; v <= vbound; ++v) emit(Nat(v));
        if (auto it = extras.find(a); it != extras.end())
          for (auto& v : it->second)
            if (v > vbound) emit(v);
        return out;
      }

      if (tag == 2 || (eng.dialect == Dialect::Bang && tag == 7)) {
        auto [a, tail] = unpair2(d);
        auto [tv, body] = unpair2(tail);
        ConfigPtr cont = expand(eng, body);
        if (tag == 7) cont = cpar(cont, c);
        return {{Action{Action::K::Out, Name(a), val_vterm(tv)}, std::move(cont)}};
      }

      if (tag == 5) {
        auto [f, body] = unpair2(d);
        if (!val_formula(f)) return {};
        return ntrans(eng, expand(eng, body), vbound, extras);
      }

      // P dialect, tag 6: definition call, one bookkeeping tau
      auto [j, seq] = unpair2(d);
      if (j < 1 || j > Nat(eng.defs.size())) return {};  // unknown definition: inert
      const UDef& def = eng.defs[nat_to_size(j) - 1];
      std::vector<Nat> argcodes;
      while (seq != 0) {
        auto [h, tail] = unpair2(seq - 1);
        argcodes.push_back(h);
        seq = tail;
      }
      if (argcodes.size() != def.params.size()) {
        // reinterpret at the declared arity, exactly as the direct engine does
        Nat packed = pair_list(argcodes);
        argcodes.clear();
        if (!def.params.empty()) argcodes = unpair_list(packed, def.params.size());
      }
      Nat body = def.body_code;
      for (std::size_t i = 0; i < def.params.size(); ++i)
        body = subst_code(body, def.params[i], argcodes[i], Dialect::P);
      Action act;
      act.k = Action::K::Tau;
      act.defcall = true;
      return {{act, expand(eng, body)}};
    }
  }
  fail(ErrCode::Internal, "bad config");
}

}  // namespace

std::vector<UStep> config_transitions(const Engine& eng, const ConfigPtr& c, uint64_t vbound) {
  auto raws = ntrans(eng, c, vbound, {});
  std::vector<UStep> out;
  out.reserve(raws.size());
  for (auto& r : raws) {
    if (r.act.k == Action::K::Tau) {
      out.push_back({r.act, r.next});
      continue;
    }
    if (r.act.chan.idx >= 1 && r.act.chan.idx <= Nat(eng.sig.globals.size())) {
      Action a = r.act;
      a.chan = eng.sig.globals[nat_to_size(r.act.chan.idx) - 1];
      out.push_back({a, r.next});
    }
    // actions on unbound local indices never surface
  }
  return out;
}

namespace {

void key_cfg(const ConfigPtr& c, std::string& out) {
  switch (c->k) {
    case Config::K::NilC: out += '0'; return;
    case Config::K::Sim:
      out += 's';
      out += nat_str(c->code);
      return;
    case Config::K::ParC:
      out += '(';
      key_cfg(c->l, out);
      out += '|';
      key_cfg(c->r, out);
      out += ')';
      return;
    case Config::K::ResC:
      out += 'r';
      out += nat_str(c->res_idx);
      out += '(';
      key_cfg(c->body, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string config_key(const ConfigPtr& c) {
  std::string out;
  key_cfg(c, out);
  return out;
}

std::string config_str(const ConfigPtr& c) {
  switch (c->k) {
    case Config::K::NilC: return "0";
    case Config::K::Sim: return "[" + nat_str(c->code) + "]";
    case Config::K::ParC: return "(" + config_str(c->l) + " | " + config_str(c->r) + ")";
    case Config::K::ResC: return "(n" + nat_str(c->res_idx) + ")" + config_str(c->body);
  }
  return "?";
}

}  // namespace vpc
