#include "smn.hpp"

#include "checker.hpp"
#include "error.hpp"
#include "godel.hpp"
#include "pairing.hpp"
#include "syntax_ops.hpp"

namespace vpc {

namespace {

// systemCode = tuple of per-definition entries, exactly as inside a program
// code. Reusing the program codec keeps the two layouts identical.
Nat system_code_of(const std::vector<ParamDef>& defs) {
  Program p;
  p.dialect = Dialect::P;
  p.defs = defs;
  p.main = pnil();
  Nat prog = encode_program(p);
  auto [m, rest] = unpair2(prog);
  auto [defs_code, main_code] = unpair2(rest);
  (void)m;
  (void)main_code;
  return defs_code;
}

std::vector<ParamDef> system_of_code(const Nat& m, const Nat& defs_code) {
  Program p = decode_program(pair2(m, pair2(defs_code, Nat(0))));
  return p.defs;
}

}  // namespace

Nat encode_def(const std::vector<ParamDef>& system, std::size_t target, const TypeSig& sig) {
  if (target < 1 || target > system.size())
    fail(ErrCode::BadArgument, "definition index out of range");
  Program p;
  p.dialect = Dialect::P;
  p.defs = system;
  p.main = pnil();
  Program norm = normalize_program(p, sig);
  Nat defs_code = system_code_of(norm.defs);
  return pair2(Nat(system.size()), pair2(defs_code, Nat(target)));
}

DefSystem decode_def(const Nat& z) {
  auto [m, rest] = unpair2(z);
  auto [defs_code, j] = unpair2(rest);
  DefSystem out;
  out.defs = system_of_code(m, defs_code);
  out.target = nat_to_size(j, "definition index");
  return out;
}

Universal universal_def(const Nat& z, const std::vector<Nat>& args, const TypeSig& sig) {
  try {
    auto [m, rest] = unpair2(z);
    auto [defs_code, j] = unpair2(rest);
    std::vector<ParamDef> defs = system_of_code(m, defs_code);
    if (j < 1 || j > Nat(defs.size())) return boot_universal(Nat(0), sig);
    const ParamDef& def = defs[nat_to_size(j, "definition index") - 1];
    if (args.size() != def.params.size()) return boot_universal(Nat(0), sig);
    std::vector<ValuePtr> call_args;
    call_args.reserve(args.size());
    for (const Nat& v : args) call_args.push_back(vnum(v));
    Nat main_code = encode_term(pcall(j, call_args), Dialect::P);
    return boot_universal(pair2(m, pair2(defs_code, main_code)), sig);
  } catch (const Error&) {
    return boot_universal(Nat(0), sig);
  }
}

Nat smn(const Nat& z, std::size_t k0, std::size_t k1, const std::vector<Nat>& vals) {
  auto [m, rest] = unpair2(z);
  auto [defs_code, j_nat] = unpair2(rest);
  std::vector<ParamDef> defs = system_of_code(m, defs_code);
  if (j_nat < 1 || j_nat > Nat(defs.size()))
    fail(ErrCode::BadArgument, "definition index out of range");
  std::size_t j = nat_to_size(j_nat, "definition index");
  if (vals.size() != k0) fail(ErrCode::BadArgument, "expected one value per fixed parameter");
  const ParamDef& def = defs[j - 1];
  if (def.params.size() != k0 + k1)
    fail(ErrCode::BadArgument, "definition arity is not k0+k1");
  // a fresh k1-ary definition forwarding to the target; recursive calls inside
  // the target keep their full arity, so specialization cannot disturb them
  ParamDef part;
  part.display = def.display + "'";
  std::vector<ValuePtr> fwd;
  fwd.reserve(k0 + k1);
  for (std::size_t i = 0; i < k0; ++i) fwd.push_back(vnum(vals[i]));
  for (std::size_t i = 0; i < k1; ++i) {
    part.params.push_back(def.params[k0 + i]);
    fwd.push_back(vvar(def.params[k0 + i]));
  }
  part.body = pcall(j_nat, std::move(fwd));
  defs.push_back(std::move(part));
  return pair2(Nat(defs.size()), pair2(system_code_of(defs), Nat(defs.size())));
}

}  // namespace vpc
