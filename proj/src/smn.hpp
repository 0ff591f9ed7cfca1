#pragma once

#include "ast.hpp"
#include "nat.hpp"
#include "universal.hpp"

#include <vector>

namespace vpc {

// Index of one definition inside its (possibly mutually recursive) system:
// pair(m, pair(systemCode, j)) with j 1-based.
Nat encode_def(const std::vector<ParamDef>& system, std::size_t target, const TypeSig& sig);

struct DefSystem {
  std::vector<ParamDef> defs;
  std::size_t target = 0;  // 1-based
};
DefSystem decode_def(const Nat& z);

// Interpreter configuration for the target definition applied to numeric
// arguments. Malformed index, target out of range or arity mismatch give the
// inert configuration.
Universal universal_def(const Nat& z, const std::vector<Nat>& args, const TypeSig& sig);

// Parameter specialization: fixes the first k0 parameters of the target
// definition to the given values, leaving a k1-ary definition index. Purely
// arithmetic on the index; no interpreter involved.
Nat smn(const Nat& z, std::size_t k0, std::size_t k1, const std::vector<Nat>& vals);

}  // namespace vpc
