#pragma once

#include "ast.hpp"

#include <set>

namespace vpc {

struct Analysis {
  std::set<Nat> free_vars;
  std::vector<Name> global_names;   // first free occurrence order
  std::uint64_t local_name_count;   // distinct name identities under a restriction binder
};

Analysis analyze(const ProcPtr& t);
// whole program: main first, then bodies; def parameters do not count as free
Analysis analyze_program(const Program& p);

std::set<Nat> free_vars(const ValuePtr& t);
std::set<Nat> free_vars(const FormulaPtr& f);
std::set<Nat> free_vars(const ProcPtr& t);

// Capture-checked substitution of value term s for variable v. Binders are
// never renamed: if a binder would capture a free variable of s, this throws
// ErrCode::Capture.
ValuePtr subst_value(const ValuePtr& t, const Nat& v, const ValuePtr& s);
FormulaPtr subst_value(const FormulaPtr& f, const Nat& v, const ValuePtr& s);
ProcPtr subst_value(const ProcPtr& t, const Nat& v, const ValuePtr& s);

// Expands two-leg ifs, case chains and lets; output contains core
// constructors only. Idempotent.
ProcPtr desugar(const ProcPtr& t);
Program desugar(const Program& p);

// Rewrites every replicated prefix !pre.S into a fresh parametric definition
// C(x⃗) = pre.S | C(x⃗) instantiated at the prefix's free variables. The result
// is replication-free and uses the definition dialect.
Program derive_replication(const Program& p);

}  // namespace vpc
