#pragma once

#include "ast.hpp"
#include "nat.hpp"

namespace vpc {

// Evaluates a closed value term. Throws OpenTerm on free variables.
Nat eval_term(const ValuePtr& t);

// Decides a closed linear-arithmetic sentence over the naturals by quantifier
// elimination (universals handled as negated existentials). Throws OpenTerm
// when the sentence has free variables.
bool decide(const FormulaPtr& f);

// Bounded-enumeration oracle: quantifiers range over 0..bound. Agrees with
// decide() whenever all witnesses/counterexamples fit under the bound.
bool brute_decide(const FormulaPtr& f, std::uint64_t bound);

}  // namespace vpc
