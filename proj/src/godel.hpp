#pragma once

#include "ast.hpp"
#include "nat.hpp"

namespace vpc {

// Bijective numeric codes. Every decode_* is total on the naturals; every
// encode_* is its exact inverse on the encodable fragment (no Boot/Retarget,
// no surface sugar, constructors restricted to the dialect).

Nat encode_vterm(const ValuePtr& t);
ValuePtr decode_vterm(const Nat& z);

Nat encode_formula(const FormulaPtr& f);
FormulaPtr decode_formula(const Nat& z);

Nat encode_term(const ProcPtr& t, Dialect d);
ProcPtr decode_term(const Nat& z, Dialect d);

Nat encode_program(const Program& p);  // dialect must be P
Program decode_program(const Nat& z);

// decode, substitute the (closed) value-term code t for variable v, re-encode
Nat subst_code(const Nat& z, const Nat& v, const Nat& t, Dialect d);

// evaluation straight off codes
Nat val_vterm(const Nat& z);      // closed value-term code
bool val_formula(const Nat& z);   // closed formula code

}  // namespace vpc
