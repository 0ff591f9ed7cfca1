#pragma once

#include "ast.hpp"
#include "nat.hpp"

#include <optional>
#include <string>

namespace vpc {

// Why a raw index fails validation against a TypeSig.
enum class ViolationKind {
  FreeVariable,    // value variable not bound by an enclosing input
  GlobalBudget,    // free name outside the signature's globals
  LocalBudget,     // more distinct restricted names than the local budget
  OpenFormula,     // formula mentions a variable not bound in scope
  DialectMismatch  // constructor foreign to the dialect (or runtime-only)
};

struct Violation {
  ViolationKind kind;
  std::string path;  // slash-separated route into the offending subterm
  std::string str() const;
};

// AST-level validation. `bound` seeds the variable context (def params).
std::optional<Violation> check_term(const ProcPtr& t, const TypeSig& sig, Dialect d,
                                    const std::vector<Nat>& bound = {});
std::optional<Violation> check_program(const Program& p, const TypeSig& sig);

// Code-level validation; total on u64-scale codes (decode resource guards may
// throw on astronomically wide tuples — parse_index absorbs even those).
std::optional<Violation> grammar_check(const Nat& z, const TypeSig& sig, Dialect d);
std::optional<Violation> grammar_check_program(const Nat& z, const TypeSig& sig);

// Canonical renaming: free names to their 1-based position in sig.globals,
// restricted names to k+1..k+i per identity in first-binder order. Variables
// are untouched. Throws BadArgument when the check precondition fails.
ProcPtr normalize_term(const ProcPtr& t, const TypeSig& sig, Dialect d,
                       const std::vector<Nat>& bound = {});
Program normalize_program(const Program& p, const TypeSig& sig);
Nat normalize(const Nat& z, const TypeSig& sig, Dialect d);
Nat normalize_program_code(const Nat& z, const TypeSig& sig);

// Total parsers: the normal index when valid, else 0 (the code of 0).
Nat parse_index(const Nat& z, const TypeSig& sig, Dialect d);
Nat parse_program_index(const Nat& z, const TypeSig& sig);

// parse_program_index plus the decoded result, for engines.
struct ParsedProgram {
  bool ok = false;  // false: prog is the empty program, code 0
  Program prog;
  Nat code;
};
ParsedProgram parse_program(const Nat& z, const TypeSig& sig);

}  // namespace vpc
