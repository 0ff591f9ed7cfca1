#pragma once

#include "ast.hpp"
#include "lts.hpp"
#include "nat.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace vpc {

struct AbsType {
  uint64_t local_count = 0;  // restricted names the body may use
  uint64_t param_count = 0;
  bool operator==(const AbsType& o) const {
    return local_count == o.local_count && param_count == o.param_count;
  }
  std::string str() const;  // "<i,j>"
};

// λ-abstraction over channel names; body is first-order and definition-free.
struct Abstraction {
  std::vector<Name> params;
  ProcPtr body;
  AbsType ty;
};

// Validates: body core first-order, free names within params, free variables
// none, local-name count within budget. ty = {local_count, |params|}.
Abstraction make_abstraction(std::vector<Name> params, ProcPtr body, uint64_t local_count);

// Program code of the body normalized with params as placeholder globals
// 1..j and locals j+1..j+i. α-invariant in the params.
Nat encode_abstraction(const Abstraction& a);

// Rewrites placeholder globals 1..|names| of a program code to the given
// names (local binders move to fresh identities so no occurrence is
// captured). The strict form rejects codes whose free names exceed the
// placeholder range; the total form leaves anything unexpected unchanged.
Nat retarget_code(const Nat& z, const std::vector<Name>& names);
Nat retarget_code_total(const Nat& z, const std::vector<Name>& names);

// ---------------------------------------------------------------------------
// Higher-order terms

struct HoTerm;
using HoPtr = std::shared_ptr<const HoTerm>;

struct HoTerm {
  enum class K { Nil, In, Out, Par, Res, Cond, HoIn, HoOut, AbsVarApp };
  K k;
  Name chan;
  Nat var;            // In value binder
  ValuePtr val;       // Out payload
  FormulaPtr guard;   // Cond
  HoPtr a, b;
  Nat abs_var;        // HoIn binder; AbsVarApp subject
  AbsType ty;         // HoIn declared type; AbsVarApp variable type
  std::optional<Abstraction> abs;  // HoOut payload
  std::vector<Name> app_names;     // AbsVarApp arguments
};

HoPtr hnil();
HoPtr hin(Name a, Nat x, HoPtr cont);
HoPtr hout(Name a, ValuePtr t, HoPtr cont);
HoPtr hpar(HoPtr l, HoPtr r);
HoPtr hres(Name c, HoPtr body);
HoPtr hcond(FormulaPtr guard, HoPtr body);
HoPtr hhoin(Name a, Nat abs_var, AbsType ty, HoPtr cont);
HoPtr hhoout(Name a, Abstraction payload, HoPtr cont);
HoPtr habsvar(Nat abs_var, AbsType ty, std::vector<Name> names);

// β at construction: instantiates the body's parameters with the names
// (throws on capture by the body's own binders) and embeds the result.
HoPtr ho_apply(const Abstraction& a, const std::vector<Name>& names);

HoPtr ho_embed(const ProcPtr& t);          // first-order inclusion
bool ho_first_order(const HoPtr& t);
ProcPtr ho_project(const HoPtr& t);        // inverse of ho_embed; error on HO constructs

// Replaces every application of abs_var by the applied abstraction.
HoPtr ho_subst_abs(const HoPtr& t, const Nat& abs_var, const Abstraction& a);

std::string ho_key(const HoPtr& t);  // canonical dedup key
std::string ho_show(const HoPtr& t);

// ---------------------------------------------------------------------------
// Transitions

struct HoAction {
  enum class K { Fo, HoIn, HoOut };
  K k = K::Fo;
  Action fo;           // K::Fo
  Name chan;           // HO kinds
  Abstraction abs;     // HO kinds
  std::string str() const;
};

// HO action as a first-order action over the abstraction's code.
Action ho_lower(const HoAction& a);

struct HoStep {
  HoAction act;
  HoPtr next;
};

// First-order rules as in the direct engine; abstraction inputs enumerate the
// finite candidate list (type-matched), extended by sibling abstraction
// outputs so HO communication is exact.
std::vector<HoStep> ho_transitions(const HoPtr& t, uint64_t vbound,
                                   const std::vector<Abstraction>& candidates);

// ---------------------------------------------------------------------------
// Translation to first-order VPC

// env: abstraction variable -> first-order variable holding its code.
// Abstraction outputs become code outputs; abstraction inputs become code
// inputs; an application X(a⃗) becomes a private channel carrying the
// retargeted code into a deferred program boot.
ProcPtr translate(const HoPtr& t, const std::map<Nat, Nat>& env);
ProcPtr translate(const HoPtr& t);  // closed top level, empty env

}  // namespace vpc
