#pragma once

#include "nat.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace vpc {

struct Name {
  Nat idx;
  Name() : idx(0) {}
  explicit Name(Nat i) : idx(std::move(i)) {}
  explicit Name(unsigned long i) : idx(i) {}
  bool operator==(const Name& o) const { return idx == o.idx; }
  bool operator!=(const Name& o) const { return idx != o.idx; }
  bool operator<(const Name& o) const { return idx < o.idx; }
  std::string str() const { return "n" + nat_str(idx); }
};

enum class Dialect { Bang, P };  // Bang: replication variant; P: parametric definitions

struct TypeSig {
  std::uint64_t local_budget = 0;
  std::vector<Name> globals;  // order is significant: position m is index m in normal form

  // 1-based position of a global name index, if present.
  std::optional<std::size_t> global_pos(const Nat& idx) const;
  std::string str() const;                       // "i=0;g=n1,n2"
  static TypeSig parse(const std::string& txt);  // inverse of str
  bool operator==(const TypeSig& o) const {
    return local_budget == o.local_budget && globals == o.globals;
  }
};

// ---------------------------------------------------------------------------
// Value terms

struct ValueTerm;
using ValuePtr = std::shared_ptr<const ValueTerm>;

struct ValueTerm {
  enum class K { Num, Var, Add, Retarget };
  K k;
  Nat num;            // Num
  Nat var;            // Var
  ValuePtr lhs, rhs;  // Add (both); Retarget keeps its operand in lhs
  // Retarget only: rewrites placeholder globals of a program code it evaluates
  // over. Produced by the higher-order translation; not encodable.
  std::vector<Name> retarget_names;
};

ValuePtr vnum(Nat n);
ValuePtr vvar(Nat v);
ValuePtr vadd(ValuePtr a, ValuePtr b);
ValuePtr vretarget(ValuePtr inner, std::vector<Name> names);

// ---------------------------------------------------------------------------
// Formulas (Presburger). Negation is not a constructor: ~f is Implies(f, False).

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class K { False, True, And, Or, Implies, Exists, Forall, Lt, Eq };
  K k;
  FormulaPtr f, g;  // connectives
  Nat var;          // quantifiers
  ValuePtr s, t;    // Lt / Eq
};

FormulaPtr ffalse();
FormulaPtr ftrue();
FormulaPtr fand(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr fimplies(FormulaPtr a, FormulaPtr b);
FormulaPtr fnot(FormulaPtr a);  // sugar: builds Implies(a, False)
FormulaPtr fexists(Nat v, FormulaPtr body);
FormulaPtr fforall(Nat v, FormulaPtr body);
FormulaPtr flt(ValuePtr s, ValuePtr t);
FormulaPtr feq(ValuePtr s, ValuePtr t);

// ---------------------------------------------------------------------------
// Process terms

struct ProcTerm;
using ProcPtr = std::shared_ptr<const ProcTerm>;

struct CaseClause {
  FormulaPtr guard;
  ProcPtr body;
};

struct ProcTerm {
  // Core constructors first; IfElse/Case/Let are surface sugar that exists
  // only between parse and desugar. Boot is a runtime-only construct: it
  // receives a program code on `chan` and continues as that program.
  enum class K { Nil, In, Out, Par, Res, Cond, Call, RepIn, RepOut, Boot, IfElse, Case, Let };
  K k;
  Name chan;                       // In/Out/RepIn/RepOut/Boot subject, Res binder
  Nat var;                         // In/RepIn binder; Let binder; Case scrutinee
  ValuePtr val;                    // Out/RepOut payload; Let bound value
  FormulaPtr guard;                // Cond / IfElse
  ProcPtr a, b;                    // children: prefix continuation in a; Par l/r; IfElse then/else
  Nat def_pos;                     // Call: 1-based definition position
  std::vector<ValuePtr> args;      // Call
  TypeSig boot_sig;                // Boot
  std::vector<CaseClause> clauses; // Case
};

ProcPtr pnil();
ProcPtr pin(Name a, Nat x, ProcPtr cont);
ProcPtr pout(Name a, ValuePtr t, ProcPtr cont);
ProcPtr ppar(ProcPtr l, ProcPtr r);
ProcPtr pres(Name c, ProcPtr body);
ProcPtr pcond(FormulaPtr guard, ProcPtr body);
ProcPtr pcall(Nat def_pos, std::vector<ValuePtr> args);
ProcPtr prepin(Name a, Nat x, ProcPtr cont);
ProcPtr prepout(Name a, ValuePtr t, ProcPtr cont);
ProcPtr pboot(Name chan, TypeSig sig);
ProcPtr pifelse(FormulaPtr guard, ProcPtr then_t, ProcPtr else_t);
ProcPtr pcase(Nat scrutinee_var, std::vector<CaseClause> clauses);
ProcPtr plet(Nat v, ValuePtr t, ProcPtr body);

// ---------------------------------------------------------------------------
// Programs

struct ParamDef {
  std::string display;      // source name, for printing only
  std::vector<Nat> params;  // variable indices, pairwise distinct
  ProcPtr body;
};

struct Program {
  Dialect dialect = Dialect::P;
  std::vector<ParamDef> defs;  // order fixes call positions
  ProcPtr main;
  std::map<std::string, Nat> name_syms, var_syms;  // how source identifiers were interned
};

// ---------------------------------------------------------------------------
// Structural equality and canonical serialization (used as hash keys).

bool value_eq(const ValuePtr& a, const ValuePtr& b);
bool formula_eq(const FormulaPtr& a, const FormulaPtr& b);
bool term_eq(const ProcPtr& a, const ProcPtr& b);

void key_append(std::string& out, const ValuePtr& v);
void key_append(std::string& out, const FormulaPtr& f);
void key_append(std::string& out, const ProcPtr& t);
std::string term_key(const ProcPtr& t);

// Pretty-printing in the surface syntax (canonical identifiers n{k}/x{k}).
std::string show(const ValuePtr& v);
std::string show(const FormulaPtr& f);
std::string show(const ProcPtr& t, const Program* prog = nullptr);
std::string show(const Program& p);

}  // namespace vpc
