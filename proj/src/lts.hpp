#pragma once

#include "ast.hpp"
#include "nat.hpp"

#include <memory>
#include <string>
#include <vector>

namespace vpc {

struct Action {
  enum class K { In, Out, Tau };
  K k = K::Tau;
  Name chan{Nat(0)};  // In/Out only
  Nat value{0};       // In/Out only; fully evaluated
  bool defcall = false;  // τ spent by the code-running engine on a definition call

  std::string str() const;  // "tau" | "in n1 5" | "out n1 5"
};

// defcall is bookkeeping, not an observable: it never enters comparisons.
bool operator==(const Action& a, const Action& b);
bool operator!=(const Action& a, const Action& b);
bool operator<(const Action& a, const Action& b);

using DefsPtr = std::shared_ptr<const std::vector<ParamDef>>;

DefsPtr make_defs(std::vector<ParamDef> defs);

struct DirectState {
  ProcPtr term;  // closed, desugared
  DefsPtr defs;
};

struct DirectStep {
  Action act;
  DirectState next;
};

struct StepOpts {
  uint64_t vbound = 8;  // external input prefixes enumerate values 0..vbound
  uint64_t fuel = 64;   // nested unguarded definition unfoldings per derivation
};

// One step of the operational semantics, bounded as per StepOpts. Input
// enumeration additionally includes values a parallel sibling can output
// right now, so internal synchronization is exact at any magnitude.
// Deterministic order: structural left-to-right, input values ascending.
std::vector<DirectStep> direct_transitions(const DirectState& s, const StepOpts& o);

// Desugared initial state of a program (runs both dialects natively).
DirectState make_state(const Program& p);

// Canonical dedup key (term content + definition table content).
std::string state_key(const DirectState& s);
std::string defs_key(const DefsPtr& defs);

}  // namespace vpc
