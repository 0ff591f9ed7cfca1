#pragma once

#include "ast.hpp"
#include "lts.hpp"
#include "nat.hpp"

#include <memory>
#include <string>
#include <vector>

namespace vpc {

// Machine state of the code-running engine: a tree of simulator leaves.
// Structural codes (parallel, restriction) are expanded into the tree, so a
// leaf always carries a prefix, a guard, a call, or nil.
struct Config;
using ConfigPtr = std::shared_ptr<const Config>;

struct Config {
  enum class K { NilC, Sim, ParC, ResC };
  K k;
  Nat code;        // Sim: normal-index fragment
  ConfigPtr l, r;  // ParC
  Nat res_idx;     // ResC: restricted normal index (a local slot)
  ConfigPtr body;  // ResC
};

ConfigPtr cnil();
ConfigPtr csim(Nat code);
ConfigPtr cpar(ConfigPtr l, ConfigPtr r);
ConfigPtr cres(Nat idx, ConfigPtr body);

// Definition environment entry: body kept as code, substituted per call.
struct UDef {
  std::vector<Nat> params;
  Nat body_code;
};

struct Engine {
  Dialect dialect = Dialect::Bang;
  TypeSig sig;
  std::vector<UDef> defs;  // always empty in the Bang dialect
};

struct Universal {
  Engine eng;
  ConfigPtr root;
};

// Structural expansion: code 0 -> NilC, parallel/restriction tags -> tree.
ConfigPtr expand(const Engine& eng, const Nat& code);

// Consume a replication-dialect term index: validate/normalize, else run 0.
Universal boot_interpreter(const Nat& z, const TypeSig& sig);

// Consume a whole-program index: validate/normalize the definition system and
// the main term, else run the empty program.
Universal boot_universal(const Nat& z, const TypeSig& sig);

struct UStep {
  Action act;  // definition-call taus carry act.defcall = true
  ConfigPtr next;
};

// One engine step. Mirrors the direct semantics' bounds: external inputs
// enumerate 0..vbound, sibling output values extend the enumeration so
// internal synchronization is exact. Action names are the signature's
// globals; actions on unbound local indices are dropped at the root.
std::vector<UStep> config_transitions(const Engine& eng, const ConfigPtr& c, uint64_t vbound);

std::string config_key(const ConfigPtr& c);
std::string config_str(const ConfigPtr& c);

}  // namespace vpc
