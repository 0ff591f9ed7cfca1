#pragma once

#include "lts.hpp"
#include "universal.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace vpc {

// A steppable process: a term under the direct semantics, or a machine
// configuration under the code-running engine.
class Subject {
 public:
  static Subject direct(DirectState s, uint64_t fuel = 64);
  static Subject machine(std::shared_ptr<const Engine> eng, ConfigPtr c);

  std::string key() const;  // canonical dedup key, stable within one subject family
  std::vector<std::pair<Action, Subject>> steps(uint64_t vbound) const;

 private:
  struct M {
    std::shared_ptr<const Engine> eng;
    ConfigPtr c;
  };
  std::variant<DirectState, M> v_;
  uint64_t fuel_ = 64;
};

struct LtsGraph {
  uint64_t vbound = 0;
  std::vector<std::string> keys;
  std::vector<std::vector<std::pair<Action, std::size_t>>> adj;  // start state is 0
  std::vector<bool> diverges;   // lies on or tau-reaches a tau-cycle
  std::vector<bool> truncated;  // successors were cut by a cap

  std::size_t num_edges() const;
  bool any_truncated() const;
  std::string dump() const;  // "states N edges M", "src ACTION dst" lines, "div:" line
};

struct ExploreOpts {
  uint64_t vbound = 8;
  std::size_t state_cap = 4000;
  std::size_t depth_cap = 64;
};

LtsGraph explore(const Subject& s0, const ExploreOpts& o);

struct Verdict {
  bool equivalent = false;
  std::string witness;  // nonempty iff not equivalent
};

// Divergence-preserving branching bisimilarity of the two start states.
// Requires fully explored graphs at the same vbound.
Verdict bb_div_equiv(const LtsGraph& g1, const LtsGraph& g2);

// Weak observability: some non-tau edge in the tau-reachable region.
bool observable(const LtsGraph& g);

// Depth-bounded branching-bisimulation approximation for subjects whose full
// state space is out of reach (replication). Divergence is compared at a
// fixed horizon equal to the top-level depth.
bool stratified_equiv(const Subject& a, const Subject& b, uint64_t depth, uint64_t vbound);

}  // namespace vpc
