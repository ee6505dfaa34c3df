#pragma once

#include <stdexcept>
#include <string>

#include "fairdiv/allocation.hpp"
#include "fairdiv/envy_graph.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/rational.hpp"
#include "fairdiv/types.hpp"

namespace fairdiv {

// Thrown when a brute-force oracle is asked to exceed its enumeration budget.
// Callers that sweep over instance sizes treat this as "too big to verify",
// distinct from a verification failure.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Enumeration budgets. Environment variables override the defaults:
//   FAIRDIV_MAX_PERM_AGENTS  - agents for n!-permutation sweeps
//   FAIRDIV_MAX_PATH_AGENTS  - agents for simple-path enumeration
//   FAIRDIV_MAX_ASSIGNMENTS  - total n^m assignments for offline sweeps
struct OracleCaps {
  int max_permutation_agents = 8;
  int max_path_agents = 7;
  long long max_assignments = 1000000;

  static OracleCaps from_env();
};

// ---------------------------------------------------------------------------
// Local efficiency by definition: try every bundle permutation and compare
// welfare. Independent of the envy-graph cycle detector on purpose; the two
// must agree and tests hold them to that.

struct LeCheckResult {
  bool locally_efficient = true;
  Rational current_welfare;
  Rational best_welfare;
  Permutation best_permutation;  // lexicographically first optimum
};

LeCheckResult brute_force_le(const Instance& instance, const Allocation& allocation,
                             const OracleCaps& caps = OracleCaps::from_env());

// Heaviest simple path out of every vertex by depth-first enumeration,
// clamped at zero (the empty path). Independent of the dynamic program in
// min_subsidy; on envy-freeable graphs the two must agree.
SubsidyReport brute_force_heaviest_paths(const EnvyGraph& graph,
                                         const OracleCaps& caps = OracleCaps::from_env());

// ---------------------------------------------------------------------------
// Offline sweeps over all n^m assignments, in lexicographic order of the
// item->agent vector so ties resolve deterministically.

struct OfflineOptimum {
  Allocation allocation;
  SubsidyReport subsidy;
  Rational welfare;
};

// Minimum total subsidy over all locally efficient allocations (a welfare
// maximizer is always locally efficient, so the search space is never empty).
OfflineOptimum brute_force_min_subsidy_offline(const Instance& instance,
                                               const OracleCaps& caps = OracleCaps::from_env());

struct WelfareOptimum {
  Allocation allocation;
  Rational welfare;
};

WelfareOptimum brute_force_max_welfare(const Instance& instance,
                                       const OracleCaps& caps = OracleCaps::from_env());

}  // namespace fairdiv
