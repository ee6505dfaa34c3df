#pragma once

#include <optional>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/envy_graph.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/policies.hpp"
#include "fairdiv/rational.hpp"
#include "fairdiv/types.hpp"

namespace fairdiv {

// Snapshot after handing one item to the policy's chosen agent. The subsidy
// report exists exactly when the prefix allocation is locally efficient; a
// positive envy cycle makes subsidies meaningless and marks the policy as
// defeated on this stream.
struct StepRecord {
  int step = 0;  // 1-based; equals the item id, since ids are arrival order
  ItemId item = 0;
  std::vector<Rational> item_values;  // v_i({item}) for every agent
  AgentId recipient = 0;
  bool locally_efficient = true;
  std::optional<SubsidyReport> subsidy;
  std::optional<Rational> bound;  // policy guarantee at this prefix, if proven
  std::optional<Rational> slack;  // bound - subsidy, when both exist
};

struct RunResult {
  std::vector<StepRecord> steps;
  Allocation final_allocation;
  bool always_locally_efficient = true;
  // Largest subsidy over locally efficient prefixes, and the first step where
  // it is attained. The online cost of a policy is this maximum: payments fix
  // the envy present at that moment, whether or not later items dilute it.
  Rational max_prefix_subsidy;
  int max_prefix_step = 0;
  std::optional<SubsidyReport> final_subsidy;  // present iff the last step is LE
};

struct EngineOptions {
  bool stop_on_le_failure = false;  // keep allocating past a defeat by default
};

// Local efficiency plus exact minimum subsidy for one allocation.
struct StepOutcome {
  bool locally_efficient = true;
  std::optional<SubsidyReport> subsidy;
};
StepOutcome assess_allocation(const Instance& instance, const Allocation& allocation);

// The policy's pick for `next_item` given the prefix before it, through the
// guarded view (items past `next_item` stay invisible even if the instance
// already contains them).
AgentId policy_choice(const Instance& instance, const Allocation& allocation,
                      const OnlinePolicy& policy, ItemId next_item);

// Feed the instance's items in arrival order to the policy, assessing every
// prefix. Throws std::invalid_argument if the policy's choice is out of range.
RunResult run_online(const Instance& instance, const OnlinePolicy& policy,
                     const EngineOptions& options = {});

}  // namespace fairdiv
