#include "fairdiv/engine.hpp"

#include <stdexcept>
#include <string>

namespace fairdiv {

StepOutcome assess_allocation(const Instance& instance, const Allocation& allocation) {
  const EnvyGraph graph = build_envy_graph(instance, allocation);
  StepOutcome outcome;
  if (find_positive_cycle(graph).has_value()) {
    outcome.locally_efficient = false;
    return outcome;
  }
  outcome.subsidy = min_subsidy(graph);
  return outcome;
}

AgentId policy_choice(const Instance& instance, const Allocation& allocation,
                      const OnlinePolicy& policy, ItemId next_item) {
  if (allocation.total_items() != next_item - 1) {
    throw std::invalid_argument("policy_choice: allocation does not match the prefix before item " +
                                std::to_string(next_item));
  }
  const OnlineView view(instance, next_item);
  const AgentId choice = policy.choose(view, allocation, next_item);
  if (choice < 1 || choice > instance.n()) {
    throw std::invalid_argument("policy '" + policy.name() + "' chose agent " +
                                std::to_string(choice) + " outside 1.." +
                                std::to_string(instance.n()));
  }
  return choice;
}

RunResult run_online(const Instance& instance, const OnlinePolicy& policy,
                     const EngineOptions& options) {
  RunResult result;
  result.final_allocation = Allocation(instance.n());

  for (ItemId item = 1; item <= instance.m(); ++item) {
    StepRecord record;
    record.step = item;
    record.item = item;
    for (AgentId i = 1; i <= instance.n(); ++i) {
      record.item_values.push_back(instance.singleton_value(i, item));
    }

    record.recipient = policy_choice(instance, result.final_allocation, policy, item);
    result.final_allocation.give(record.recipient, item);

    const StepOutcome outcome = assess_allocation(instance, result.final_allocation);
    record.locally_efficient = outcome.locally_efficient;
    record.subsidy = outcome.subsidy;
    if (!outcome.locally_efficient) {
      result.always_locally_efficient = false;
    }

    const OnlineView after(instance, item);
    record.bound = policy.subsidy_bound(after);
    if (record.bound.has_value() && record.subsidy.has_value()) {
      record.slack = *record.bound - record.subsidy->total;
    }

    if (record.subsidy.has_value() &&
        (result.max_prefix_step == 0 || record.subsidy->total > result.max_prefix_subsidy)) {
      result.max_prefix_subsidy = record.subsidy->total;
      result.max_prefix_step = record.step;
    }

    const bool defeated = !record.locally_efficient;
    result.steps.push_back(std::move(record));
    if (defeated && options.stop_on_le_failure) {
      break;
    }
  }

  if (result.steps.empty()) {
    // Empty stream: the empty allocation is trivially envy-free.
    SubsidyReport zero;
    zero.payments.assign(static_cast<std::size_t>(instance.n()), Rational(0));
    result.final_subsidy = std::move(zero);
  } else {
    result.final_subsidy = result.steps.back().subsidy;
  }
  return result;
}

}  // namespace fairdiv
