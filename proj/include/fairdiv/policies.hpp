#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/rational.hpp"
#include "fairdiv/types.hpp"

namespace fairdiv {

// What an online policy is allowed to see: the valuation data of the items
// that have arrived so far, and nothing beyond. Every accessor rejects item
// ids past the arrival frontier, so a policy cannot accidentally peek at the
// future even though the experiment driver holds the whole stream.
class OnlineView {
 public:
  OnlineView(const Instance& instance, int arrived);

  int n() const { return instance_->n(); }
  int arrived() const { return arrived_; }
  ValuationClass valuation_class() const { return instance_->valuation_class(); }

  Rational value(AgentId agent, const Bundle& bundle) const;
  Rational singleton_value(AgentId agent, ItemId item) const;
  Rational marginal(AgentId agent, const Bundle& bundle, ItemId item) const;

  // Class-specific parameters. Agent-level parameters are visible in full;
  // item-level parameters only up to the arrival frontier. Each accessor
  // throws std::logic_error when the class does not carry that parameter.
  int k() const;                                    // k-demand / k-valued
  const std::vector<Rational>& agent_weights() const;  // rank-one
  Rational item_quality(ItemId item) const;            // rank-one base value
  Rational common_item_value(ItemId item) const;       // restricted additive
  bool interested(AgentId agent, ItemId item) const;   // restricted additive

 private:
  void check_arrived(ItemId item) const;

  const Instance* instance_;
  int arrived_;
};

// An item-by-item allocation rule. Policies are deterministic and stateless:
// every decision is recomputed from the visible prefix, which keeps replays
// and adversary rewinds trivially consistent.
class OnlinePolicy {
 public:
  virtual ~OnlinePolicy() = default;

  virtual std::string name() const = 0;

  // Classes for which this policy's subsidy guarantee is proven.
  virtual bool supports(ValuationClass cls) const = 0;

  // Recipient for `item`, the newest arrival. `allocation` covers exactly the
  // earlier items. Must be total for any class the view can present, except
  // where a policy structurally needs class parameters (documented below).
  virtual AgentId choose(const OnlineView& view, const Allocation& allocation,
                         ItemId item) const = 0;

  // Proven cap on the minimum subsidy after the visible prefix, or nullopt
  // when the instance's class is outside the guarantee.
  virtual std::optional<Rational> subsidy_bound(const OnlineView& view) const = 0;
};

// The six built-in policies, by registry name:
//
//   max_marginal      - highest marginal value, ties to the lowest agent id.
//                       Guarantee t(n-1) on additive-like and SPLC classes.
//   max_singleton     - highest singleton value; k-demand agents saturate at
//                       their k best items, capping subsidy at min(t,k)(n-1).
//   type_round_robin  - items of identical value profile rotate through
//                       agents in decreasing-value order; n^2 * k^n cap on
//                       k-valued instances.
//   rank_one_ladder   - keeps quality sums sorted: fills the highest-weight
//                       agent until a unit gap opens below, then repairs the
//                       gap; n(n+1)/2 - 1 cap on rank-one instances.
//   greedy_min_value_interested - among agents with positive value for the
//                       item, poorest bundle wins; n(n-1)/2 cap on restricted
//                       additive instances.
//   min_value_agent   - poorest bundle wins outright; n-1 cap when all agents
//                       share one monotone valuation.
std::unique_ptr<OnlinePolicy> make_policy(const std::string& name);
std::vector<std::string> policy_names();

}  // namespace fairdiv
