#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/generators.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/policies.hpp"
#include "fairdiv/rational.hpp"

using namespace fairdiv;

namespace {

// Runs the policy over the whole stream and returns the recipients in order.
std::vector<AgentId> trace(const Instance& inst, const OnlinePolicy& policy) {
  Allocation alloc(inst.n());
  std::vector<AgentId> picks;
  for (ItemId g = 1; g <= inst.m(); ++g) {
    const OnlineView view(inst, g);
    const AgentId who = policy.choose(view, alloc, g);
    alloc.give(who, g);
    picks.push_back(who);
  }
  return picks;
}

}  // namespace

TEST_CASE("online view hides items past the frontier") {
  const Instance inst = make_additive_lower_bound(2, 2, Rational(1, 2));
  const OnlineView view(inst, 1);
  CHECK(view.arrived() == 1);
  CHECK(view.singleton_value(1, 1) == Rational(7, 8));
  CHECK_THROWS_AS(view.singleton_value(1, 2), std::logic_error);
  CHECK_THROWS_AS(view.value(1, {2}), std::logic_error);
  CHECK_THROWS_AS(view.value(1, {1, 2}), std::logic_error);
  CHECK_THROWS_AS(view.marginal(1, {}, 2), std::logic_error);
  CHECK_NOTHROW(view.value(1, {1}));
  CHECK_THROWS_AS(OnlineView(inst, 3), std::out_of_range);

  // Class parameters outside the instance's class are inaccessible.
  CHECK_THROWS_AS(view.k(), std::logic_error);
  CHECK_THROWS_AS(view.agent_weights(), std::logic_error);
  CHECK_THROWS_AS(view.item_quality(1), std::logic_error);
  CHECK_THROWS_AS(view.common_item_value(1), std::logic_error);
  CHECK_THROWS_AS(view.interested(1, 1), std::logic_error);

  const Instance ladder = make_rank_one_lower_bound(2, Rational(1, 40));
  const OnlineView lview(ladder, 1);
  CHECK(lview.agent_weights().size() == 2);
  CHECK(lview.item_quality(1) == Rational(157, 160));
  CHECK_THROWS_AS(lview.item_quality(2), std::logic_error);  // not yet arrived
}

TEST_CASE("max_marginal hoards the lower-bound stream onto agent 1") {
  const Instance inst = make_additive_lower_bound(3, 4, Rational(1, 2));
  const auto policy = make_policy("max_marginal");
  CHECK(trace(inst, *policy) == std::vector<AgentId>{1, 1, 1, 1});
  CHECK(policy->supports(ValuationClass::kAdditive));
  CHECK(policy->supports(ValuationClass::kSplc));
  CHECK(policy->supports(ValuationClass::kBinaryAdditive));
  CHECK_FALSE(policy->supports(ValuationClass::kBudgetAdditive));
  CHECK_FALSE(policy->supports(ValuationClass::kMatroidRank));

  const OnlineView view(inst, 4);
  CHECK(policy->subsidy_bound(view) == Rational(8));  // t(n-1) = 4 * 2
}

TEST_CASE("max_marginal breaks ties toward the lower agent id") {
  AdditiveSpec spec;
  spec.values = {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(3, 4)}};
  const Instance inst(2, 2, ValuationClass::kAdditive, spec);
  const auto policy = make_policy("max_marginal");
  CHECK(trace(inst, *policy) == std::vector<AgentId>{1, 2});
}

TEST_CASE("max_singleton serves whoever names the highest price") {
  const Instance inst = make_unit_demand_inefficiency_example();
  const auto policy = make_policy("max_singleton");
  CHECK(trace(inst, *policy) == std::vector<AgentId>{1, 1});
  CHECK(policy->supports(ValuationClass::kKDemand));
  CHECK_FALSE(policy->supports(ValuationClass::kAdditive));

  // k = 1 caps the bound at min(t, k)(n - 1) = 1 for every prefix.
  CHECK(policy->subsidy_bound(OnlineView(inst, 1)) == Rational(1));
  CHECK(policy->subsidy_bound(OnlineView(inst, 2)) == Rational(1));
}

TEST_CASE("type_round_robin rotates each value profile through the ranking") {
  KValuedSpec spec;
  spec.k = 2;
  // Items alternate between profile A = (1/2, 1/4) and B = (1/4, 1/2).
  spec.values = {{Rational(1, 2), Rational(1, 4), Rational(1, 2), Rational(1, 4)},
                 {Rational(1, 4), Rational(1, 2), Rational(1, 4), Rational(1, 2)}};
  const Instance inst(2, 4, ValuationClass::kKValued, spec);
  CHECK(validate_instance(inst).ok);
  const auto policy = make_policy("type_round_robin");
  // First A to its top agent 1, first B to its top agent 2, second A to the
  // runner-up 2, second B to the runner-up 1.
  CHECK(trace(inst, *policy) == std::vector<AgentId>{1, 2, 2, 1});

  CHECK(policy->subsidy_bound(OnlineView(inst, 1)) == Rational(16));  // n^2 k^n

  // Value ties inside a profile rotate by agent id.
  KValuedSpec tied;
  tied.k = 1;
  tied.values = {{Rational(1, 2), Rational(1, 2), Rational(1, 2)},
                 {Rational(1, 2), Rational(1, 2), Rational(1, 2)}};
  const Instance flat(2, 3, ValuationClass::kKValued, tied);
  CHECK(trace(flat, *policy) == std::vector<AgentId>{1, 2, 1});
}

TEST_CASE("rank_one_ladder fills the top and repairs unit gaps") {
  const auto policy = make_policy("rank_one_ladder");

  const Instance two = make_rank_one_lower_bound(2, Rational(1, 40));
  CHECK(trace(two, *policy) == std::vector<AgentId>{1, 1, 2});
  CHECK(policy->subsidy_bound(OnlineView(two, 1)) == Rational(2));

  const Instance three = make_rank_one_lower_bound(3, Rational(1, 90));
  CHECK(trace(three, *policy) == std::vector<AgentId>{1, 1, 2, 1, 2, 3});
  CHECK(policy->subsidy_bound(OnlineView(three, 1)) == Rational(5));

  CHECK(policy->supports(ValuationClass::kRankOne));
  CHECK_FALSE(policy->supports(ValuationClass::kAdditive));
}

TEST_CASE("greedy_min_value_interested serves the poorest interested agent") {
  RestrictedAdditiveSpec spec;
  spec.item_values.assign(5, Rational(1, 2));
  spec.interested = {
      {true, false, false, true, false},
      {true, true, false, true, false},
      {true, true, true, true, false},
  };
  const Instance inst(3, 5, ValuationClass::kRestrictedAdditive, spec);
  const auto policy = make_policy("greedy_min_value_interested");
  // Item 1: three-way tie at zero -> agent 1. Item 2: agents 2,3 tie -> 2.
  // Item 3: only agent 3. Item 4: all tie at 1/2 -> agent 1. Item 5: nobody
  // wants it -> parks on agent 1.
  CHECK(trace(inst, *policy) == std::vector<AgentId>{1, 2, 3, 1, 1});
  CHECK(policy->subsidy_bound(OnlineView(inst, 1)) == Rational(3));  // n(n-1)/2
  CHECK(policy->supports(ValuationClass::kRestrictedAdditive));
  CHECK(policy->supports(ValuationClass::kBinaryAdditive));
  CHECK_FALSE(policy->supports(ValuationClass::kAdditive));
}

TEST_CASE("min_value_agent tracks the poorest bundle") {
  TableSpec spec;
  const std::vector<Rational> table = {Rational(0), Rational(1, 2), Rational(1, 2), Rational(1)};
  spec.tables = {table, table, table};
  const Instance inst(3, 2, ValuationClass::kIdenticalMonotone, spec);
  const auto policy = make_policy("min_value_agent");
  CHECK(trace(inst, *policy) == std::vector<AgentId>{1, 2});
  CHECK(policy->subsidy_bound(OnlineView(inst, 1)) == Rational(2));  // n - 1
  CHECK(policy->supports(ValuationClass::kIdenticalMonotone));
  CHECK_FALSE(policy->supports(ValuationClass::kTable));
}

TEST_CASE("policy registry") {
  CHECK(policy_names().size() == 6);
  for (const std::string& name : policy_names()) {
    const auto policy = make_policy(name);
    CHECK(policy->name() == name);
  }
  CHECK_THROWS_AS(make_policy("does_not_exist"), std::invalid_argument);
}

TEST_CASE("bounds vanish off the supported classes") {
  const Instance inst = make_additive_lower_bound(2, 2, Rational(1, 2));
  const OnlineView view(inst, 1);
  CHECK_FALSE(make_policy("max_singleton")->subsidy_bound(view).has_value());
  CHECK_FALSE(make_policy("type_round_robin")->subsidy_bound(view).has_value());
  CHECK_FALSE(make_policy("rank_one_ladder")->subsidy_bound(view).has_value());
  CHECK_FALSE(make_policy("min_value_agent")->subsidy_bound(view).has_value());
  CHECK(make_policy("max_marginal")->subsidy_bound(view).has_value());
}
