#include "fairdiv/adversaries.hpp"

#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fairdiv/allocation.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/oracles.hpp"
#include "fairdiv/policies.hpp"
#include "fairdiv/rational.hpp"

using namespace fairdiv;

namespace {

Rational Q(const std::string& text) { return Rational::parse(text); }

// Every defeat must stand on its own: the final stage validates for its
// class, and the witness survives independent re-verification.
void check_defeat(const AdversaryOutcome& outcome) {
  CHECK(validate_instance(outcome.final_instance).ok);
  if (outcome.kind == AdversaryOutcomeKind::kLEViolation) {
    REQUIRE(outcome.improving_permutation.has_value());
    Rational before = social_welfare(outcome.final_instance, outcome.final_allocation);
    Rational after = permuted_welfare(outcome.final_instance, outcome.final_allocation,
                                      *outcome.improving_permutation);
    CHECK(before == *outcome.welfare_before);
    CHECK(after == *outcome.welfare_after);
    CHECK(before < after);
    LeCheckResult oracle = brute_force_le(outcome.final_instance, outcome.final_allocation);
    CHECK_FALSE(oracle.locally_efficient);
  } else {
    REQUIRE(outcome.subsidy.has_value());
    REQUIRE(outcome.certified_bound.has_value());
    CHECK(outcome.subsidy->total >= *outcome.certified_bound);
    LeCheckResult oracle = brute_force_le(outcome.final_instance, outcome.final_allocation);
    CHECK(oracle.locally_efficient);
  }
}

}  // namespace

TEST_CASE("budget-additive adversary defeats the marginal-chaser in two items") {
  auto policy = make_policy("max_marginal");
  AdversaryOutcome outcome = budget_additive_adversary(*policy);

  CHECK(outcome.kind == AdversaryOutcomeKind::kLEViolation);
  CHECK(outcome.stop_reason == "improving_permutation_found");
  REQUIRE(outcome.transcript.size() == 2);
  CHECK(outcome.transcript[0].recipient == 1);  // item 1: marginals 9/10 vs 8/10
  CHECK(outcome.transcript[1].recipient == 2);  // item 2: marginals 0 vs 1/2
  CHECK(*outcome.welfare_before == Q("7/5"));
  CHECK(*outcome.welfare_after == Q("17/10"));
  CHECK(*outcome.improving_permutation == Permutation{2, 1});
  check_defeat(outcome);

  nlohmann::json j = outcome.to_json();
  CHECK(j["kind"] == "le_violation");
  CHECK(j["transcript"].size() == 2);
  CHECK(j["welfare_after"] == "17/10");
  CHECK(j["improving_permutation"] == nlohmann::json({2, 1}));
}

TEST_CASE("budget-additive adversary defeats all four scripted branches") {
  auto defeats = enumerate_scripted_defeats(
      [](const OnlinePolicy& policy) { return budget_additive_adversary(policy); }, 2);
  REQUIRE(defeats.size() == 4);
  for (const auto& defeat : defeats) {
    CHECK(defeat.outcome.kind == AdversaryOutcomeKind::kLEViolation);
    check_defeat(defeat.outcome);
    if (defeat.script[0] == 2) {
      // Giving the first item to the low-value agent is already inefficient.
      CHECK(defeat.outcome.transcript.size() == 1);
      CHECK(*defeat.outcome.welfare_before == Q("4/5"));
      CHECK(*defeat.outcome.welfare_after == Q("9/10"));
    } else if (defeat.script[1] == 1) {
      // Agent 1 hoards both items but its budget caps the bundle.
      CHECK(defeat.outcome.transcript.size() == 2);
      CHECK(*defeat.outcome.welfare_before == Q("9/10"));
      CHECK(*defeat.outcome.welfare_after == Q("1"));
    } else {
      CHECK(defeat.outcome.transcript.size() == 2);
      CHECK(*defeat.outcome.welfare_before == Q("7/5"));
      CHECK(*defeat.outcome.welfare_after == Q("17/10"));
    }
  }
}

TEST_CASE("budget-additive adversary validates its epsilon") {
  ScriptedPolicy hoard({}, 1);
  CHECK_NOTHROW(budget_additive_adversary(hoard, Q("1/8")));
  CHECK_THROWS_AS(budget_additive_adversary(hoard, Q("1/4")), std::invalid_argument);
  CHECK_THROWS_AS(budget_additive_adversary(hoard, Q("0")), std::invalid_argument);
  CHECK_THROWS_AS(budget_additive_adversary(hoard, Q("-1/10")), std::invalid_argument);
}

TEST_CASE("binary-submodular adversary defeats all sixteen scripted branches") {
  auto defeats = enumerate_scripted_defeats(
      [](const OnlinePolicy& policy) { return binary_submodular_adversary(policy); }, 4);
  REQUIRE(defeats.size() == 16);
  for (const auto& defeat : defeats) {
    const auto& script = defeat.script;
    CHECK(defeat.outcome.kind == AdversaryOutcomeKind::kLEViolation);
    check_defeat(defeat.outcome);

    AgentId leader = script[0];
    AgentId follower = 3 - leader;
    if (script[1] == follower || script[2] == leader) {
      // Split units, or a third unit wasted on the saturated leader: the
      // play ends at three items with welfare 2 against 3 for the swap.
      CHECK(defeat.outcome.transcript.size() == 3);
      CHECK(*defeat.outcome.welfare_before == Q("2"));
      CHECK(*defeat.outcome.welfare_after == Q("3"));
    } else {
      CHECK(defeat.outcome.transcript.size() == 4);
      CHECK(*defeat.outcome.welfare_before == Q("3"));
      CHECK(*defeat.outcome.welfare_after == Q("4"));
    }
    CHECK(defeat.outcome.final_instance.valuation_class() == ValuationClass::kMatroidRank);
  }
}

TEST_CASE("binary-supermodular adversary defeats all thirty-two scripted branches") {
  auto defeats = enumerate_scripted_defeats(
      [](const OnlinePolicy& policy) { return binary_supermodular_adversary(policy); }, 5);
  REQUIRE(defeats.size() == 32);
  for (const auto& defeat : defeats) {
    const auto& script = defeat.script;
    CHECK(defeat.outcome.kind == AdversaryOutcomeKind::kLEViolation);
    check_defeat(defeat.outcome);

    AgentId leader = script[0];
    AgentId follower = 3 - leader;
    std::size_t expected_items = 0;
    if (script[1] == follower) {
      expected_items = 3;  // split pair: item 3 completes only the swapped bundles
    } else if (script[2] == follower) {
      expected_items = 4;  // leader's pair + follower's third: item 4 straddles
    } else if (script[3] == leader) {
      expected_items = 4;  // leader hoards everything worthless
    } else {
      expected_items = 5;
    }
    CHECK(defeat.outcome.transcript.size() == expected_items);
    CHECK(*defeat.outcome.welfare_before == Q("0"));
    CHECK(*defeat.outcome.welfare_after == Q("1"));
    CHECK(defeat.outcome.final_instance.valuation_class() ==
          ValuationClass::kTableSupermodular);
  }
}

TEST_CASE("supermodular final stage allows a deep marginal of two") {
  // The longest branch ends with one agent valuing the full five-item set at
  // two; the class validator must accept that table.
  ScriptedPolicy policy({1, 1, 1, 2, 2});
  AdversaryOutcome outcome = binary_supermodular_adversary(policy);
  REQUIRE(outcome.transcript.size() == 5);
  Bundle everything = {1, 2, 3, 4, 5};
  CHECK(outcome.final_instance.value(2, everything) == Q("2"));
  CHECK(validate_instance(outcome.final_instance).ok);
}

TEST_CASE("phase adversary lets the interested-greedy policy survive at the exact bound") {
  auto greedy = make_policy("greedy_min_value_interested");
  struct Expected {
    int n;
    Rational total;
    int items;
  };
  const std::vector<Expected> table = {
      {3, Q("3"), 3}, {4, Q("6"), 6}, {5, Q("10"), 10}};
  for (const auto& expected : table) {
    CAPTURE(expected.n);
    AdversaryOutcome outcome = restricted_additive_adversary(*greedy, expected.n);
    CHECK(outcome.kind == AdversaryOutcomeKind::kSubsidyLowerBound);
    CHECK(outcome.stop_reason == "phases_exhausted");
    CHECK(outcome.transcript.size() == static_cast<std::size_t>(expected.items));
    CHECK(*outcome.certified_bound == Rational(expected.n * (expected.n - 1) / 2));
    CHECK(outcome.subsidy->total == expected.total);  // meets its upper bound exactly
    check_defeat(outcome);
  }
}

TEST_CASE("phase adversary traces the greedy play in full for three agents") {
  auto greedy = make_policy("greedy_min_value_interested");
  AdversaryOutcome outcome = restricted_additive_adversary(*greedy, 3);
  REQUIRE(outcome.transcript.size() == 3);
  CHECK(outcome.transcript[0].recipient == 1);
  CHECK(outcome.transcript[1].recipient == 2);
  CHECK(outcome.transcript[2].recipient == 1);
  CHECK(outcome.eliminated == std::vector<AgentId>{3, 2});
  // Agent 3 stopped valuing items after its elimination at the end of the
  // first phase.
  CHECK(outcome.transcript[2].item_values ==
        std::vector<Rational>{Q("1"), Q("1"), Q("0")});

  nlohmann::json j = outcome.to_json();
  CHECK(j["kind"] == "subsidy_lower_bound");
  CHECK(j["certified_bound"] == "3/1");
  CHECK(j["subsidy"]["total"] == "3/1");
  CHECK(j["eliminated"] == nlohmann::json({3, 2}));
}

TEST_CASE("phase adversary floods a hoarding policy into quadratic envy") {
  ScriptedPolicy hoard({}, 1);
  AdversaryOutcome outcome = restricted_additive_adversary(hoard, 3);
  CHECK(outcome.kind == AdversaryOutcomeKind::kSubsidyLowerBound);
  CHECK(outcome.stop_reason == "phase_item_cap_reached");
  CHECK(outcome.transcript.size() == 27);  // n^3 items, all to agent 1
  CHECK(*outcome.certified_bound == Q("9"));
  CHECK(*outcome.observed_envy == Q("27"));
  // Agents 2 and 3 each need the full height of agent 1's pile.
  CHECK(outcome.subsidy->total == Q("54"));
  check_defeat(outcome);
}

TEST_CASE("phase adversary with a custom cap certifies the observed envy") {
  ScriptedPolicy hoard({}, 1);
  AdversaryOutcome outcome = restricted_additive_adversary(hoard, 3, 5);
  CHECK(outcome.stop_reason == "phase_item_cap_reached");
  CHECK(outcome.transcript.size() == 5);
  CHECK(*outcome.certified_bound == Q("5"));
  CHECK(*outcome.observed_envy == Q("5"));
  CHECK(outcome.subsidy->total == Q("10"));
  check_defeat(outcome);
}

TEST_CASE("phase adversary punishes feeding an eliminated agent") {
  // Two items establish agent 3 as the starved eliminee; the third item goes
  // straight to it, wasting a unit of welfare.
  ScriptedPolicy policy({1, 2, 3});
  AdversaryOutcome outcome = restricted_additive_adversary(policy, 3);
  CHECK(outcome.kind == AdversaryOutcomeKind::kLEViolation);
  CHECK(outcome.stop_reason == "item_to_eliminated_agent");
  REQUIRE(outcome.transcript.size() == 3);
  CHECK(*outcome.welfare_before == Q("2"));
  CHECK(*outcome.welfare_after == Q("3"));
  CHECK(*outcome.improving_permutation == Permutation{3, 2, 1});
  CHECK(outcome.eliminated == std::vector<AgentId>{3});
  check_defeat(outcome);
}

TEST_CASE("phase adversary rotates a two-link elimination chain") {
  // Phases eliminate agents 4 then 3; the sixth item goes to the first
  // eliminee, so the fix shifts bundles along 4 -> 3 -> (fresh) 1 -> 4.
  ScriptedPolicy policy({1, 2, 3, 1, 2, 4});
  AdversaryOutcome outcome = restricted_additive_adversary(policy, 4);
  CHECK(outcome.kind == AdversaryOutcomeKind::kLEViolation);
  CHECK(outcome.stop_reason == "item_to_eliminated_agent");
  REQUIRE(outcome.transcript.size() == 6);
  CHECK(*outcome.welfare_before == Q("5"));
  CHECK(*outcome.welfare_after == Q("6"));
  CHECK(*outcome.improving_permutation == Permutation{4, 2, 1, 3});
  CHECK(outcome.eliminated == std::vector<AgentId>{4, 3});
  check_defeat(outcome);
  // The generic oracle agrees the chain reaches the welfare optimum.
  LeCheckResult oracle = brute_force_le(outcome.final_instance, outcome.final_allocation);
  CHECK(oracle.best_welfare == Q("6"));
}

TEST_CASE("phase adversary rejects degenerate agent counts") {
  ScriptedPolicy hoard({}, 1);
  CHECK_THROWS_AS(restricted_additive_adversary(hoard, 1), std::invalid_argument);
}

TEST_CASE("adversary dispatch routes names and parameters") {
  CHECK(adversary_names() ==
        std::vector<std::string>{"budget-additive", "binary-submodular",
                                 "binary-supermodular", "restricted-additive"});

  auto policy = make_policy("max_marginal");
  AdversaryOutcome budget = run_adversary("budget-additive", *policy, {});
  CHECK(budget.kind == AdversaryOutcomeKind::kLEViolation);

  AdversaryParams params;
  params.epsilon = Q("1/8");
  AdversaryOutcome tuned = run_adversary("budget-additive", *policy, params);
  CHECK(tuned.transcript[0].item_values ==
        std::vector<Rational>{Q("7/8"), Q("3/4")});

  auto greedy = make_policy("greedy_min_value_interested");
  AdversaryParams phase_params;
  phase_params.n = 3;
  AdversaryOutcome phases = run_adversary("restricted-additive", *greedy, phase_params);
  CHECK(phases.subsidy->total == Q("3"));

  CHECK_THROWS_AS(run_adversary("restricted-additive", *greedy, {}),
                  std::invalid_argument);  // missing n
  CHECK_THROWS_AS(run_adversary("no-such-adversary", *policy, {}), std::invalid_argument);
}

TEST_CASE("scripted policy plays its script then the fallback") {
  ScriptedPolicy policy({2, 1}, 2);
  Instance instance(2, 3, ValuationClass::kAdditive,
                    AdditiveSpec{{{Q("1"), Q("1"), Q("1")}, {Q("1"), Q("1"), Q("1")}}});
  Allocation allocation(2);
  OnlineView view(instance, 1);
  CHECK(policy.choose(view, allocation, 1) == 2);
  CHECK(policy.choose(view, allocation, 2) == 1);
  CHECK(policy.choose(view, allocation, 3) == 2);  // past the script
  CHECK(policy.supports(ValuationClass::kTableSupermodular));
  CHECK_FALSE(policy.subsidy_bound(view).has_value());
}
