#include "fairdiv/adversaries.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fairdiv/engine.hpp"
#include "fairdiv/oracles.hpp"

namespace fairdiv {

namespace {

using nlohmann::json;

struct PlayState {
  Allocation allocation;
  std::vector<AdversaryStep> transcript;
};

// Presents the current stage (items 1..m with their stage valuations) to the
// policy, assigns the newest item, and records the move. A stage that fails
// class validation is a bug in the adversary, not a policy failure.
AgentId play_item(const Instance& stage, const OnlinePolicy& policy, PlayState& state) {
  ValidationReport report = validate_instance(stage);
  if (!report.ok) {
    throw std::logic_error("adversary produced an invalid stage instance: " +
                           report.issues.front());
  }
  ItemId item = stage.m();
  AgentId recipient = policy_choice(stage, state.allocation, policy, item);
  AdversaryStep step;
  step.item = item;
  step.recipient = recipient;
  for (AgentId agent = 1; agent <= stage.n(); ++agent) {
    step.item_values.push_back(stage.singleton_value(agent, item));
  }
  state.allocation.give(recipient, item);
  state.transcript.push_back(std::move(step));
  return recipient;
}

// Packages a defeat-by-permutation, re-verifying the strict welfare gain.
AdversaryOutcome le_violation(Instance instance, PlayState state, Permutation witness,
                              std::string stop_reason) {
  Rational before = social_welfare(instance, state.allocation);
  Rational after = permuted_welfare(instance, state.allocation, witness);
  if (!(before < after)) {
    throw std::logic_error("adversary witness permutation does not improve welfare");
  }
  AdversaryOutcome outcome;
  outcome.kind = AdversaryOutcomeKind::kLEViolation;
  outcome.stop_reason = std::move(stop_reason);
  outcome.final_instance = std::move(instance);
  outcome.final_allocation = std::move(state.allocation);
  outcome.transcript = std::move(state.transcript);
  outcome.improving_permutation = std::move(witness);
  outcome.welfare_before = std::move(before);
  outcome.welfare_after = std::move(after);
  return outcome;
}

// Defeat check after a move: if the allocation is no longer locally
// efficient, finish the play with the welfare-optimal permutation as witness.
std::optional<AdversaryOutcome> le_defeat(const Instance& stage, const PlayState& state) {
  LeCheckResult check = brute_force_le(stage, state.allocation);
  if (check.locally_efficient) {
    return std::nullopt;
  }
  return le_violation(stage, state, check.best_permutation, "improving_permutation_found");
}

[[noreturn]] void undefeated(const std::string& which) {
  throw std::logic_error(which + " adversary failed to defeat the policy");
}

// Adaptive stages may only extend the instance: every bundle of already
// arrived items must keep its value, or the policy's earlier observations
// would be retroactively falsified. Exhaustive over 2^m bundles; the tree
// adversaries stay at m <= 5.
void assert_restriction(const Instance& prev, const Instance& next) {
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << prev.m()); ++mask) {
    Bundle bundle = bundle_from_mask(mask);
    for (AgentId agent = 1; agent <= prev.n(); ++agent) {
      if (prev.value(agent, bundle) != next.value(agent, bundle)) {
        throw std::logic_error("adversary stage changed the value of an arrived bundle");
      }
    }
  }
}

}  // namespace

AdversaryOutcome budget_additive_adversary(const OnlinePolicy& policy,
                                           const Rational& epsilon) {
  // eps > 0 separates the two first-item values; eps < 1/4 keeps the swap
  // after "both items to agent 1" strictly better (2 - 3eps > 3/2 - eps).
  if (!epsilon.is_positive() || !(epsilon < Rational(1, 4))) {
    throw std::invalid_argument("budget-additive adversary needs epsilon in (0, 1/4)");
  }
  const Rational one(1);
  std::vector<Rational> budgets = {one - epsilon, one};
  std::vector<std::vector<Rational>> values = {{one - epsilon},
                                               {one - epsilon - epsilon}};
  PlayState state{Allocation(2), {}};

  Instance first(2, 1, ValuationClass::kBudgetAdditive, BudgetAdditiveSpec{budgets, values});
  play_item(first, policy, state);
  if (auto defeat = le_defeat(first, state)) {
    return std::move(*defeat);  // item 1 went to agent 2: swap already wins
  }

  // Agent 1 now holds its full budget, so item 2 is marginally worthless to
  // it; yet giving item 2 away makes the swapped bundles worth strictly more.
  values[0].push_back(one - epsilon);
  values[1].push_back(Rational(1, 2));
  Instance second(2, 2, ValuationClass::kBudgetAdditive,
                  BudgetAdditiveSpec{std::move(budgets), std::move(values)});
  assert_restriction(first, second);
  play_item(second, policy, state);
  if (auto defeat = le_defeat(second, state)) {
    return std::move(*defeat);
  }
  undefeated("budget-additive");
}

AdversaryOutcome binary_submodular_adversary(const OnlinePolicy& policy) {
  PlayState state{Allocation(2), {}};
  auto stage = [](int m, std::vector<Bundle> agent1_bases, std::vector<Bundle> agent2_bases) {
    return Instance(2, m, ValuationClass::kMatroidRank,
                    MatroidRankSpec{{std::move(agent1_bases), std::move(agent2_bases)}});
  };

  // Items 1 and 2 are interchangeable units for both agents.
  Instance first = stage(1, {{1}}, {{1}});
  AgentId leader = play_item(first, policy, state);
  if (auto defeat = le_defeat(first, state)) {
    return std::move(*defeat);
  }
  Instance second = stage(2, {{1, 2}}, {{1, 2}});
  assert_restriction(first, second);
  AgentId with_b = play_item(second, policy, state);
  if (auto defeat = le_defeat(second, state)) {
    return std::move(*defeat);
  }

  AgentId follower = 3 - leader;
  auto by_role = [&](int m, std::vector<Bundle> leader_bases,
                     std::vector<Bundle> follower_bases) {
    std::vector<std::vector<Bundle>> bases(2);
    bases[static_cast<std::size_t>(leader) - 1] = std::move(leader_bases);
    bases[static_cast<std::size_t>(follower) - 1] = std::move(follower_bases);
    return Instance(2, m, ValuationClass::kMatroidRank, MatroidRankSpec{std::move(bases)});
  };

  if (with_b == follower) {
    // Split units: item 3 substitutes only for the unit each agent does NOT
    // hold, so either placement leaves a bundle swap one unit better.
    Instance third = by_role(3, {{1, 2}, {2, 3}}, {{1, 2}, {1, 3}});
    assert_restriction(second, third);
    play_item(third, policy, state);
    if (auto defeat = le_defeat(third, state)) {
      return std::move(*defeat);
    }
    undefeated("binary-submodular");
  }

  // The leader hoards both units. Its matroid now saturates at rank two while
  // the follower could use three of the four items at full rank.
  Instance third = by_role(3, {{1, 2}, {1, 3}, {2, 3}}, {{1, 2, 3}});
  assert_restriction(second, third);
  AgentId with_c = play_item(third, policy, state);
  if (auto defeat = le_defeat(third, state)) {
    return std::move(*defeat);  // item 3 to the leader: welfare 2, swapped 3
  }
  if (with_c == leader) {
    undefeated("binary-submodular");
  }
  Instance fourth =
      by_role(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}, {{1, 2, 3}, {1, 2, 4}});
  assert_restriction(third, fourth);
  play_item(fourth, policy, state);
  if (auto defeat = le_defeat(fourth, state)) {
    return std::move(*defeat);  // either placement: welfare 3, swapped 4
  }
  undefeated("binary-submodular");
}

AdversaryOutcome binary_supermodular_adversary(const OnlinePolicy& policy) {
  PlayState state{Allocation(2), {}};

  // v(S) = number of required sets contained in S. Sums of superset
  // indicators are supermodular, monotone, and zero on singletons here.
  auto counting_table = [](int m, std::vector<std::uint32_t> required) {
    std::vector<Rational> table(std::size_t{1} << m);
    for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
      int hits = 0;
      for (std::uint32_t req : required) {
        if ((mask & req) == req) {
          ++hits;
        }
      }
      table[mask] = Rational(hits);
    }
    return table;
  };
  auto zeros = [&](int m) { return counting_table(m, {}); };

  // Items 1 and 2 are worthless alone and together.
  Instance first(2, 1, ValuationClass::kTableSupermodular, TableSpec{{zeros(1), zeros(1)}});
  AgentId leader = play_item(first, policy, state);
  if (auto defeat = le_defeat(first, state)) {
    return std::move(*defeat);
  }
  Instance second(2, 2, ValuationClass::kTableSupermodular, TableSpec{{zeros(2), zeros(2)}});
  assert_restriction(first, second);
  AgentId with_b = play_item(second, policy, state);
  if (auto defeat = le_defeat(second, state)) {
    return std::move(*defeat);
  }

  AgentId follower = 3 - leader;
  auto by_role = [&](int m, std::vector<Rational> leader_table,
                     std::vector<Rational> follower_table) {
    std::vector<std::vector<Rational>> tables(2);
    tables[static_cast<std::size_t>(leader) - 1] = std::move(leader_table);
    tables[static_cast<std::size_t>(follower) - 1] = std::move(follower_table);
    return Instance(2, m, ValuationClass::kTableSupermodular, TableSpec{std::move(tables)});
  };

  if (with_b == follower) {
    // Each agent's only valuable pair combines item 3 with the unit held by
    // the OTHER agent, so either placement makes the swap worth one.
    Instance third = by_role(3, counting_table(3, {0b110}), counting_table(3, {0b101}));
    assert_restriction(second, third);
    play_item(third, policy, state);
    if (auto defeat = le_defeat(third, state)) {
      return std::move(*defeat);
    }
    undefeated("binary-supermodular");
  }

  // The leader holds both units; item 3 is still worthless everywhere.
  Instance third(2, 3, ValuationClass::kTableSupermodular, TableSpec{{zeros(3), zeros(3)}});
  assert_restriction(second, third);
  AgentId with_c = play_item(third, policy, state);
  if (auto defeat = le_defeat(third, state)) {
    return std::move(*defeat);
  }

  if (with_c == follower) {
    // Leader wants {3,4}+supersets, follower wants {1,2,4}+supersets: item 4
    // completes the other agent's bundle, never the holder's.
    Instance fourth = by_role(4, counting_table(4, {0b1100}), counting_table(4, {0b1011}));
    assert_restriction(third, fourth);
    play_item(fourth, policy, state);
    if (auto defeat = le_defeat(fourth, state)) {
      return std::move(*defeat);
    }
    undefeated("binary-supermodular");
  }

  // Leader holds {1,2,3}. Only the follower could use the full four-item set.
  Instance fourth = by_role(4, zeros(4), counting_table(4, {0b1111}));
  assert_restriction(third, fourth);
  AgentId with_d = play_item(fourth, policy, state);
  if (auto defeat = le_defeat(fourth, state)) {
    return std::move(*defeat);  // item 4 kept by the leader: welfare 0 vs 1
  }
  if (with_d == leader) {
    undefeated("binary-supermodular");
  }
  // Leader now values {4,5}+supersets; follower completes a unit with either
  // remaining four-set, two units with all five items. Marginals stay 0/1.
  Instance fifth =
      by_role(5, counting_table(5, {0b11000}), counting_table(5, {0b01111, 0b10111}));
  assert_restriction(fourth, fifth);
  play_item(fifth, policy, state);
  if (auto defeat = le_defeat(fifth, state)) {
    return std::move(*defeat);
  }
  undefeated("binary-supermodular");
}

AdversaryOutcome restricted_additive_adversary(const OnlinePolicy& policy, int n,
                                               int phase_item_cap) {
  if (n < 2) {
    throw std::invalid_argument("phase adversary needs at least 2 agents");
  }
  const int cap = phase_item_cap > 0 ? phase_item_cap : n * n * n;
  const bool default_cap = phase_item_cap <= 0;

  PlayState state{Allocation(n), {}};
  RestrictedAdditiveSpec spec;
  spec.interested.assign(static_cast<std::size_t>(n), {});
  std::vector<bool> active(static_cast<std::size_t>(n), true);
  std::vector<AgentId> eliminated;
  std::optional<Instance> last_stage;

  // With unit items and every item held by an agent that was active at its
  // arrival, an active agent's bundle value is exactly its bundle size.
  auto items_held = [&](AgentId i) {
    return static_cast<int>(state.allocation.bundle(i).size());
  };

  auto finish_lower_bound = [&](std::string stop_reason, Rational certified,
                                std::optional<Rational> observed) {
    if (!last_stage.has_value()) {
      throw std::logic_error("phase adversary finished without feeding any item");
    }
    StepOutcome final = assess_allocation(*last_stage, state.allocation);
    if (!final.locally_efficient || !final.subsidy.has_value()) {
      throw std::logic_error("phase adversary expected a locally efficient allocation");
    }
    if (final.subsidy->total < certified) {
      throw std::logic_error("phase adversary subsidy fell below the certified bound");
    }
    AdversaryOutcome outcome;
    outcome.kind = AdversaryOutcomeKind::kSubsidyLowerBound;
    outcome.stop_reason = std::move(stop_reason);
    outcome.final_instance = *std::move(last_stage);
    outcome.final_allocation = std::move(state.allocation);
    outcome.transcript = std::move(state.transcript);
    outcome.eliminated = std::move(eliminated);
    outcome.subsidy = std::move(final.subsidy);
    outcome.certified_bound = std::move(certified);
    outcome.observed_envy = std::move(observed);
    return outcome;
  };

  for (int phase = 1; phase <= n - 1; ++phase) {
    int fewest = -1;
    for (AgentId i = 1; i <= n; ++i) {
      if (!active[static_cast<std::size_t>(i) - 1]) continue;
      if (fewest < 0 || items_held(i) < fewest) fewest = items_held(i);
    }
    std::vector<AgentId> candidates;
    for (AgentId i = 1; i <= n; ++i) {
      if (active[static_cast<std::size_t>(i) - 1] && items_held(i) == fewest) {
        candidates.push_back(i);
      }
    }
    std::vector<bool> served(candidates.size(), false);
    int unserved = static_cast<int>(candidates.size());
    std::vector<int> fed_this_phase(static_cast<std::size_t>(n), 0);
    int phase_items = 0;

    while (true) {
      if (unserved == 1) {
        // All other poorest agents were served; starve the remaining one.
        for (std::size_t c = 0; c < candidates.size(); ++c) {
          if (!served[c]) {
            active[static_cast<std::size_t>(candidates[c]) - 1] = false;
            eliminated.push_back(candidates[c]);
            break;
          }
        }
        break;
      }

      // One more unit item, valued only by the agents still in the game.
      spec.item_values.push_back(Rational(1));
      for (AgentId i = 1; i <= n; ++i) {
        spec.interested[static_cast<std::size_t>(i) - 1].push_back(
            active[static_cast<std::size_t>(i) - 1]);
      }
      Instance stage(n, static_cast<int>(spec.item_values.size()),
                     ValuationClass::kBinaryAdditive, spec);
      AgentId recipient = play_item(stage, policy, state);
      last_stage = stage;

      if (!active[static_cast<std::size_t>(recipient) - 1]) {
        // The newest item is wasted: its holder values it at zero. Rotating
        // bundles along the elimination chain from that holder to a still
        // unserved poorest agent recovers the lost unit exactly.
        AgentId fresh = 0;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
          if (!served[c]) {
            fresh = candidates[c];
            break;
          }
        }
        auto from = std::find(eliminated.begin(), eliminated.end(), recipient);
        Permutation pi = identity_permutation(n);
        std::vector<AgentId> chain(from, eliminated.end());
        chain.push_back(fresh);
        for (std::size_t t = 0; t + 1 < chain.size(); ++t) {
          pi[static_cast<std::size_t>(chain[t]) - 1] = chain[t + 1];
        }
        pi[static_cast<std::size_t>(fresh) - 1] = recipient;

        const int m = stage.m();
        Rational before = social_welfare(stage, state.allocation);
        Rational after = permuted_welfare(stage, state.allocation, pi);
        if (before != Rational(m - 1) || after != Rational(m)) {
          throw std::logic_error("phase adversary chain permutation has unexpected welfare");
        }
        AdversaryOutcome outcome =
            le_violation(std::move(stage), std::move(state), std::move(pi),
                         "item_to_eliminated_agent");
        outcome.eliminated = std::move(eliminated);
        return outcome;
      }

      ++phase_items;
      ++fed_this_phase[static_cast<std::size_t>(recipient) - 1];
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (candidates[c] == recipient && !served[c]) {
          served[c] = true;
          --unserved;
        }
      }

      if (phase_items >= cap) {
        // Some agent soaked up at least cap/n items this phase while some
        // poorest agent got none; the starved one envies the soaked one by
        // the difference in bundle sizes.
        AgentId starved = 0;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
          if (!served[c]) {
            starved = candidates[c];
            break;
          }
        }
        AgentId soaked = 0;
        for (AgentId i = 1; i <= n; ++i) {
          if (soaked == 0 ||
              fed_this_phase[static_cast<std::size_t>(i) - 1] >
                  fed_this_phase[static_cast<std::size_t>(soaked) - 1]) {
            soaked = i;
          }
        }
        Rational envy = Rational(items_held(soaked) - items_held(starved));
        Rational certified = default_cap ? Rational(n * n) : envy;
        if (default_cap && envy < certified) {
          throw std::logic_error("phase adversary observed envy below n^2 at the default cap");
        }
        return finish_lower_bound("phase_item_cap_reached", std::move(certified),
                                  std::move(envy));
      }
    }
  }

  // Every phase ended by starving one poorest agent: the eliminated agents
  // form a chain of unit envies ending at the survivor, so the heaviest
  // paths sum to at least 1 + 2 + ... + (n-1).
  return finish_lower_bound("phases_exhausted", Rational(n * (n - 1) / 2), std::nullopt);
}

AdversaryOutcome run_adversary(const std::string& name, const OnlinePolicy& policy,
                               const AdversaryParams& params) {
  if (name == "budget-additive") {
    return budget_additive_adversary(
        policy, params.epsilon.is_zero() ? Rational(1, 10) : params.epsilon);
  }
  if (name == "binary-submodular") {
    return binary_submodular_adversary(policy);
  }
  if (name == "binary-supermodular") {
    return binary_supermodular_adversary(policy);
  }
  if (name == "restricted-additive") {
    if (params.n < 2) {
      throw std::invalid_argument("restricted-additive adversary needs --n of at least 2");
    }
    return restricted_additive_adversary(policy, params.n, params.phase_item_cap);
  }
  throw std::invalid_argument("unknown adversary: " + name);
}

std::vector<std::string> adversary_names() {
  return {"budget-additive", "binary-submodular", "binary-supermodular",
          "restricted-additive"};
}

ScriptedPolicy::ScriptedPolicy(std::vector<AgentId> choices, AgentId fallback)
    : choices_(std::move(choices)), fallback_(fallback) {}

AgentId ScriptedPolicy::choose(const OnlineView&, const Allocation&, ItemId item) const {
  std::size_t index = static_cast<std::size_t>(item) - 1;
  return index < choices_.size() ? choices_[index] : fallback_;
}

std::vector<BranchDefeat> enumerate_scripted_defeats(
    const std::function<AdversaryOutcome(const OnlinePolicy&)>& adversary, int depth,
    int n_agents) {
  std::vector<BranchDefeat> defeats;
  std::vector<AgentId> script(static_cast<std::size_t>(depth), 1);
  while (true) {
    ScriptedPolicy policy(script);
    defeats.push_back({script, adversary(policy)});
    // Advance the script like an odometer, most-significant move first.
    int position = depth - 1;
    while (position >= 0 && script[static_cast<std::size_t>(position)] == n_agents) {
      script[static_cast<std::size_t>(position)] = 1;
      --position;
    }
    if (position < 0) {
      return defeats;
    }
    ++script[static_cast<std::size_t>(position)];
  }
}

nlohmann::json AdversaryOutcome::to_json() const {
  json j;
  j["kind"] = kind == AdversaryOutcomeKind::kLEViolation ? "le_violation"
                                                         : "subsidy_lower_bound";
  j["stop_reason"] = stop_reason;
  j["final_instance"] = final_instance.to_json();
  j["final_allocation"] = final_allocation.to_json();
  json steps = json::array();
  for (const auto& step : transcript) {
    json s;
    s["item"] = step.item;
    s["recipient"] = step.recipient;
    json values = json::array();
    for (const auto& v : step.item_values) {
      values.push_back(v.format());
    }
    s["item_values"] = std::move(values);
    steps.push_back(std::move(s));
  }
  j["transcript"] = std::move(steps);
  if (!eliminated.empty()) {
    j["eliminated"] = eliminated;
  }
  if (improving_permutation.has_value()) {
    j["improving_permutation"] = *improving_permutation;
    j["welfare_before"] = welfare_before->format();
    j["welfare_after"] = welfare_after->format();
  }
  if (subsidy.has_value()) {
    j["subsidy"] = subsidy->to_json();
    j["certified_bound"] = certified_bound->format();
    if (observed_envy.has_value()) {
      j["observed_envy"] = observed_envy->format();
    }
  }
  return j;
}

}  // namespace fairdiv
