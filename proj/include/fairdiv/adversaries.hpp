#pragma once

#include "json.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/envy_graph.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/policies.hpp"
#include "fairdiv/rational.hpp"
#include "fairdiv/types.hpp"

namespace fairdiv {

// Adaptive adversaries feed items to a policy one at a time, choosing each
// item's valuations after seeing every earlier decision, and stop with one of
// two certificates:
//
//   LEViolation      - the allocation admits a bundle permutation with
//                      strictly larger welfare, so no payments can make it
//                      envy-free.
//   SubsidyLowerBound - the allocation is locally efficient but its exact
//                      minimum subsidy is at least the certified bound.
//
// Every certificate is re-verified exactly before it is returned; a failed
// verification is a bug in the adversary, reported as std::logic_error.
enum class AdversaryOutcomeKind { kLEViolation, kSubsidyLowerBound };

// One move of the play: `item` arrived with the given singleton values and
// the policy sent it to `recipient`.
struct AdversaryStep {
  ItemId item = 0;
  AgentId recipient = 0;
  std::vector<Rational> item_values;
};

struct AdversaryOutcome {
  AdversaryOutcomeKind kind = AdversaryOutcomeKind::kLEViolation;
  // Mechanical trigger that ended the play: "improving_permutation_found",
  // "item_to_eliminated_agent", "phase_item_cap_reached", "phases_exhausted".
  std::string stop_reason;

  // Final stage of the play. Earlier stages are restrictions of this
  // instance to shorter item prefixes.
  Instance final_instance;
  Allocation final_allocation;
  std::vector<AdversaryStep> transcript;
  std::vector<AgentId> eliminated;  // phase adversary: elimination order

  // LEViolation: permutation with strictly larger welfare than the identity.
  std::optional<Permutation> improving_permutation;
  std::optional<Rational> welfare_before;
  std::optional<Rational> welfare_after;

  // SubsidyLowerBound: exact minimum subsidy of the final allocation, the
  // bound it provably meets, and (when applicable) the single observed envy
  // edge that witnesses the bound.
  std::optional<SubsidyReport> subsidy;
  std::optional<Rational> certified_bound;
  std::optional<Rational> observed_envy;

  nlohmann::json to_json() const;
};

// Knobs for `run_adversary`. Zero values select per-adversary defaults.
struct AdversaryParams {
  int n = 0;                 // agents (phase adversary; others are 2-agent)
  Rational epsilon;          // budget-additive value separation, default 1/10
  int phase_item_cap = 0;    // phase adversary items per phase, default n^3
};

// Two budget-additive items force a welfare-improving swap whatever the
// policy does: item 1 is worth (1-eps, 1-2eps) against budgets (1-eps, 1),
// and item 2 is worth (1-eps, 1/2). Epsilon below 1/4 keeps every welfare
// comparison strict. Defeat within two items.
AdversaryOutcome budget_additive_adversary(const OnlinePolicy& policy,
                                           const Rational& epsilon = Rational(1, 10));

// Matroid-rank play over up to four items. The first two items look like two
// interchangeable units; afterwards the adversary grows each agent's matroid
// so that whichever agent the policy favors saturates while the other agent
// could have used the favored agent's bundle at full rank. Every stage's
// matroid restricts to the previous stage's, so the play is consistent.
AdversaryOutcome binary_submodular_adversary(const OnlinePolicy& policy);

// Supermodular-table play over up to five items. All values start at zero;
// complement sets that straddle the policy's chosen split later become worth
// one, so the held bundles stay worthless while the swapped bundles are not.
AdversaryOutcome binary_supermodular_adversary(const OnlinePolicy& policy);

// Phase play with unit-value items (binary additive). Each phase streams
// items that only the not-yet-eliminated agents value, until the policy
// either wastes an item on an eliminated agent (an exact welfare loss of 1,
// witnessed by rotating bundles along the elimination chain), floods one
// agent past the per-phase cap (envy at least n^2 with the default cap), or
// serves all but one of the poorest agents, whereupon the starved one is
// eliminated. Surviving all n-1 phases costs a subsidy of at least n(n-1)/2.
AdversaryOutcome restricted_additive_adversary(const OnlinePolicy& policy, int n,
                                               int phase_item_cap = 0);

// Dispatch by adversary name: "budget-additive", "binary-submodular",
// "binary-supermodular", "restricted-additive". Unknown names throw
// std::invalid_argument.
AdversaryOutcome run_adversary(const std::string& name, const OnlinePolicy& policy,
                               const AdversaryParams& params = {});
std::vector<std::string> adversary_names();

// Plays back a fixed list of choices, one per item id, falling back to a
// constant choice when the script runs out. Used to enumerate every
// deterministic play of an adversary's decision tree.
class ScriptedPolicy : public OnlinePolicy {
 public:
  explicit ScriptedPolicy(std::vector<AgentId> choices, AgentId fallback = 1);

  std::string name() const override { return "scripted"; }
  bool supports(ValuationClass) const override { return true; }
  AgentId choose(const OnlineView& view, const Allocation& allocation,
                 ItemId item) const override;
  std::optional<Rational> subsidy_bound(const OnlineView&) const override {
    return std::nullopt;
  }

 private:
  std::vector<AgentId> choices_;
  AgentId fallback_;
};

struct BranchDefeat {
  std::vector<AgentId> script;
  AdversaryOutcome outcome;
};

// Runs `adversary` against every deterministic choice sequence of length
// `depth` over `n_agents` agents and collects the defeats, in lexicographic
// script order. Any surviving branch surfaces as the adversary's own
// std::logic_error, so a returned vector always holds n_agents^depth entries.
std::vector<BranchDefeat> enumerate_scripted_defeats(
    const std::function<AdversaryOutcome(const OnlinePolicy&)>& adversary, int depth,
    int n_agents = 2);

}  // namespace fairdiv
