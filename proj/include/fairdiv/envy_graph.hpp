#pragma once

#include "json.hpp"

#include <optional>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/rational.hpp"
#include "fairdiv/types.hpp"

namespace fairdiv {

// Complete weighted digraph over agents: weight(i, k) = v_i(X_k) - v_i(X_i),
// how much agent i prefers agent k's bundle over its own. The allocation is
// envy-freeable with subsidies exactly when this graph has no positive-weight
// directed cycle, and the cheapest envy-eliminating payments are the heaviest
// (possibly empty) simple-path weights out of each agent.
struct EnvyGraph {
  int n = 0;
  std::vector<std::vector<Rational>> weight;  // weight[i-1][k-1]; diagonal 0

  const Rational& at(AgentId i, AgentId k) const {
    return weight[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(k) - 1];
  }
};

EnvyGraph build_envy_graph(const Instance& instance, const Allocation& allocation);

// Positive-weight directed cycle, if any, as a vertex sequence
// [i_1, ..., i_k] with the closing edge i_k -> i_1 implicit. Runs a
// longest-path relaxation for n rounds and reports a cycle on a round-n
// improvement, mirroring negative-cycle detection.
std::optional<std::vector<AgentId>> find_positive_cycle(const EnvyGraph& graph);

// Bundle rotation along a positive cycle: each cycle vertex takes the bundle
// of its successor; the resulting permutation has strictly larger welfare.
Permutation improving_permutation_from_cycle(const std::vector<AgentId>& cycle, int n);

struct SubsidyReport {
  std::vector<Rational> payments;  // payments[i-1] = heaviest path weight from i
  Rational total;

  const Rational& payment(AgentId i) const {
    return payments[static_cast<std::size_t>(i) - 1];
  }

  nlohmann::json to_json() const;
};

// Exact minimum total subsidy for an envy-freeable allocation. Heaviest path
// weights via an all-pairs dynamic program over intermediate vertices (n^3
// exact-arithmetic operations). Throws std::logic_error if the graph has a
// positive cycle (no subsidy can fix such an allocation).
SubsidyReport min_subsidy(const EnvyGraph& graph);

// True iff v_i(X_i) + p_i >= v_i(X_j) + p_j for all agent pairs, i.e. the
// payments eliminate envy.
bool payments_eliminate_envy(const EnvyGraph& graph, const std::vector<Rational>& payments);

}  // namespace fairdiv
