#include "fairdiv/envy_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairdiv {

EnvyGraph build_envy_graph(const Instance& instance, const Allocation& allocation) {
  const int n = allocation.n();
  // Memoize v_i(X_k) once; envy weights are pairwise differences.
  std::vector<std::vector<Rational>> value(static_cast<std::size_t>(n),
                                           std::vector<Rational>(static_cast<std::size_t>(n)));
  for (AgentId i = 1; i <= n; ++i) {
    for (AgentId k = 1; k <= n; ++k) {
      value[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(k) - 1] =
          instance.value(i, allocation.bundle(k));
    }
  }
  EnvyGraph graph;
  graph.n = n;
  graph.weight.assign(static_cast<std::size_t>(n),
                      std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      graph.weight[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
          value[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] -
          value[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    }
  }
  return graph;
}

std::optional<std::vector<AgentId>> find_positive_cycle(const EnvyGraph& graph) {
  const int n = graph.n;
  if (n < 2) {
    return std::nullopt;
  }
  // Longest-walk relaxation from an implicit zero source at every vertex.
  // After n rounds the labels are stable iff no positive cycle exists:
  // a stable labeling satisfies d[v] >= d[u] + w(u, v) for every edge, and
  // summing that around any cycle bounds its weight by zero.
  std::vector<Rational> dist(static_cast<std::size_t>(n), Rational(0));
  std::vector<int> pred(static_cast<std::size_t>(n), -1);
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    std::vector<Rational> next = dist;
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (u == v) continue;
        const Rational candidate =
            dist[static_cast<std::size_t>(u)] +
            graph.weight[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
        if (candidate > next[static_cast<std::size_t>(v)]) {
          next[static_cast<std::size_t>(v)] = candidate;
          pred[static_cast<std::size_t>(v)] = u;
          changed = true;
        }
      }
    }
    dist = std::move(next);
    if (!changed) {
      return std::nullopt;  // stabilized early: no positive cycle
    }
  }
  // Still improvable after n rounds? Then the predecessor chain from any
  // improving endpoint runs into a positive cycle.
  int start = -1;
  for (int u = 0; u < n && start < 0; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      const Rational candidate =
          dist[static_cast<std::size_t>(u)] +
          graph.weight[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
      if (candidate > dist[static_cast<std::size_t>(v)]) {
        pred[static_cast<std::size_t>(v)] = u;
        start = v;
        break;
      }
    }
  }
  if (start < 0) {
    return std::nullopt;
  }
  // Walk n predecessor steps to guarantee we sit inside the cycle, then trace
  // it out.
  int inside = start;
  for (int step = 0; step < n; ++step) {
    inside = pred[static_cast<std::size_t>(inside)];
  }
  std::vector<AgentId> cycle;
  int v = inside;
  do {
    cycle.push_back(v + 1);
    v = pred[static_cast<std::size_t>(v)];
  } while (v != inside);
  std::reverse(cycle.begin(), cycle.end());  // orient along the edges

  // The detection logic guarantees positivity; verify defensively because a
  // wrong witness would poison every downstream proof check.
  Rational total;
  for (std::size_t r = 0; r < cycle.size(); ++r) {
    const AgentId from = cycle[r];
    const AgentId to = cycle[(r + 1) % cycle.size()];
    total += graph.at(from, to);
  }
  if (!total.is_positive()) {
    throw std::logic_error("find_positive_cycle: traced a non-positive cycle");
  }
  return cycle;
}

Permutation improving_permutation_from_cycle(const std::vector<AgentId>& cycle, int n) {
  Permutation pi = identity_permutation(n);
  for (std::size_t r = 0; r < cycle.size(); ++r) {
    const AgentId agent = cycle[r];
    const AgentId successor = cycle[(r + 1) % cycle.size()];
    pi[static_cast<std::size_t>(agent) - 1] = successor;
  }
  return pi;
}

SubsidyReport min_subsidy(const EnvyGraph& graph) {
  if (find_positive_cycle(graph).has_value()) {
    throw std::logic_error("min_subsidy: allocation is not envy-freeable (positive cycle)");
  }
  const int n = graph.n;
  // All-pairs heaviest path by dynamic programming over intermediate
  // vertices. With no positive cycle, the heaviest walk never benefits from
  // revisiting a vertex, so this equals the heaviest simple path.
  std::vector<std::vector<Rational>> best = graph.weight;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      for (int j = 0; j < n; ++j) {
        if (j == k || j == i) continue;
        const Rational via = best[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                             best[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        if (via > best[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
          best[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = via;
        }
      }
    }
  }
  SubsidyReport report;
  report.payments.assign(static_cast<std::size_t>(n), Rational(0));
  for (int i = 0; i < n; ++i) {
    Rational ell(0);  // empty path is always available
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      ell = max(ell, best[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
    report.payments[static_cast<std::size_t>(i)] = ell;
    report.total += ell;
  }
  return report;
}

nlohmann::json SubsidyReport::to_json() const {
  nlohmann::json j;
  nlohmann::json paid = nlohmann::json::array();
  for (const auto& p : payments) {
    paid.push_back(p.format());
  }
  j["payments"] = std::move(paid);
  j["total"] = total.format();
  return j;
}

bool payments_eliminate_envy(const EnvyGraph& graph, const std::vector<Rational>& payments) {
  for (AgentId i = 1; i <= graph.n; ++i) {
    for (AgentId j = 1; j <= graph.n; ++j) {
      if (i == j) continue;
      // v_i(X_i) + p_i >= v_i(X_j) + p_j  <=>  p_i - p_j >= weight(i, j)
      if (payments[static_cast<std::size_t>(i) - 1] - payments[static_cast<std::size_t>(j) - 1] <
          graph.at(i, j)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace fairdiv
