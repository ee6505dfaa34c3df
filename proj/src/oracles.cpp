#include "fairdiv/oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <vector>

namespace fairdiv {

namespace {

long long env_ll(const char* name, long long fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') {
    return fallback;
  }
  char* end = nullptr;
  const long long parsed = std::strtoll(raw, &end, 10);
  if (end == raw || *end != '\0' || parsed < 1) {
    throw std::invalid_argument(std::string(name) + ": expected a positive integer, got '" +
                                raw + "'");
  }
  return parsed;
}

}  // namespace

OracleCaps OracleCaps::from_env() {
  OracleCaps caps;
  caps.max_permutation_agents =
      static_cast<int>(env_ll("FAIRDIV_MAX_PERM_AGENTS", caps.max_permutation_agents));
  caps.max_path_agents =
      static_cast<int>(env_ll("FAIRDIV_MAX_PATH_AGENTS", caps.max_path_agents));
  caps.max_assignments = env_ll("FAIRDIV_MAX_ASSIGNMENTS", caps.max_assignments);
  return caps;
}

LeCheckResult brute_force_le(const Instance& instance, const Allocation& allocation,
                             const OracleCaps& caps) {
  const int n = allocation.n();
  if (n > caps.max_permutation_agents) {
    throw CapabilityError("brute_force_le: " + std::to_string(n) + " agents exceeds cap of " +
                          std::to_string(caps.max_permutation_agents) +
                          " (set FAIRDIV_MAX_PERM_AGENTS to raise)");
  }

  LeCheckResult result;
  result.current_welfare = social_welfare(instance, allocation);
  result.best_welfare = result.current_welfare;
  result.best_permutation = identity_permutation(n);

  // next_permutation walks lexicographically from the identity, so keeping
  // only strict improvements leaves the lexicographically first optimum.
  Permutation pi = identity_permutation(n);
  while (std::next_permutation(pi.begin(), pi.end())) {
    const Rational welfare = permuted_welfare(instance, allocation, pi);
    if (welfare > result.best_welfare) {
      result.best_welfare = welfare;
      result.best_permutation = pi;
    }
  }
  result.locally_efficient = result.best_welfare == result.current_welfare;
  return result;
}

SubsidyReport brute_force_heaviest_paths(const EnvyGraph& graph, const OracleCaps& caps) {
  const int n = graph.n;
  if (n > caps.max_path_agents) {
    throw CapabilityError("brute_force_heaviest_paths: " + std::to_string(n) +
                          " agents exceeds cap of " + std::to_string(caps.max_path_agents) +
                          " (set FAIRDIV_MAX_PATH_AGENTS to raise)");
  }

  SubsidyReport report;
  report.payments.assign(static_cast<std::size_t>(n), Rational(0));

  std::vector<bool> visited(static_cast<std::size_t>(n), false);
  // Depth-first over all simple paths extending the current one; `weight` is
  // the weight so far and `best` keeps the running maximum for the start.
  std::function<void(int, const Rational&, Rational&)> extend =
      [&](int last, const Rational& weight, Rational& best) {
        if (weight > best) {
          best = weight;
        }
        for (int next = 0; next < n; ++next) {
          if (visited[static_cast<std::size_t>(next)]) continue;
          visited[static_cast<std::size_t>(next)] = true;
          extend(next,
                 weight + graph.weight[static_cast<std::size_t>(last)]
                                      [static_cast<std::size_t>(next)],
                 best);
          visited[static_cast<std::size_t>(next)] = false;
        }
      };

  for (int start = 0; start < n; ++start) {
    Rational best(0);  // the empty path
    visited.assign(static_cast<std::size_t>(n), false);
    visited[static_cast<std::size_t>(start)] = true;
    extend(start, Rational(0), best);
    report.payments[static_cast<std::size_t>(start)] = best;
    report.total += best;
  }
  return report;
}

namespace {

// Iterates assignments item-by-item as a mixed-radix odometer, rightmost
// digit fastest, so the item->agent vectors come out in lexicographic order.
class AssignmentSweep {
 public:
  AssignmentSweep(int n, int m) : n_(n), digits_(static_cast<std::size_t>(m), 1), fresh_(true) {}

  bool next() {
    if (fresh_) {
      fresh_ = false;
      return true;
    }
    for (std::size_t pos = digits_.size(); pos-- > 0;) {
      if (digits_[pos] < n_) {
        digits_[pos] += 1;
        std::fill(digits_.begin() + static_cast<std::ptrdiff_t>(pos) + 1, digits_.end(), 1);
        return true;
      }
    }
    return false;
  }

  Allocation allocation(int n) const {
    Allocation alloc(n);
    for (std::size_t g = 0; g < digits_.size(); ++g) {
      alloc.give(digits_[g], static_cast<ItemId>(g + 1));
    }
    return alloc;
  }

 private:
  int n_;
  std::vector<AgentId> digits_;
  bool fresh_;
};

void check_assignment_budget(const Instance& instance, const OracleCaps& caps,
                             const char* who) {
  long long total = 1;
  for (int g = 0; g < instance.m(); ++g) {
    total *= instance.n();
    if (total > caps.max_assignments) {
      throw CapabilityError(std::string(who) + ": " + std::to_string(instance.n()) + "^" +
                            std::to_string(instance.m()) + " assignments exceeds cap of " +
                            std::to_string(caps.max_assignments) +
                            " (set FAIRDIV_MAX_ASSIGNMENTS to raise)");
    }
  }
}

}  // namespace

OfflineOptimum brute_force_min_subsidy_offline(const Instance& instance, const OracleCaps& caps) {
  check_assignment_budget(instance, caps, "brute_force_min_subsidy_offline");

  OfflineOptimum best;
  bool found = false;
  AssignmentSweep sweep(instance.n(), instance.m());
  while (sweep.next()) {
    Allocation alloc = sweep.allocation(instance.n());
    const LeCheckResult le = brute_force_le(instance, alloc, caps);
    if (!le.locally_efficient) {
      continue;
    }
    SubsidyReport subsidy = brute_force_heaviest_paths(build_envy_graph(instance, alloc), caps);
    if (!found || subsidy.total < best.subsidy.total) {
      best.allocation = std::move(alloc);
      best.subsidy = std::move(subsidy);
      best.welfare = le.current_welfare;
      found = true;
    }
  }
  if (!found) {
    // Unreachable: a welfare-maximizing assignment is always locally
    // efficient and the sweep covers it.
    throw std::logic_error("brute_force_min_subsidy_offline: no locally efficient allocation");
  }
  return best;
}

WelfareOptimum brute_force_max_welfare(const Instance& instance, const OracleCaps& caps) {
  check_assignment_budget(instance, caps, "brute_force_max_welfare");

  WelfareOptimum best;
  bool found = false;
  AssignmentSweep sweep(instance.n(), instance.m());
  while (sweep.next()) {
    Allocation alloc = sweep.allocation(instance.n());
    const Rational welfare = social_welfare(instance, alloc);
    if (!found || welfare > best.welfare) {
      best.allocation = std::move(alloc);
      best.welfare = welfare;
      found = true;
    }
  }
  return best;
}

}  // namespace fairdiv
