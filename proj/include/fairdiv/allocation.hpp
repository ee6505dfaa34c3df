#pragma once

#include "json.hpp"

#include <vector>

#include "fairdiv/instance.hpp"
#include "fairdiv/types.hpp"

namespace fairdiv {

// A (partial) allocation of items to agents. Bundles are disjoint; items not
// yet assigned simply appear in no bundle.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(int n) : bundles_(static_cast<std::size_t>(n)) {}

  int n() const { return static_cast<int>(bundles_.size()); }
  const Bundle& bundle(AgentId agent) const {
    return bundles_[static_cast<std::size_t>(agent) - 1];
  }
  const std::vector<Bundle>& bundles() const { return bundles_; }

  void give(AgentId agent, ItemId item);
  int total_items() const;
  // Agent currently holding `item`, or 0 when unassigned.
  AgentId holder(ItemId item) const;

  nlohmann::json to_json() const;
  static Allocation from_json(const nlohmann::json& j);

 private:
  std::vector<Bundle> bundles_;
};

Rational social_welfare(const Instance& instance, const Allocation& allocation);

// Welfare after permuting bundles: agent i receives bundle X_{pi[i-1]}.
Rational permuted_welfare(const Instance& instance, const Allocation& allocation,
                          const Permutation& pi);

// Applies a bundle permutation, producing the reshuffled allocation.
Allocation apply_permutation(const Allocation& allocation, const Permutation& pi);

}  // namespace fairdiv
