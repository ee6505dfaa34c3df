#include "fairdiv/allocation.hpp"

#include "json.hpp"

#include <stdexcept>

namespace fairdiv {

using nlohmann::json;

void Allocation::give(AgentId agent, ItemId item) {
  if (agent < 1 || agent > n()) {
    throw std::out_of_range("allocation: agent id out of range");
  }
  if (holder(item) != 0) {
    throw std::logic_error("allocation: item already assigned");
  }
  bundles_[static_cast<std::size_t>(agent) - 1] =
      bundle_with(bundles_[static_cast<std::size_t>(agent) - 1], item);
}

int Allocation::total_items() const {
  int total = 0;
  for (const Bundle& b : bundles_) {
    total += static_cast<int>(b.size());
  }
  return total;
}

AgentId Allocation::holder(ItemId item) const {
  for (int i = 1; i <= n(); ++i) {
    if (bundle_contains(bundles_[static_cast<std::size_t>(i) - 1], item)) {
      return i;
    }
  }
  return 0;
}

json Allocation::to_json() const {
  json j;
  j["bundles"] = bundles_;
  return j;
}

Allocation Allocation::from_json(const json& j) {
  Allocation alloc;
  alloc.bundles_ = j.at("bundles").get<std::vector<Bundle>>();
  for (auto& b : alloc.bundles_) {
    std::sort(b.begin(), b.end());
  }
  // Reject overlapping bundles up front; everything downstream assumes
  // disjointness.
  std::vector<ItemId> all;
  for (const Bundle& b : alloc.bundles_) {
    all.insert(all.end(), b.begin(), b.end());
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw std::invalid_argument("allocation json: bundles overlap");
  }
  return alloc;
}

Rational social_welfare(const Instance& instance, const Allocation& allocation) {
  Rational total;
  for (AgentId i = 1; i <= allocation.n(); ++i) {
    total += instance.value(i, allocation.bundle(i));
  }
  return total;
}

Rational permuted_welfare(const Instance& instance, const Allocation& allocation,
                          const Permutation& pi) {
  Rational total;
  for (AgentId i = 1; i <= allocation.n(); ++i) {
    total += instance.value(i, allocation.bundle(pi[static_cast<std::size_t>(i) - 1]));
  }
  return total;
}

Allocation apply_permutation(const Allocation& allocation, const Permutation& pi) {
  Allocation out(allocation.n());
  for (AgentId i = 1; i <= allocation.n(); ++i) {
    for (ItemId g : allocation.bundle(pi[static_cast<std::size_t>(i) - 1])) {
      out.give(i, g);
    }
  }
  return out;
}

}  // namespace fairdiv
