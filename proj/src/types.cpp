#include "fairdiv/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairdiv {

bool bundle_contains(const Bundle& bundle, ItemId item) {
  return std::binary_search(bundle.begin(), bundle.end(), item);
}

Bundle bundle_with(const Bundle& bundle, ItemId item) {
  Bundle result = bundle;
  auto pos = std::lower_bound(result.begin(), result.end(), item);
  if (pos != result.end() && *pos == item) {
    throw std::logic_error("bundle_with: item already present");
  }
  result.insert(pos, item);
  return result;
}

std::uint32_t bundle_mask(const Bundle& bundle) {
  std::uint32_t mask = 0;
  for (ItemId g : bundle) {
    if (g < 1 || g > 32) {
      throw std::out_of_range("bundle_mask: item id out of mask range");
    }
    mask |= (1u << (g - 1));
  }
  return mask;
}

Bundle bundle_from_mask(std::uint32_t mask) {
  Bundle bundle;
  for (int g = 1; g <= 32; ++g) {
    if (mask & (1u << (g - 1))) {
      bundle.push_back(g);
    }
  }
  return bundle;
}

Permutation identity_permutation(int n) {
  Permutation pi(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    pi[static_cast<std::size_t>(i) - 1] = i;
  }
  return pi;
}

}  // namespace fairdiv
