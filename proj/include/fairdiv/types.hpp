#pragma once

#include <cstdint>
#include <vector>

namespace fairdiv {

// Agents and items are 1-based everywhere, including JSON and transcripts.
// Item ids double as arrival indices: item t is the t-th arrival.
using AgentId = int;
using ItemId = int;

// A bundle is a strictly increasing list of item ids.
using Bundle = std::vector<ItemId>;

// perm[i-1] = j means agent i receives bundle X_j under the permuted
// allocation. The identity permutation leaves every bundle in place.
using Permutation = std::vector<AgentId>;

bool bundle_contains(const Bundle& bundle, ItemId item);

// Returns the bundle with `item` inserted (keeps the sorted invariant).
Bundle bundle_with(const Bundle& bundle, ItemId item);

// Bitmask over items 1..width (bit g-1 set iff item g present). Only valid
// for table/matroid grounds, which are capped at 12 items.
std::uint32_t bundle_mask(const Bundle& bundle);
Bundle bundle_from_mask(std::uint32_t mask);

Permutation identity_permutation(int n);

}  // namespace fairdiv
