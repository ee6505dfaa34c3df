#pragma once

#include <cstdint>
#include <random>

#include "fairdiv/allocation.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

using Rng = std::mt19937_64;

// Exactly uniform draw from {0, ..., bound-1} by rejection sampling on the
// raw 64-bit stream. The standard distributions are implementation-defined,
// which would break byte-identical transcripts across toolchains.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

// ---------------------------------------------------------------------------
// Named constructions used by the lower-bound experiments.

// Additive stream that makes every marginal-greedy policy hand all m items to
// agent 1: agent 1 values item j at 1 - eps_bar + 2^j * delta and everyone
// else at 1 - eps_bar + 2^(j-1) * delta, with eps_bar = eps / (n(m-1)) and
// delta = eps_bar / 2^m. Total envy then lands within eps of the m(n-1) cap.
Instance make_additive_lower_bound(int n, int m, const Rational& eps);

// Rank-one stream of n(n+1)/2 items with agent weights 1 - i*eps and item
// qualities 1 - eps + 2^(j-m) * eps: each item is slightly better than all
// earlier ones combined can compensate, walking the ladder policy to within
// O(eps) of its n(n+1)/2 - 1 subsidy cap on the critical prefix.
Instance make_rank_one_lower_bound(int n, const Rational& eps);

// One unit-value good wanted identically by all n agents; any policy pays
// n - 1 once the good is placed.
Instance make_single_unit_good(int n);

// Two unit-demand agents and two items where singleton-greedy allocation
// reaches welfare 1 while the offline optimum reaches 3/2: local efficiency
// does not imply offline optimality.
Instance make_unit_demand_inefficiency_example();

// ---------------------------------------------------------------------------
// Seeded random instances, one dispatcher across every supported class. All
// sampled values use denominator 2^10. Table and matroid classes require
// m <= 12 (their representation is dense). Every result passes validation.
Instance random_instance(ValuationClass cls, int n, int m, Rng& rng);

// Items placed independently and uniformly.
Allocation random_allocation(const Instance& instance, Rng& rng);

// Random allocation repaired to local efficiency by rotating bundles along
// positive envy cycles until none remain (each rotation strictly raises
// welfare, so this terminates).
Allocation random_le_allocation(const Instance& instance, Rng& rng);

}  // namespace fairdiv
