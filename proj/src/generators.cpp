#include "fairdiv/generators.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairdiv/envy_graph.hpp"

namespace fairdiv {

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("uniform_below: bound must be positive");
  }
  // Reject draws from the final partial block so every residue is equally
  // likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = rng();
  while (draw >= limit) {
    draw = rng();
  }
  return draw % bound;
}

namespace {

constexpr long long kDenominator = 1024;  // all random values are p / 2^10

Rational random_unit_value(Rng& rng) {
  return Rational(static_cast<long long>(uniform_below(rng, kDenominator + 1)), kDenominator);
}

std::vector<Rational> random_unit_row(Rng& rng, int m) {
  std::vector<Rational> row;
  row.reserve(static_cast<std::size_t>(m));
  for (int g = 0; g < m; ++g) {
    row.push_back(random_unit_value(rng));
  }
  return row;
}

void shuffle_items(std::vector<ItemId>& items, Rng& rng) {
  for (std::size_t idx = items.size(); idx > 1; --idx) {
    std::swap(items[idx - 1], items[uniform_below(rng, idx)]);
  }
}

void require_table_size(int m, const char* cls) {
  if (m > kMaxTableItems) {
    throw std::invalid_argument(std::string(cls) + ": dense representation caps items at " +
                                std::to_string(kMaxTableItems));
  }
}

// Monotone table with unit marginals, sampled set-by-set in cardinality
// order: each v(S) is uniform in [max_g v(S-g), min_g v(S-g) + 1], the exact
// window monotonicity and the cap leave open.
std::vector<Rational> random_monotone_table(Rng& rng, int m) {
  const std::size_t size = static_cast<std::size_t>(1) << m;
  std::vector<Rational> table(size, Rational(0));
  std::vector<std::uint32_t> masks(size);
  for (std::uint32_t mask = 0; mask < size; ++mask) masks[mask] = mask;
  std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    return __builtin_popcount(a) < __builtin_popcount(b);
  });
  for (std::uint32_t mask : masks) {
    if (mask == 0) continue;
    Rational lower(0);
    Rational upper;
    bool first = true;
    for (int g = 0; g < m; ++g) {
      if (!(mask & (1u << g))) continue;
      const Rational& below = table[mask & ~(1u << g)];
      lower = max(lower, below);
      upper = first ? below + Rational(1) : min(upper, below + Rational(1));
      first = false;
    }
    table[mask] = lower + (upper - lower) * random_unit_value(rng);
  }
  return table;
}

// Supermodular table: every pairwise constraint has a unique largest set, so
// sampling v(S) above the heaviest pair bound (and monotone floor) in
// cardinality order satisfies all of them. Singletons keep the unit cap.
std::vector<Rational> random_supermodular_table(Rng& rng, int m) {
  const std::size_t size = static_cast<std::size_t>(1) << m;
  std::vector<Rational> table(size, Rational(0));
  std::vector<std::uint32_t> masks(size);
  for (std::uint32_t mask = 0; mask < size; ++mask) masks[mask] = mask;
  std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    return __builtin_popcount(a) < __builtin_popcount(b);
  });
  for (std::uint32_t mask : masks) {
    if (mask == 0) continue;
    if (__builtin_popcount(mask) == 1) {
      table[mask] = random_unit_value(rng);
      continue;
    }
    Rational lower(0);
    for (int g = 0; g < m; ++g) {
      if (!(mask & (1u << g))) continue;
      lower = max(lower, table[mask & ~(1u << g)]);
      for (int h = g + 1; h < m; ++h) {
        if (!(mask & (1u << h))) continue;
        const Rational pair = table[mask & ~(1u << g)] + table[mask & ~(1u << h)] -
                              table[mask & ~(1u << g) & ~(1u << h)];
        lower = max(lower, pair);
      }
    }
    table[mask] = lower + random_unit_value(rng);
  }
  return table;
}

std::vector<Bundle> all_subsets_of_size(int m, int r) {
  std::vector<Bundle> out;
  std::vector<bool> pick(static_cast<std::size_t>(m), false);
  std::fill(pick.begin(), pick.begin() + r, true);
  // prev_permutation over the indicator walks all r-subsets.
  do {
    Bundle subset;
    for (int g = 0; g < m; ++g) {
      if (pick[static_cast<std::size_t>(g)]) {
        subset.push_back(g + 1);
      }
    }
    out.push_back(std::move(subset));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

std::vector<Bundle> random_matroid_bases(Rng& rng, int m) {
  if (uniform_below(rng, 2) == 0) {
    // Uniform matroid of random rank.
    const int rank = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(m)));
    return all_subsets_of_size(m, rank);
  }
  // Partition matroid, one slot per block.
  const int blocks = 1 + static_cast<int>(uniform_below(
                             rng, static_cast<std::uint64_t>(std::min(m, 4))));
  std::vector<ItemId> items(static_cast<std::size_t>(m));
  for (int g = 0; g < m; ++g) items[static_cast<std::size_t>(g)] = g + 1;
  shuffle_items(items, rng);
  std::vector<Bundle> block_members(static_cast<std::size_t>(blocks));
  for (int g = 0; g < m; ++g) {
    block_members[static_cast<std::size_t>(g % blocks)].push_back(
        items[static_cast<std::size_t>(g)]);
  }
  std::vector<Bundle> bases = {{}};
  for (const Bundle& block : block_members) {
    std::vector<Bundle> extended;
    for (const Bundle& prefix : bases) {
      for (ItemId pick : block) {
        extended.push_back(bundle_with(prefix, pick));
      }
    }
    bases = std::move(extended);
  }
  return bases;
}

}  // namespace

Instance make_additive_lower_bound(int n, int m, const Rational& eps) {
  if (n < 2 || m < 2) {
    throw std::invalid_argument("make_additive_lower_bound: need n >= 2 and m >= 2");
  }
  if (!eps.is_positive() || eps > Rational(1)) {
    throw std::invalid_argument("make_additive_lower_bound: eps must lie in (0, 1]");
  }
  const Rational eps_bar = eps / Rational(static_cast<long long>(n) * (m - 1));
  const Rational delta = eps_bar * pow2(-m);
  AdditiveSpec spec;
  spec.values.assign(static_cast<std::size_t>(n), std::vector<Rational>());
  for (int i = 1; i <= n; ++i) {
    auto& row = spec.values[static_cast<std::size_t>(i) - 1];
    row.reserve(static_cast<std::size_t>(m));
    for (int j = 1; j <= m; ++j) {
      const long long shift = (i == 1) ? j : j - 1;
      row.push_back(Rational(1) - eps_bar + pow2(shift) * delta);
    }
  }
  return Instance(n, m, ValuationClass::kAdditive, std::move(spec));
}

Instance make_rank_one_lower_bound(int n, const Rational& eps) {
  if (n < 2) {
    throw std::invalid_argument("make_rank_one_lower_bound: need n >= 2");
  }
  if (!eps.is_positive() || eps >= Rational(1, n)) {
    // Weights 1 - i*eps must stay positive for every agent.
    throw std::invalid_argument("make_rank_one_lower_bound: need 0 < eps < 1/n");
  }
  const int m = n * (n + 1) / 2;
  RankOneSpec spec;
  for (int i = 1; i <= n; ++i) {
    spec.weights.push_back(Rational(1) - Rational(i) * eps);
  }
  for (int j = 1; j <= m; ++j) {
    spec.base_values.push_back(Rational(1) - eps + pow2(j - m) * eps);
  }
  return Instance(n, m, ValuationClass::kRankOne, std::move(spec));
}

Instance make_single_unit_good(int n) {
  if (n < 1) {
    throw std::invalid_argument("make_single_unit_good: need n >= 1");
  }
  TableSpec spec;
  spec.tables.assign(static_cast<std::size_t>(n), {Rational(0), Rational(1)});
  return Instance(n, 1, ValuationClass::kIdenticalMonotone, std::move(spec));
}

Instance make_unit_demand_inefficiency_example() {
  KDemandSpec spec;
  spec.k = 1;
  spec.values = {{Rational(3, 4), Rational(1)}, {Rational(1, 2), Rational(1, 4)}};
  return Instance(2, 2, ValuationClass::kKDemand, std::move(spec));
}

Instance random_instance(ValuationClass cls, int n, int m, Rng& rng) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("random_instance: need n >= 1 and m >= 1");
  }
  switch (cls) {
    case ValuationClass::kAdditive: {
      AdditiveSpec spec;
      for (int i = 0; i < n; ++i) spec.values.push_back(random_unit_row(rng, m));
      return Instance(n, m, cls, std::move(spec));
    }
    case ValuationClass::kSplc: {
      SplcSpec spec;
      spec.num_types = 1 + static_cast<int>(uniform_below(
                               rng, static_cast<std::uint64_t>(std::max(1, m / 2))));
      std::vector<int> copies(static_cast<std::size_t>(spec.num_types), 0);
      for (int g = 0; g < m; ++g) {
        const int type = 1 + static_cast<int>(uniform_below(
                                 rng, static_cast<std::uint64_t>(spec.num_types)));
        spec.item_type.push_back(type);
        copies[static_cast<std::size_t>(type) - 1] += 1;
      }
      for (int i = 0; i < n; ++i) {
        std::vector<std::vector<Rational>> per_type;
        for (int t = 0; t < spec.num_types; ++t) {
          std::vector<Rational> segs =
              random_unit_row(rng, copies[static_cast<std::size_t>(t)]);
          std::sort(segs.begin(), segs.end(), std::greater<Rational>());
          per_type.push_back(std::move(segs));
        }
        spec.copy_values.push_back(std::move(per_type));
      }
      return Instance(n, m, cls, std::move(spec));
    }
    case ValuationClass::kKDemand: {
      KDemandSpec spec;
      spec.k = 1 + static_cast<int>(uniform_below(
                       rng, static_cast<std::uint64_t>(std::min(m, 3))));
      for (int i = 0; i < n; ++i) spec.values.push_back(random_unit_row(rng, m));
      return Instance(n, m, cls, std::move(spec));
    }
    case ValuationClass::kKValued: {
      KValuedSpec spec;
      spec.k = 1 + static_cast<int>(uniform_below(rng, 3));
      for (int i = 0; i < n; ++i) {
        // Personal palette of at most k distinct positive values.
        std::vector<Rational> palette;
        while (static_cast<int>(palette.size()) < spec.k) {
          Rational v(static_cast<long long>(1 + uniform_below(rng, kDenominator)), kDenominator);
          if (std::find(palette.begin(), palette.end(), v) == palette.end()) {
            palette.push_back(v);
          }
        }
        std::vector<Rational> row;
        for (int g = 0; g < m; ++g) {
          const std::uint64_t pick = uniform_below(rng, static_cast<std::uint64_t>(spec.k) + 1);
          row.push_back(pick == 0 ? Rational(0) : palette[pick - 1]);
        }
        spec.values.push_back(std::move(row));
      }
      return Instance(n, m, cls, std::move(spec));
    }
    case ValuationClass::kRankOne: {
      RankOneSpec spec;
      spec.weights = random_unit_row(rng, n);
      std::sort(spec.weights.begin(), spec.weights.end(), std::greater<Rational>());
      spec.base_values = random_unit_row(rng, m);
      return Instance(n, m, cls, std::move(spec));
    }
    case ValuationClass::kRestrictedAdditive:
    case ValuationClass::kBinaryAdditive: {
      RestrictedAdditiveSpec spec;
      if (cls == ValuationClass::kBinaryAdditive) {
        spec.item_values.assign(static_cast<std::size_t>(m), Rational(1));
      } else {
        spec.item_values = random_unit_row(rng, m);
      }
      for (int i = 0; i < n; ++i) {
        std::vector<bool> row;
        for (int g = 0; g < m; ++g) row.push_back(uniform_below(rng, 2) == 1);
        spec.interested.push_back(std::move(row));
      }
      return Instance(n, m, cls, std::move(spec));
    }
    case ValuationClass::kBudgetAdditive: {
      BudgetAdditiveSpec spec;
      for (int i = 0; i < n; ++i) {
        spec.budgets.push_back(Rational(
            static_cast<long long>(1 + uniform_below(
                                           rng, static_cast<std::uint64_t>(kDenominator) *
                                                    static_cast<std::uint64_t>(m))),
            kDenominator));
        spec.values.push_back(random_unit_row(rng, m));
      }
      return Instance(n, m, cls, std::move(spec));
    }
    case ValuationClass::kMatroidRank: {
      require_table_size(m, "matroid_rank");
      MatroidRankSpec spec;
      for (int i = 0; i < n; ++i) spec.bases.push_back(random_matroid_bases(rng, m));
      return Instance(n, m, cls, std::move(spec));
    }
    case ValuationClass::kIdenticalMonotone: {
      require_table_size(m, "identical_monotone");
      TableSpec spec;
      spec.tables.assign(static_cast<std::size_t>(n), random_monotone_table(rng, m));
      return Instance(n, m, cls, std::move(spec));
    }
    case ValuationClass::kTable: {
      require_table_size(m, "table");
      TableSpec spec;
      for (int i = 0; i < n; ++i) spec.tables.push_back(random_monotone_table(rng, m));
      return Instance(n, m, cls, std::move(spec));
    }
    case ValuationClass::kTableSupermodular: {
      require_table_size(m, "table_supermodular");
      TableSpec spec;
      for (int i = 0; i < n; ++i) spec.tables.push_back(random_supermodular_table(rng, m));
      return Instance(n, m, cls, std::move(spec));
    }
  }
  throw std::logic_error("random_instance: unhandled class");
}

Allocation random_allocation(const Instance& instance, Rng& rng) {
  Allocation alloc(instance.n());
  for (ItemId g = 1; g <= instance.m(); ++g) {
    alloc.give(1 + static_cast<AgentId>(uniform_below(
                       rng, static_cast<std::uint64_t>(instance.n()))),
               g);
  }
  return alloc;
}

Allocation random_le_allocation(const Instance& instance, Rng& rng) {
  Allocation alloc = random_allocation(instance, rng);
  while (true) {
    const EnvyGraph graph = build_envy_graph(instance, alloc);
    const auto cycle = find_positive_cycle(graph);
    if (!cycle.has_value()) {
      return alloc;
    }
    alloc = apply_permutation(alloc, improving_permutation_from_cycle(*cycle, instance.n()));
  }
}

}  // namespace fairdiv
