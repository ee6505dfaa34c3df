#include "doctest.h"

#include <cstdlib>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/envy_graph.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/oracles.hpp"
#include "fairdiv/rational.hpp"

using namespace fairdiv;

namespace {

Instance make_additive(std::vector<std::vector<Rational>> values) {
  const int n = static_cast<int>(values.size());
  const int m = static_cast<int>(values.front().size());
  return Instance(n, m, ValuationClass::kAdditive, AdditiveSpec{std::move(values)});
}

Instance hoarding_instance() {
  return make_additive({{Rational(7, 8), Rational(1)}, {Rational(13, 16), Rational(7, 8)}});
}

Instance mutual_envy_instance() {
  return make_additive({{Rational(0), Rational(1)}, {Rational(1), Rational(0)}});
}

EnvyGraph make_graph(int n, const std::vector<std::vector<Rational>>& weights) {
  EnvyGraph g;
  g.n = n;
  g.weight = weights;
  return g;
}

}  // namespace

TEST_CASE("brute-force local efficiency by permutation sweep") {
  const Instance inst = hoarding_instance();
  Allocation hoard(2);
  hoard.give(1, 1);
  hoard.give(1, 2);

  const LeCheckResult le = brute_force_le(inst, hoard);
  CHECK(le.locally_efficient);
  CHECK(le.current_welfare == Rational(15, 8));
  CHECK(le.best_welfare == Rational(15, 8));
  CHECK(le.best_permutation == identity_permutation(2));

  Allocation split(2);
  split.give(1, 1);
  split.give(2, 2);
  const LeCheckResult bad = brute_force_le(inst, split);
  CHECK_FALSE(bad.locally_efficient);
  CHECK(bad.current_welfare == Rational(7, 4));
  CHECK(bad.best_welfare == Rational(29, 16));
  CHECK(bad.best_permutation == Permutation{2, 1});
}

TEST_CASE("welfare ties keep the lexicographically first permutation") {
  const Instance inst = make_additive({{Rational(1, 2), Rational(1, 2)},
                                       {Rational(1, 2), Rational(1, 2)}});
  Allocation alloc(2);
  alloc.give(1, 1);
  alloc.give(2, 2);
  const LeCheckResult le = brute_force_le(inst, alloc);
  CHECK(le.locally_efficient);
  CHECK(le.best_permutation == identity_permutation(2));
}

TEST_CASE("permutation sweep agrees with cycle detection") {
  // A few allocations across a few instances: LE by definition must coincide
  // with "no positive envy cycle".
  const std::vector<Instance> instances = {
      hoarding_instance(), mutual_envy_instance(),
      make_additive({{Rational(1, 2), Rational(1, 4), Rational(1)},
                     {Rational(1, 4), Rational(1, 2), Rational(3, 4)},
                     {Rational(1), Rational(0), Rational(1, 2)}})};
  for (const Instance& inst : instances) {
    // sweep all assignments by odometer
    std::vector<AgentId> digits(static_cast<std::size_t>(inst.m()), 1);
    while (true) {
      Allocation alloc(inst.n());
      for (std::size_t g = 0; g < digits.size(); ++g) {
        alloc.give(digits[g], static_cast<ItemId>(g + 1));
      }
      const bool le_by_perm = brute_force_le(inst, alloc).locally_efficient;
      const bool le_by_cycle =
          !find_positive_cycle(build_envy_graph(inst, alloc)).has_value();
      CHECK(le_by_perm == le_by_cycle);

      std::size_t pos = digits.size();
      while (pos > 0 && digits[pos - 1] == inst.n()) {
        digits[pos - 1] = 1;
        --pos;
      }
      if (pos == 0) break;
      digits[pos - 1] += 1;
    }
  }
}

TEST_CASE("path enumeration matches the dynamic program") {
  const EnvyGraph chain = make_graph(
      3, {{Rational(0), Rational(1), Rational(1, 2)},
          {Rational(-5), Rational(0), Rational(1)},
          {Rational(-5), Rational(-5), Rational(0)}});
  const SubsidyReport brute = brute_force_heaviest_paths(chain);
  const SubsidyReport fast = min_subsidy(chain);
  CHECK(brute.payments == fast.payments);
  CHECK(brute.total == Rational(3));

  std::vector<std::vector<Rational>> w(4, std::vector<Rational>(4, Rational(-10)));
  for (int i = 0; i < 4; ++i) w[i][i] = Rational(0);
  w[0][2] = Rational(1);
  w[2][1] = Rational(1);
  w[1][3] = Rational(1);
  const EnvyGraph detour = make_graph(4, w);
  CHECK(brute_force_heaviest_paths(detour).payments == min_subsidy(detour).payments);
}

TEST_CASE("path enumeration stays simple on positive cycles") {
  // min_subsidy refuses positive cycles; the brute-force enumerator still
  // reports the heaviest simple paths, here one hop each way.
  const EnvyGraph g =
      make_graph(2, {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}});
  const SubsidyReport report = brute_force_heaviest_paths(g);
  CHECK(report.payment(1) == Rational(1));
  CHECK(report.payment(2) == Rational(1));
  CHECK(report.total == Rational(2));
}

TEST_CASE("offline sweep finds the cheapest locally efficient allocation") {
  const OfflineOptimum opt = brute_force_min_subsidy_offline(hoarding_instance());
  CHECK(opt.subsidy.total == Rational(1, 16));
  CHECK(opt.allocation.bundle(1) == Bundle{2});
  CHECK(opt.allocation.bundle(2) == Bundle{1});
  CHECK(opt.welfare == Rational(29, 16));
  CHECK(opt.subsidy.payment(1) == Rational(0));
  CHECK(opt.subsidy.payment(2) == Rational(1, 16));

  const OfflineOptimum swap = brute_force_min_subsidy_offline(mutual_envy_instance());
  CHECK(swap.subsidy.total == Rational(0));
  CHECK(swap.allocation.bundle(1) == Bundle{2});
  CHECK(swap.allocation.bundle(2) == Bundle{1});
  CHECK(swap.welfare == Rational(2));
}

TEST_CASE("welfare sweep keeps the lexicographically first optimum") {
  const WelfareOptimum opt = brute_force_max_welfare(hoarding_instance());
  CHECK(opt.welfare == Rational(15, 8));
  CHECK(opt.allocation.bundle(1) == Bundle{1, 2});

  // Two agents tie on a single item: agent 1 wins by order.
  const WelfareOptimum tie =
      brute_force_max_welfare(make_additive({{Rational(1)}, {Rational(1)}}));
  CHECK(tie.welfare == Rational(1));
  CHECK(tie.allocation.holder(1) == 1);
}

TEST_CASE("caps guard the enumeration budgets") {
  OracleCaps caps;
  caps.max_permutation_agents = 3;
  caps.max_path_agents = 3;
  caps.max_assignments = 8;

  const Instance big = make_additive(std::vector<std::vector<Rational>>(
      4, std::vector<Rational>(1, Rational(1, 2))));
  Allocation alloc(4);
  alloc.give(1, 1);
  CHECK_THROWS_AS(brute_force_le(big, alloc, caps), CapabilityError);

  EnvyGraph g;
  g.n = 4;
  g.weight.assign(4, std::vector<Rational>(4, Rational(0)));
  CHECK_THROWS_AS(brute_force_heaviest_paths(g, caps), CapabilityError);

  const Instance wide = make_additive({{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)},
                                       {Rational(0), Rational(0), Rational(0), Rational(0)}});
  // 2^4 = 16 > 8 assignments
  CHECK_THROWS_AS(brute_force_min_subsidy_offline(wide, caps), CapabilityError);
  CHECK_THROWS_AS(brute_force_max_welfare(wide, caps), CapabilityError);

  // Within budget, everything runs.
  caps.max_assignments = 16;
  CHECK(brute_force_max_welfare(wide, caps).welfare == Rational(2));
}

TEST_CASE("caps come from the environment") {
  setenv("FAIRDIV_MAX_PERM_AGENTS", "2", 1);
  const OracleCaps caps = OracleCaps::from_env();
  CHECK(caps.max_permutation_agents == 2);
  CHECK(caps.max_path_agents == 7);
  CHECK(caps.max_assignments == 1000000);

  const Instance three = make_additive(std::vector<std::vector<Rational>>(
      3, std::vector<Rational>(1, Rational(1, 2))));
  Allocation alloc(3);
  alloc.give(1, 1);
  CHECK_THROWS_AS(brute_force_le(three, alloc), CapabilityError);
  unsetenv("FAIRDIV_MAX_PERM_AGENTS");
  CHECK_NOTHROW(brute_force_le(three, alloc));

  setenv("FAIRDIV_MAX_PERM_AGENTS", "zero", 1);
  CHECK_THROWS_AS(OracleCaps::from_env(), std::invalid_argument);
  unsetenv("FAIRDIV_MAX_PERM_AGENTS");
}

TEST_CASE("empty instances are trivially handled") {
  const Instance none = Instance(2, 0, ValuationClass::kAdditive,
                                 AdditiveSpec{{{}, {}}});
  Allocation alloc(2);
  CHECK(brute_force_le(none, alloc).locally_efficient);
  const OfflineOptimum opt = brute_force_min_subsidy_offline(none);
  CHECK(opt.subsidy.total == Rational(0));
  CHECK(brute_force_max_welfare(none).welfare == Rational(0));
}
