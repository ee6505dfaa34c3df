#include "fairdiv/instance.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fairdiv {

namespace {

std::string at_agent(int i) {
  std::ostringstream os;
  os << " (agent " << i << ")";
  return os.str();
}

bool in_unit_interval(const Rational& v) {
  return !v.is_negative() && v <= Rational(1);
}

bool matrix_shape_ok(const std::vector<std::vector<Rational>>& rows, int n, int m,
                     ValidationReport& report, const char* what) {
  if (static_cast<int>(rows.size()) != n) {
    report.fail(std::string(what) + ": expected one row per agent");
    return false;
  }
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != m) {
      report.fail(std::string(what) + ": expected one entry per item");
      return false;
    }
  }
  return true;
}

void check_matrix_unit_range(const std::vector<std::vector<Rational>>& rows,
                             ValidationReport& report, const char* what) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& v : rows[i]) {
      if (!in_unit_interval(v)) {
        report.fail(std::string(what) + ": value " + v.format() + " outside [0,1]" +
                    at_agent(static_cast<int>(i) + 1));
        return;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Table property checks (dense tables indexed by bitmask, m <= 12).

bool table_shape_ok(const std::vector<Rational>& table, int m) {
  return static_cast<int>(table.size()) == (1 << m);
}

}  // namespace

bool table_is_monotone(const std::vector<Rational>& table, int m) {
  const std::uint32_t full = (1u << m) - 1;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    for (int g = 0; g < m; ++g) {
      const std::uint32_t bit = 1u << g;
      if (mask & bit) continue;
      if (table[mask | bit] < table[mask]) {
        return false;
      }
    }
  }
  return true;
}

namespace {

bool table_marginals_at_most_one(const std::vector<Rational>& table, int m) {
  const std::uint32_t full = (1u << m) - 1;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    for (int g = 0; g < m; ++g) {
      const std::uint32_t bit = 1u << g;
      if (mask & bit) continue;
      if (table[mask | bit] - table[mask] > Rational(1)) {
        return false;
      }
    }
  }
  return true;
}

// Pairwise marginal comparison over every (S, g, h) triple: submodularity
// means the marginal of g shrinks (weakly) when h joins the base set,
// supermodularity means it grows. Pairwise exhaustion implies the general
// S subset-of T definition by adding elements of T \ S one at a time.
enum class Curvature { kSubmodular, kSupermodular };

bool table_curvature(const std::vector<Rational>& table, int m, Curvature which) {
  const std::uint32_t full = (1u << m) - 1;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    for (int g = 0; g < m; ++g) {
      const std::uint32_t gbit = 1u << g;
      if (mask & gbit) continue;
      for (int h = g + 1; h < m; ++h) {
        const std::uint32_t hbit = 1u << h;
        if (mask & hbit) continue;
        const Rational lone = table[mask | gbit] + table[mask | hbit];
        const Rational pair = table[mask] + table[mask | gbit | hbit];
        if (which == Curvature::kSubmodular ? (lone < pair) : (lone > pair)) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

bool table_is_submodular(const std::vector<Rational>& table, int m) {
  return table_curvature(table, m, Curvature::kSubmodular);
}

bool table_is_supermodular(const std::vector<Rational>& table, int m) {
  return table_curvature(table, m, Curvature::kSupermodular);
}

void ValidationReport::fail(std::string what) {
  ok = false;
  issues.push_back(std::move(what));
}

// ---------------------------------------------------------------------------

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  const int n = inst.n();
  const int m = inst.m();
  const ValuationClass cls = inst.valuation_class();

  switch (cls) {
    case ValuationClass::kAdditive: {
      const auto* spec = std::get_if<AdditiveSpec>(&inst.spec());
      if (!spec) {
        report.fail("additive: wrong parameter block");
        break;
      }
      if (matrix_shape_ok(spec->values, n, m, report, "additive values")) {
        check_matrix_unit_range(spec->values, report, "additive values");
      }
      break;
    }
    case ValuationClass::kSplc: {
      const auto* spec = std::get_if<SplcSpec>(&inst.spec());
      if (!spec) {
        report.fail("splc: wrong parameter block");
        break;
      }
      if (spec->num_types < 1) {
        report.fail("splc: need at least one type");
        break;
      }
      if (static_cast<int>(spec->item_type.size()) != m) {
        report.fail("splc: expected one type per item");
        break;
      }
      std::vector<int> copies(static_cast<std::size_t>(spec->num_types), 0);
      for (int t : spec->item_type) {
        if (t < 1 || t > spec->num_types) {
          report.fail("splc: item type out of range");
          return report;
        }
        copies[static_cast<std::size_t>(t) - 1] += 1;
      }
      if (static_cast<int>(spec->copy_values.size()) != n) {
        report.fail("splc: expected copy values for every agent");
        break;
      }
      for (int i = 0; i < n; ++i) {
        const auto& per_type = spec->copy_values[static_cast<std::size_t>(i)];
        if (static_cast<int>(per_type.size()) != spec->num_types) {
          report.fail("splc: expected copy values for every type" + at_agent(i + 1));
          return report;
        }
        for (int t = 0; t < spec->num_types; ++t) {
          const auto& segs = per_type[static_cast<std::size_t>(t)];
          if (static_cast<int>(segs.size()) < copies[static_cast<std::size_t>(t)]) {
            report.fail("splc: fewer copy values than copies of the type" + at_agent(i + 1));
            return report;
          }
          Rational prev(1);
          for (const auto& v : segs) {
            if (!in_unit_interval(v)) {
              report.fail("splc: copy value outside [0,1]" + at_agent(i + 1));
              return report;
            }
            if (v > prev) {
              report.fail("splc: copy values must be nonincreasing (concavity)" + at_agent(i + 1));
              return report;
            }
            prev = v;
          }
        }
      }
      break;
    }
    case ValuationClass::kKDemand: {
      const auto* spec = std::get_if<KDemandSpec>(&inst.spec());
      if (!spec) {
        report.fail("k_demand: wrong parameter block");
        break;
      }
      if (spec->k < 1) {
        report.fail("k_demand: k must be at least 1");
      }
      if (matrix_shape_ok(spec->values, n, m, report, "k_demand values")) {
        check_matrix_unit_range(spec->values, report, "k_demand values");
      }
      break;
    }
    case ValuationClass::kKValued: {
      const auto* spec = std::get_if<KValuedSpec>(&inst.spec());
      if (!spec) {
        report.fail("k_valued: wrong parameter block");
        break;
      }
      if (spec->k < 1) {
        report.fail("k_valued: k must be at least 1");
      }
      if (!matrix_shape_ok(spec->values, n, m, report, "k_valued values")) {
        break;
      }
      check_matrix_unit_range(spec->values, report, "k_valued values");
      for (int i = 0; i < n; ++i) {
        std::set<Rational> palette;
        for (const auto& v : spec->values[static_cast<std::size_t>(i)]) {
          if (v.is_positive()) {
            palette.insert(v);
          }
        }
        if (static_cast<int>(palette.size()) > spec->k) {
          report.fail("k_valued: more than k distinct positive values" + at_agent(i + 1));
        }
      }
      break;
    }
    case ValuationClass::kRankOne: {
      const auto* spec = std::get_if<RankOneSpec>(&inst.spec());
      if (!spec) {
        report.fail("rank_one: wrong parameter block");
        break;
      }
      if (static_cast<int>(spec->weights.size()) != n) {
        report.fail("rank_one: expected one weight per agent");
        break;
      }
      if (static_cast<int>(spec->base_values.size()) != m) {
        report.fail("rank_one: expected one base value per item");
        break;
      }
      for (const auto& w : spec->weights) {
        if (!in_unit_interval(w)) {
          report.fail("rank_one: weight " + w.format() + " outside [0,1]");
        }
      }
      for (const auto& q : spec->base_values) {
        if (!in_unit_interval(q)) {
          report.fail("rank_one: base value " + q.format() + " outside [0,1]");
        }
      }
      for (int i = 1; i < n; ++i) {
        if (spec->weights[static_cast<std::size_t>(i)] > spec->weights[static_cast<std::size_t>(i) - 1]) {
          // The ladder policy's invariant and bound are stated for agents
          // indexed by nonincreasing weight; reindex the instance instead of
          // silently permuting agents here.
          report.fail("rank_one: weights must be nonincreasing in agent id");
          break;
        }
      }
      break;
    }
    case ValuationClass::kRestrictedAdditive:
    case ValuationClass::kBinaryAdditive: {
      const auto* spec = std::get_if<RestrictedAdditiveSpec>(&inst.spec());
      if (!spec) {
        report.fail("restricted_additive: wrong parameter block");
        break;
      }
      if (static_cast<int>(spec->item_values.size()) != m) {
        report.fail("restricted_additive: expected one value per item");
        break;
      }
      if (static_cast<int>(spec->interested.size()) != n) {
        report.fail("restricted_additive: expected one interest row per agent");
        break;
      }
      for (const auto& row : spec->interested) {
        if (static_cast<int>(row.size()) != m) {
          report.fail("restricted_additive: expected one interest flag per item");
          return report;
        }
      }
      for (const auto& u : spec->item_values) {
        if (!in_unit_interval(u)) {
          report.fail("restricted_additive: item value " + u.format() + " outside [0,1]");
        }
        if (cls == ValuationClass::kBinaryAdditive && u != Rational(1)) {
          report.fail("binary_additive: item value must be exactly 1");
        }
      }
      break;
    }
    case ValuationClass::kBudgetAdditive: {
      const auto* spec = std::get_if<BudgetAdditiveSpec>(&inst.spec());
      if (!spec) {
        report.fail("budget_additive: wrong parameter block");
        break;
      }
      if (static_cast<int>(spec->budgets.size()) != n) {
        report.fail("budget_additive: expected one budget per agent");
        break;
      }
      if (matrix_shape_ok(spec->values, n, m, report, "budget_additive values")) {
        check_matrix_unit_range(spec->values, report, "budget_additive values");
      }
      for (const auto& b : spec->budgets) {
        if (!b.is_positive() || b > Rational(m)) {
          report.fail("budget_additive: budget " + b.format() + " outside (0, m]");
        }
      }
      break;
    }
    case ValuationClass::kMatroidRank: {
      const auto* spec = std::get_if<MatroidRankSpec>(&inst.spec());
      if (!spec) {
        report.fail("matroid_rank: wrong parameter block");
        break;
      }
      if (m > kMaxTableItems) {
        report.fail("matroid_rank: ground set larger than supported cap");
        break;
      }
      if (static_cast<int>(spec->bases.size()) != n) {
        report.fail("matroid_rank: expected a basis list per agent");
        break;
      }
      for (int i = 0; i < n; ++i) {
        const auto& bases = spec->bases[static_cast<std::size_t>(i)];
        if (bases.empty()) {
          report.fail("matroid_rank: empty basis list" + at_agent(i + 1));
          continue;
        }
        std::set<std::uint32_t> seen;
        bool shape_ok = true;
        for (const Bundle& basis : bases) {
          ItemId prev = 0;
          for (ItemId g : basis) {
            if (g < 1 || g > m || g <= prev) {
              report.fail("matroid_rank: basis is not a sorted set of valid items" + at_agent(i + 1));
              shape_ok = false;
              break;
            }
            prev = g;
          }
          if (!shape_ok) break;
          if (!seen.insert(bundle_mask(basis)).second) {
            report.fail("matroid_rank: duplicate basis" + at_agent(i + 1));
            shape_ok = false;
            break;
          }
          if (basis.size() != bases.front().size()) {
            report.fail("matroid_rank: bases must share a common size" + at_agent(i + 1));
            shape_ok = false;
            break;
          }
        }
        if (!shape_ok) continue;
        // Basis exchange axiom, checked exhaustively: for every pair of bases
        // and every x in B1 \ B2 there is y in B2 \ B1 with B1 - x + y a basis.
        for (const Bundle& b1 : bases) {
          for (const Bundle& b2 : bases) {
            const std::uint32_t m1 = bundle_mask(b1);
            const std::uint32_t m2 = bundle_mask(b2);
            for (ItemId x : b1) {
              if (bundle_contains(b2, x)) continue;
              bool exchanged = false;
              for (ItemId y : b2) {
                if (bundle_contains(b1, y)) continue;
                const std::uint32_t candidate =
                    (m1 & ~(1u << (x - 1))) | (1u << (y - 1));
                if (seen.count(candidate)) {
                  exchanged = true;
                  break;
                }
              }
              if (!exchanged) {
                report.fail("matroid_rank: basis exchange axiom fails" + at_agent(i + 1));
                (void)m2;
                return report;
              }
            }
          }
        }
      }
      break;
    }
    case ValuationClass::kIdenticalMonotone:
    case ValuationClass::kTable:
    case ValuationClass::kTableSupermodular: {
      const auto* spec = std::get_if<TableSpec>(&inst.spec());
      if (!spec) {
        report.fail("table: wrong parameter block");
        break;
      }
      if (m > kMaxTableItems) {
        report.fail("table: ground set larger than supported cap");
        break;
      }
      if (static_cast<int>(spec->tables.size()) != n) {
        report.fail("table: expected one table per agent");
        break;
      }
      for (int i = 0; i < n; ++i) {
        const auto& table = spec->tables[static_cast<std::size_t>(i)];
        if (!table_shape_ok(table, m)) {
          report.fail("table: expected an entry for every subset" + at_agent(i + 1));
          return report;
        }
        if (!table[0].is_zero()) {
          report.fail("table: not normalized, v(empty) != 0" + at_agent(i + 1));
        }
        if (!table_is_monotone(table, m)) {
          report.fail("table: not monotone" + at_agent(i + 1));
        }
        for (const auto& v : table) {
          if (v.is_negative()) {
            report.fail("table: negative value" + at_agent(i + 1));
            break;
          }
        }
        if (cls == ValuationClass::kTableSupermodular) {
          // Supermodularity can force deep marginals above 1 (stacked
          // superset bonuses), so only singleton marginals carry the unit
          // cap here; the exhaustive curvature check is the class's real
          // certificate.
          for (int g = 0; g < m; ++g) {
            if (table[1u << g] > Rational(1)) {
              report.fail("table_supermodular: singleton value above 1" + at_agent(i + 1));
              break;
            }
          }
          if (!table_is_supermodular(table, m)) {
            report.fail("table_supermodular: supermodularity fails" + at_agent(i + 1));
          }
        } else {
          if (!table_marginals_at_most_one(table, m)) {
            report.fail("table: marginal above 1" + at_agent(i + 1));
          }
        }
        if (cls == ValuationClass::kIdenticalMonotone && i > 0 &&
            table != spec->tables.front()) {
          report.fail("identical_monotone: tables differ across agents");
        }
      }
      break;
    }
  }

  if (!report.ok) {
    return report;
  }

  // Instance-level invariant shared by every class: singleton values stay in
  // the unit interval (the normalization all subsidy bounds are stated in).
  for (AgentId i = 1; i <= n; ++i) {
    for (ItemId g = 1; g <= m; ++g) {
      const Rational v = inst.singleton_value(i, g);
      if (!in_unit_interval(v)) {
        report.fail("singleton value " + v.format() + " outside [0,1]" + at_agent(i));
        return report;
      }
    }
  }
  return report;
}

}  // namespace fairdiv
