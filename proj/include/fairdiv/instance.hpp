#pragma once

#include "json.hpp"

#include <string>
#include <variant>
#include <vector>

#include "fairdiv/rational.hpp"
#include "fairdiv/types.hpp"

namespace fairdiv {

// Valuation classes supported by the engine. BinaryAdditive is restricted
// additive with every item value equal to 1; IdenticalMonotone, Table and
// TableSupermodular share the explicit-table representation and differ only
// in which properties the validator asserts.
enum class ValuationClass {
  kAdditive,
  kSplc,
  kKDemand,
  kKValued,
  kRankOne,
  kRestrictedAdditive,
  kBinaryAdditive,
  kBudgetAdditive,
  kMatroidRank,
  kIdenticalMonotone,
  kTable,
  kTableSupermodular,
};

std::string to_string(ValuationClass cls);
ValuationClass valuation_class_from_string(const std::string& name);

// ---------------------------------------------------------------------------
// Per-class parameter blocks. Outer vectors are agent-major (index = agent-1),
// inner vectors item-major (index = item-1) unless stated otherwise.

struct AdditiveSpec {
  std::vector<std::vector<Rational>> values;  // values[i-1][g-1] = v_i({g})
};

// Separable piecewise-linear concave: items are copies of a type; the l-th
// copy of type t is worth copy_values[i-1][t-1][l-1] to agent i, and the
// per-type copy values are nonincreasing. Value adds up across types.
struct SplcSpec {
  int num_types = 0;
  std::vector<int> item_type;  // item_type[g-1] in 1..num_types
  std::vector<std::vector<std::vector<Rational>>> copy_values;
};

// v_i(S) = sum of the k largest singleton values inside S.
struct KDemandSpec {
  int k = 1;
  std::vector<std::vector<Rational>> values;
};

// Additive, but every agent draws its positive singleton values from a
// personal palette of at most k distinct values.
struct KValuedSpec {
  int k = 1;
  std::vector<std::vector<Rational>> values;
};

// v_i(S) = weights[i-1] * sum of base_values over S. Agents must be indexed
// in nonincreasing weight order; the ladder policy's guarantees are stated
// in that order and the validator enforces it.
struct RankOneSpec {
  std::vector<Rational> weights;
  std::vector<Rational> base_values;
};

// v_i({g}) is either 0 or the common item value u_g, per interest flag.
struct RestrictedAdditiveSpec {
  std::vector<Rational> item_values;
  std::vector<std::vector<bool>> interested;  // interested[i-1][g-1]
};

// v_i(S) = min(additive sum, budget B_i).
struct BudgetAdditiveSpec {
  std::vector<Rational> budgets;
  std::vector<std::vector<Rational>> values;
};

// v_i(S) = matroid rank of S: the size of the largest subset of S contained
// in one of agent i's bases. Bases are listed explicitly (ground <= 12).
struct MatroidRankSpec {
  std::vector<std::vector<Bundle>> bases;  // bases[i-1] = agent i's bases
};

// Explicit set-function tables over at most 12 items, stored densely by
// bitmask. IdenticalMonotone replicates one shared table across agents.
struct TableSpec {
  std::vector<std::vector<Rational>> tables;  // tables[i-1][mask] = v_i(mask)
};

using ValuationSpec =
    std::variant<AdditiveSpec, SplcSpec, KDemandSpec, KValuedSpec, RankOneSpec,
                 RestrictedAdditiveSpec, BudgetAdditiveSpec, MatroidRankSpec,
                 TableSpec>;

// Largest ground set for which explicit tables/matroid bases are accepted;
// keeps exhaustive property checks (all (S, g, h) triples) cheap.
inline constexpr int kMaxTableItems = 12;

// ---------------------------------------------------------------------------

class Instance {
 public:
  Instance() = default;
  Instance(int n, int m, ValuationClass cls, ValuationSpec spec);

  int n() const { return n_; }
  int m() const { return m_; }
  ValuationClass valuation_class() const { return cls_; }
  const ValuationSpec& spec() const { return spec_; }

  // Exact bundle value v_i(S). S must be a sorted set of valid item ids.
  Rational value(AgentId agent, const Bundle& bundle) const;
  Rational singleton_value(AgentId agent, ItemId item) const;
  // v_i(S + g) - v_i(S); item must not already be in the bundle.
  Rational marginal(AgentId agent, const Bundle& bundle, ItemId item) const;

  nlohmann::json to_json() const;
  static Instance from_json(const nlohmann::json& j);

 private:
  int n_ = 0;
  int m_ = 0;
  ValuationClass cls_ = ValuationClass::kAdditive;
  ValuationSpec spec_;
};

// ---------------------------------------------------------------------------
// Validation. `ok` is true iff every invariant of the instance's class holds:
// shape consistency, value ranges (all singleton values in [0, 1]), class
// structure (nonincreasing SPLC copy values, at most k distinct positive
// values per agent for k-valued, nonincreasing rank-one weights, matroid
// exchange axiom, table monotonicity/normalization, exhaustive
// sub/supermodularity where the class claims it). Tables carry the unit cap
// on every marginal except for the supermodular class, where only singleton
// marginals are capped (supermodularity can force larger deep marginals).

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> issues;

  void fail(std::string what);
};

ValidationReport validate_instance(const Instance& instance);

// Exhaustive pairwise checks over all (S, g, h) triples; used by the
// validator and directly by adversary tests.
bool table_is_submodular(const std::vector<Rational>& table, int m);
bool table_is_supermodular(const std::vector<Rational>& table, int m);
bool table_is_monotone(const std::vector<Rational>& table, int m);

}  // namespace fairdiv
