#include "fairdiv/instance.hpp"

#include "json.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace fairdiv {

using nlohmann::json;

std::string to_string(ValuationClass cls) {
  switch (cls) {
    case ValuationClass::kAdditive: return "additive";
    case ValuationClass::kSplc: return "splc";
    case ValuationClass::kKDemand: return "k_demand";
    case ValuationClass::kKValued: return "k_valued";
    case ValuationClass::kRankOne: return "rank_one";
    case ValuationClass::kRestrictedAdditive: return "restricted_additive";
    case ValuationClass::kBinaryAdditive: return "binary_additive";
    case ValuationClass::kBudgetAdditive: return "budget_additive";
    case ValuationClass::kMatroidRank: return "matroid_rank";
    case ValuationClass::kIdenticalMonotone: return "identical_monotone";
    case ValuationClass::kTable: return "table";
    case ValuationClass::kTableSupermodular: return "table_supermodular";
  }
  throw std::logic_error("to_string: unknown valuation class");
}

ValuationClass valuation_class_from_string(const std::string& name) {
  if (name == "additive") return ValuationClass::kAdditive;
  if (name == "splc") return ValuationClass::kSplc;
  if (name == "k_demand") return ValuationClass::kKDemand;
  if (name == "k_valued") return ValuationClass::kKValued;
  if (name == "rank_one") return ValuationClass::kRankOne;
  if (name == "restricted_additive") return ValuationClass::kRestrictedAdditive;
  if (name == "binary_additive") return ValuationClass::kBinaryAdditive;
  if (name == "budget_additive") return ValuationClass::kBudgetAdditive;
  if (name == "matroid_rank") return ValuationClass::kMatroidRank;
  if (name == "identical_monotone") return ValuationClass::kIdenticalMonotone;
  if (name == "table") return ValuationClass::kTable;
  if (name == "table_supermodular") return ValuationClass::kTableSupermodular;
  throw std::invalid_argument("unknown valuation class: '" + name + "'");
}

Instance::Instance(int n, int m, ValuationClass cls, ValuationSpec spec)
    : n_(n), m_(m), cls_(cls), spec_(std::move(spec)) {
  if (n_ < 1) {
    throw std::invalid_argument("instance: need at least one agent");
  }
  if (m_ < 0) {
    throw std::invalid_argument("instance: negative item count");
  }
}

namespace {

void check_item(int m, ItemId g) {
  if (g < 1 || g > m) {
    throw std::out_of_range("instance: item id out of range");
  }
}

void check_bundle(int m, const Bundle& bundle) {
  ItemId prev = 0;
  for (ItemId g : bundle) {
    check_item(m, g);
    if (g <= prev) {
      throw std::invalid_argument("instance: bundle not strictly increasing");
    }
    prev = g;
  }
}

Rational additive_sum(const std::vector<Rational>& row, const Bundle& bundle) {
  Rational total;
  for (ItemId g : bundle) {
    total += row[static_cast<std::size_t>(g) - 1];
  }
  return total;
}

}  // namespace

Rational Instance::value(AgentId agent, const Bundle& bundle) const {
  if (agent < 1 || agent > n_) {
    throw std::out_of_range("instance: agent id out of range");
  }
  check_bundle(m_, bundle);
  const std::size_t a = static_cast<std::size_t>(agent) - 1;

  if (const auto* add = std::get_if<AdditiveSpec>(&spec_)) {
    return additive_sum(add->values[a], bundle);
  }
  if (const auto* splc = std::get_if<SplcSpec>(&spec_)) {
    // Count the copies of each type inside the bundle, then sum the first
    // `count` (nonincreasing) copy values of that type.
    std::vector<int> copies(static_cast<std::size_t>(splc->num_types), 0);
    for (ItemId g : bundle) {
      copies[static_cast<std::size_t>(splc->item_type[static_cast<std::size_t>(g) - 1]) - 1] += 1;
    }
    Rational total;
    for (int t = 0; t < splc->num_types; ++t) {
      const auto& segs = splc->copy_values[a][static_cast<std::size_t>(t)];
      for (int l = 0; l < copies[static_cast<std::size_t>(t)]; ++l) {
        total += segs[static_cast<std::size_t>(l)];
      }
    }
    return total;
  }
  if (const auto* kd = std::get_if<KDemandSpec>(&spec_)) {
    std::vector<Rational> singles;
    singles.reserve(bundle.size());
    for (ItemId g : bundle) {
      singles.push_back(kd->values[a][static_cast<std::size_t>(g) - 1]);
    }
    std::sort(singles.begin(), singles.end(), std::greater<Rational>());
    Rational total;
    const std::size_t take = std::min<std::size_t>(singles.size(), static_cast<std::size_t>(kd->k));
    for (std::size_t idx = 0; idx < take; ++idx) {
      total += singles[idx];
    }
    return total;
  }
  if (const auto* kv = std::get_if<KValuedSpec>(&spec_)) {
    return additive_sum(kv->values[a], bundle);
  }
  if (const auto* ro = std::get_if<RankOneSpec>(&spec_)) {
    Rational base;
    for (ItemId g : bundle) {
      base += ro->base_values[static_cast<std::size_t>(g) - 1];
    }
    return ro->weights[a] * base;
  }
  if (const auto* ra = std::get_if<RestrictedAdditiveSpec>(&spec_)) {
    Rational total;
    for (ItemId g : bundle) {
      if (ra->interested[a][static_cast<std::size_t>(g) - 1]) {
        total += ra->item_values[static_cast<std::size_t>(g) - 1];
      }
    }
    return total;
  }
  if (const auto* ba = std::get_if<BudgetAdditiveSpec>(&spec_)) {
    return min(additive_sum(ba->values[a], bundle), ba->budgets[a]);
  }
  if (const auto* mr = std::get_if<MatroidRankSpec>(&spec_)) {
    // rank(S) = max over bases |S intersect B|: every independent subset of S
    // extends to a basis, and S intersect B is independent for each basis B.
    std::size_t best = 0;
    for (const Bundle& basis : mr->bases[a]) {
      std::size_t common = 0;
      for (ItemId g : basis) {
        if (bundle_contains(bundle, g)) {
          ++common;
        }
      }
      best = std::max(best, common);
    }
    return Rational(static_cast<long long>(best));
  }
  if (const auto* tb = std::get_if<TableSpec>(&spec_)) {
    return tb->tables[a][bundle_mask(bundle)];
  }
  throw std::logic_error("instance: unhandled valuation spec");
}

Rational Instance::singleton_value(AgentId agent, ItemId item) const {
  check_item(m_, item);
  return value(agent, Bundle{item});
}

Rational Instance::marginal(AgentId agent, const Bundle& bundle, ItemId item) const {
  if (bundle_contains(bundle, item)) {
    throw std::logic_error("marginal: item already in bundle");
  }
  return value(agent, bundle_with(bundle, item)) - value(agent, bundle);
}

// ---------------------------------------------------------------------------
// JSON (de)serialization. Rationals are "p/q" strings; tables list only
// nonzero entries as {"set": [...], "value": "p/q"}.

namespace {

json rational_to_json(const Rational& r) { return r.format(); }

Rational rational_from_json(const json& j) {
  if (!j.is_string()) {
    throw std::invalid_argument("instance json: rational must be a \"p/q\" string");
  }
  return Rational::parse(j.get<std::string>());
}

json matrix_to_json(const std::vector<std::vector<Rational>>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json jrow = json::array();
    for (const auto& v : row) {
      jrow.push_back(rational_to_json(v));
    }
    out.push_back(jrow);
  }
  return out;
}

std::vector<std::vector<Rational>> matrix_from_json(const json& j) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& jrow : j) {
    std::vector<Rational> row;
    for (const auto& v : jrow) {
      row.push_back(rational_from_json(v));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) {
    out.push_back(rational_to_json(v));
  }
  return out;
}

std::vector<Rational> vector_from_json(const json& j) {
  std::vector<Rational> values;
  for (const auto& v : j) {
    values.push_back(rational_from_json(v));
  }
  return values;
}

json table_to_json(const std::vector<Rational>& table) {
  json out = json::array();
  for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
    if (!table[mask].is_zero()) {
      json entry;
      entry["set"] = bundle_from_mask(mask);
      entry["value"] = rational_to_json(table[mask]);
      out.push_back(std::move(entry));
    }
  }
  return out;
}

std::vector<Rational> table_from_json(const json& j, int m) {
  std::vector<Rational> table(static_cast<std::size_t>(1) << m, Rational(0));
  for (const auto& entry : j) {
    Bundle set = entry.at("set").get<Bundle>();
    std::sort(set.begin(), set.end());
    table[bundle_mask(set)] = rational_from_json(entry.at("value"));
  }
  return table;
}

}  // namespace

json Instance::to_json() const {
  json j;
  j["n"] = n_;
  j["class"] = to_string(cls_);
  json items = json::array();
  for (ItemId g = 1; g <= m_; ++g) {
    items.push_back(g);
  }
  j["items"] = std::move(items);

  json params;
  if (const auto* add = std::get_if<AdditiveSpec>(&spec_)) {
    params["values"] = matrix_to_json(add->values);
  } else if (const auto* splc = std::get_if<SplcSpec>(&spec_)) {
    params["num_types"] = splc->num_types;
    params["item_types"] = splc->item_type;
    json agents = json::array();
    for (const auto& per_type : splc->copy_values) {
      json types = json::array();
      for (const auto& segs : per_type) {
        types.push_back(vector_to_json(segs));
      }
      agents.push_back(std::move(types));
    }
    params["copy_values"] = std::move(agents);
  } else if (const auto* kd = std::get_if<KDemandSpec>(&spec_)) {
    params["k"] = kd->k;
    params["values"] = matrix_to_json(kd->values);
  } else if (const auto* kv = std::get_if<KValuedSpec>(&spec_)) {
    params["k"] = kv->k;
    params["values"] = matrix_to_json(kv->values);
  } else if (const auto* ro = std::get_if<RankOneSpec>(&spec_)) {
    params["weights"] = vector_to_json(ro->weights);
    params["base_values"] = vector_to_json(ro->base_values);
  } else if (const auto* ra = std::get_if<RestrictedAdditiveSpec>(&spec_)) {
    if (cls_ != ValuationClass::kBinaryAdditive) {
      params["item_values"] = vector_to_json(ra->item_values);
    }
    json interested = json::array();
    for (const auto& row : ra->interested) {
      json jrow = json::array();
      for (bool flag : row) {
        jrow.push_back(flag ? 1 : 0);
      }
      interested.push_back(std::move(jrow));
    }
    params["interested"] = std::move(interested);
  } else if (const auto* ba = std::get_if<BudgetAdditiveSpec>(&spec_)) {
    params["budgets"] = vector_to_json(ba->budgets);
    params["values"] = matrix_to_json(ba->values);
  } else if (const auto* mr = std::get_if<MatroidRankSpec>(&spec_)) {
    params["bases"] = mr->bases;
  } else if (const auto* tb = std::get_if<TableSpec>(&spec_)) {
    if (cls_ == ValuationClass::kIdenticalMonotone) {
      params["table"] = table_to_json(tb->tables.front());
    } else {
      json tables = json::array();
      for (const auto& table : tb->tables) {
        tables.push_back(table_to_json(table));
      }
      params["tables"] = std::move(tables);
    }
  } else {
    throw std::logic_error("to_json: unhandled valuation spec");
  }
  j["params"] = std::move(params);
  return j;
}

Instance Instance::from_json(const json& j) {
  const int n = j.at("n").get<int>();
  const ValuationClass cls = valuation_class_from_string(j.at("class").get<std::string>());
  const auto items = j.at("items").get<std::vector<int>>();
  const int m = static_cast<int>(items.size());
  for (int idx = 0; idx < m; ++idx) {
    if (items[static_cast<std::size_t>(idx)] != idx + 1) {
      // Item ids are arrival indices by construction; a reordered list would
      // make transcripts ambiguous.
      throw std::invalid_argument("instance json: items must be [1..m] in arrival order");
    }
  }
  const json& params = j.at("params");

  ValuationSpec spec;
  switch (cls) {
    case ValuationClass::kAdditive:
      spec = AdditiveSpec{matrix_from_json(params.at("values"))};
      break;
    case ValuationClass::kSplc: {
      SplcSpec splc;
      splc.num_types = params.at("num_types").get<int>();
      splc.item_type = params.at("item_types").get<std::vector<int>>();
      for (const auto& types : params.at("copy_values")) {
        std::vector<std::vector<Rational>> per_type;
        for (const auto& segs : types) {
          per_type.push_back(vector_from_json(segs));
        }
        splc.copy_values.push_back(std::move(per_type));
      }
      spec = std::move(splc);
      break;
    }
    case ValuationClass::kKDemand:
      spec = KDemandSpec{params.at("k").get<int>(), matrix_from_json(params.at("values"))};
      break;
    case ValuationClass::kKValued:
      spec = KValuedSpec{params.at("k").get<int>(), matrix_from_json(params.at("values"))};
      break;
    case ValuationClass::kRankOne:
      spec = RankOneSpec{vector_from_json(params.at("weights")),
                         vector_from_json(params.at("base_values"))};
      break;
    case ValuationClass::kRestrictedAdditive:
    case ValuationClass::kBinaryAdditive: {
      RestrictedAdditiveSpec ra;
      for (const auto& row : params.at("interested")) {
        std::vector<bool> flags;
        for (const auto& cell : row) {
          flags.push_back(cell.get<int>() != 0);
        }
        ra.interested.push_back(std::move(flags));
      }
      if (cls == ValuationClass::kBinaryAdditive) {
        ra.item_values.assign(static_cast<std::size_t>(m), Rational(1));
      } else {
        ra.item_values = vector_from_json(params.at("item_values"));
      }
      spec = std::move(ra);
      break;
    }
    case ValuationClass::kBudgetAdditive:
      spec = BudgetAdditiveSpec{vector_from_json(params.at("budgets")),
                                matrix_from_json(params.at("values"))};
      break;
    case ValuationClass::kMatroidRank: {
      MatroidRankSpec mr;
      mr.bases = params.at("bases").get<std::vector<std::vector<Bundle>>>();
      for (auto& per_agent : mr.bases) {
        for (auto& basis : per_agent) {
          std::sort(basis.begin(), basis.end());
        }
      }
      spec = std::move(mr);
      break;
    }
    case ValuationClass::kIdenticalMonotone: {
      TableSpec tb;
      std::vector<Rational> shared = table_from_json(params.at("table"), m);
      tb.tables.assign(static_cast<std::size_t>(n), shared);
      spec = std::move(tb);
      break;
    }
    case ValuationClass::kTable:
    case ValuationClass::kTableSupermodular: {
      TableSpec tb;
      for (const auto& table : params.at("tables")) {
        tb.tables.push_back(table_from_json(table, m));
      }
      spec = std::move(tb);
      break;
    }
  }
  return Instance(n, m, cls, std::move(spec));
}

}  // namespace fairdiv
