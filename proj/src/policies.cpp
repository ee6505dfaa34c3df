#include "fairdiv/policies.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairdiv {

OnlineView::OnlineView(const Instance& instance, int arrived)
    : instance_(&instance), arrived_(arrived) {
  if (arrived < 0 || arrived > instance.m()) {
    throw std::out_of_range("online view: arrival frontier outside the stream");
  }
}

void OnlineView::check_arrived(ItemId item) const {
  if (item < 1 || item > arrived_) {
    throw std::logic_error("online view: item " + std::to_string(item) +
                           " has not arrived yet (frontier " + std::to_string(arrived_) + ")");
  }
}

Rational OnlineView::value(AgentId agent, const Bundle& bundle) const {
  for (ItemId g : bundle) {
    check_arrived(g);
  }
  return instance_->value(agent, bundle);
}

Rational OnlineView::singleton_value(AgentId agent, ItemId item) const {
  check_arrived(item);
  return instance_->singleton_value(agent, item);
}

Rational OnlineView::marginal(AgentId agent, const Bundle& bundle, ItemId item) const {
  for (ItemId g : bundle) {
    check_arrived(g);
  }
  check_arrived(item);
  return instance_->marginal(agent, bundle, item);
}

int OnlineView::k() const {
  if (const auto* kd = std::get_if<KDemandSpec>(&instance_->spec())) {
    return kd->k;
  }
  if (const auto* kv = std::get_if<KValuedSpec>(&instance_->spec())) {
    return kv->k;
  }
  throw std::logic_error("online view: class carries no k parameter");
}

const std::vector<Rational>& OnlineView::agent_weights() const {
  if (const auto* ro = std::get_if<RankOneSpec>(&instance_->spec())) {
    return ro->weights;
  }
  throw std::logic_error("online view: class carries no agent weights");
}

Rational OnlineView::item_quality(ItemId item) const {
  check_arrived(item);
  if (const auto* ro = std::get_if<RankOneSpec>(&instance_->spec())) {
    return ro->base_values[static_cast<std::size_t>(item) - 1];
  }
  throw std::logic_error("online view: class carries no item qualities");
}

Rational OnlineView::common_item_value(ItemId item) const {
  check_arrived(item);
  if (const auto* ra = std::get_if<RestrictedAdditiveSpec>(&instance_->spec())) {
    return ra->item_values[static_cast<std::size_t>(item) - 1];
  }
  throw std::logic_error("online view: class carries no common item values");
}

bool OnlineView::interested(AgentId agent, ItemId item) const {
  check_arrived(item);
  if (const auto* ra = std::get_if<RestrictedAdditiveSpec>(&instance_->spec())) {
    return ra->interested[static_cast<std::size_t>(agent) - 1]
                         [static_cast<std::size_t>(item) - 1];
  }
  throw std::logic_error("online view: class carries no interest flags");
}

namespace {

bool is_additive_like(ValuationClass cls) {
  switch (cls) {
    case ValuationClass::kAdditive:
    case ValuationClass::kKValued:
    case ValuationClass::kRestrictedAdditive:
    case ValuationClass::kBinaryAdditive:
      return true;
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------

class MaxMarginalPolicy final : public OnlinePolicy {
 public:
  std::string name() const override { return "max_marginal"; }

  bool supports(ValuationClass cls) const override {
    return is_additive_like(cls) || cls == ValuationClass::kSplc;
  }

  AgentId choose(const OnlineView& view, const Allocation& allocation,
                 ItemId item) const override {
    AgentId best = 1;
    Rational best_gain = view.marginal(1, allocation.bundle(1), item);
    for (AgentId i = 2; i <= view.n(); ++i) {
      const Rational gain = view.marginal(i, allocation.bundle(i), item);
      if (gain > best_gain) {
        best = i;
        best_gain = gain;
      }
    }
    return best;
  }

  std::optional<Rational> subsidy_bound(const OnlineView& view) const override {
    if (!supports(view.valuation_class())) {
      return std::nullopt;
    }
    return Rational(static_cast<long long>(view.arrived()) * (view.n() - 1));
  }
};

class MaxSingletonPolicy final : public OnlinePolicy {
 public:
  std::string name() const override { return "max_singleton"; }

  bool supports(ValuationClass cls) const override {
    return cls == ValuationClass::kKDemand;
  }

  AgentId choose(const OnlineView& view, const Allocation& /*allocation*/,
                 ItemId item) const override {
    AgentId best = 1;
    Rational best_value = view.singleton_value(1, item);
    for (AgentId i = 2; i <= view.n(); ++i) {
      const Rational value = view.singleton_value(i, item);
      if (value > best_value) {
        best = i;
        best_value = value;
      }
    }
    return best;
  }

  std::optional<Rational> subsidy_bound(const OnlineView& view) const override {
    if (!supports(view.valuation_class())) {
      return std::nullopt;
    }
    const long long effective = std::min<long long>(view.arrived(), view.k());
    return Rational(effective * (view.n() - 1));
  }
};

class TypeRoundRobinPolicy final : public OnlinePolicy {
 public:
  std::string name() const override { return "type_round_robin"; }

  bool supports(ValuationClass cls) const override {
    return cls == ValuationClass::kKValued;
  }

  AgentId choose(const OnlineView& view, const Allocation& /*allocation*/,
                 ItemId item) const override {
    const int n = view.n();
    const std::vector<Rational> type = profile(view, item);

    // The item's position within its own type, counting this arrival.
    int count = 0;
    for (ItemId j = 1; j <= item; ++j) {
      if (profile(view, j) == type) {
        ++count;
      }
    }

    // Rotate through agents in decreasing value for this type, ties upward.
    std::vector<AgentId> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i + 1;
    std::stable_sort(order.begin(), order.end(), [&](AgentId a, AgentId b) {
      return type[static_cast<std::size_t>(a) - 1] > type[static_cast<std::size_t>(b) - 1];
    });
    return order[static_cast<std::size_t>((count - 1) % n)];
  }

  std::optional<Rational> subsidy_bound(const OnlineView& view) const override {
    if (!supports(view.valuation_class())) {
      return std::nullopt;
    }
    BigInt types = 1;
    for (int i = 0; i < view.n(); ++i) {
      types *= view.k();
    }
    return Rational(BigInt(view.n()) * BigInt(view.n()) * types, 1);
  }

 private:
  static std::vector<Rational> profile(const OnlineView& view, ItemId item) {
    std::vector<Rational> values;
    values.reserve(static_cast<std::size_t>(view.n()));
    for (AgentId i = 1; i <= view.n(); ++i) {
      values.push_back(view.singleton_value(i, item));
    }
    return values;
  }
};

class RankOneLadderPolicy final : public OnlinePolicy {
 public:
  std::string name() const override { return "rank_one_ladder"; }

  bool supports(ValuationClass cls) const override {
    return cls == ValuationClass::kRankOne;
  }

  AgentId choose(const OnlineView& view, const Allocation& allocation,
                 ItemId /*item*/) const override {
    const int n = view.n();
    // Quality sums are shared across agents (value = weight * quality), so
    // the ladder compares bundles in pure quality terms.
    std::vector<Rational> quality(static_cast<std::size_t>(n));
    for (AgentId i = 1; i <= n; ++i) {
      Rational sum;
      for (ItemId g : allocation.bundle(i)) {
        sum += view.item_quality(g);
      }
      quality[static_cast<std::size_t>(i) - 1] = sum;
    }
    // A unit gap between neighbours is repaired immediately; otherwise the
    // heaviest-weight agent keeps accumulating.
    for (AgentId i = 1; i < n; ++i) {
      if (quality[static_cast<std::size_t>(i) - 1] >=
          quality[static_cast<std::size_t>(i)] + Rational(1)) {
        return i + 1;
      }
    }
    return 1;
  }

  std::optional<Rational> subsidy_bound(const OnlineView& view) const override {
    if (!supports(view.valuation_class())) {
      return std::nullopt;
    }
    const long long n = view.n();
    return Rational(n * (n + 1) / 2 - 1);
  }
};

class GreedyMinValueInterestedPolicy final : public OnlinePolicy {
 public:
  std::string name() const override { return "greedy_min_value_interested"; }

  bool supports(ValuationClass cls) const override {
    return cls == ValuationClass::kRestrictedAdditive ||
           cls == ValuationClass::kBinaryAdditive;
  }

  AgentId choose(const OnlineView& view, const Allocation& allocation,
                 ItemId item) const override {
    AgentId best = 0;
    Rational best_value;
    for (AgentId i = 1; i <= view.n(); ++i) {
      if (!view.singleton_value(i, item).is_positive()) {
        continue;
      }
      const Rational own = view.value(i, allocation.bundle(i));
      if (best == 0 || own < best_value) {
        best = i;
        best_value = own;
      }
    }
    return best == 0 ? 1 : best;  // an item nobody wants parks on agent 1
  }

  std::optional<Rational> subsidy_bound(const OnlineView& view) const override {
    if (!supports(view.valuation_class())) {
      return std::nullopt;
    }
    const long long n = view.n();
    return Rational(n * (n - 1) / 2);
  }
};

class MinValueAgentPolicy final : public OnlinePolicy {
 public:
  std::string name() const override { return "min_value_agent"; }

  bool supports(ValuationClass cls) const override {
    return cls == ValuationClass::kIdenticalMonotone;
  }

  AgentId choose(const OnlineView& view, const Allocation& allocation,
                 ItemId /*item*/) const override {
    AgentId best = 1;
    Rational best_value = view.value(1, allocation.bundle(1));
    for (AgentId i = 2; i <= view.n(); ++i) {
      const Rational own = view.value(i, allocation.bundle(i));
      if (own < best_value) {
        best = i;
        best_value = own;
      }
    }
    return best;
  }

  std::optional<Rational> subsidy_bound(const OnlineView& view) const override {
    if (!supports(view.valuation_class())) {
      return std::nullopt;
    }
    return Rational(view.n() - 1);
  }
};

}  // namespace

std::unique_ptr<OnlinePolicy> make_policy(const std::string& name) {
  if (name == "max_marginal") return std::make_unique<MaxMarginalPolicy>();
  if (name == "max_singleton") return std::make_unique<MaxSingletonPolicy>();
  if (name == "type_round_robin") return std::make_unique<TypeRoundRobinPolicy>();
  if (name == "rank_one_ladder") return std::make_unique<RankOneLadderPolicy>();
  if (name == "greedy_min_value_interested") {
    return std::make_unique<GreedyMinValueInterestedPolicy>();
  }
  if (name == "min_value_agent") return std::make_unique<MinValueAgentPolicy>();
  throw std::invalid_argument("unknown policy: '" + name + "'");
}

std::vector<std::string> policy_names() {
  return {"max_marginal",   "max_singleton",              "type_round_robin",
          "rank_one_ladder", "greedy_min_value_interested", "min_value_agent"};
}

}  // namespace fairdiv
