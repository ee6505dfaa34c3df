// Command-line driver: generate or load instances, run online policies,
// unleash adaptive adversaries, verify allocations against independent
// oracles, and sweep subsidy measurements into CSV tables.
//
// Exit codes: 0 success, 1 invariant violation (a policy lost local
// efficiency, a bound was exceeded, or an internal cross-check failed),
// 2 usage error, 3 enumeration capability exceeded.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairdiv/adversaries.hpp"
#include "fairdiv/engine.hpp"
#include "fairdiv/envy_graph.hpp"
#include "fairdiv/generators.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/oracles.hpp"
#include "fairdiv/policies.hpp"
#include "fairdiv/reporting.hpp"
#include "json.hpp"

namespace {

using namespace fairdiv;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapability = 3;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  out << text;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open file: " + path);
  }
  return nlohmann::json::parse(in);
}

// CLI names are hyphenated; a couple of short forms expand to the full
// registered policy names.
std::string canonical_policy_name(std::string name) {
  if (name == "rank-one") return "rank_one_ladder";
  if (name == "greedy-min-value") return "greedy_min_value_interested";
  for (char& c : name) {
    if (c == '-') c = '_';
  }
  return name;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
  std::vector<int> values;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ',')) {
    try {
      std::size_t used = 0;
      int value = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      values.push_back(value);
    } catch (const std::exception&) {
      throw std::invalid_argument(flag + ": expected comma-separated integers, got '" +
                                  text + "'");
    }
  }
  if (values.empty()) {
    throw std::invalid_argument(flag + ": empty list");
  }
  return values;
}

// Shared generator/loader options for `run` and `sweep`.
struct SourceArgs {
  std::string instance_file;
  std::string gen;
  std::string cls;
  int n = 0;
  int m = 0;
  std::string epsilon;
  std::uint64_t seed = 0;
  bool has_seed = false;
};

void add_source_options(CLI::App* cmd, SourceArgs& args, bool allow_file) {
  if (allow_file) {
    cmd->add_option("--instance", args.instance_file,
                    "instance JSON file (exclusive with --gen)");
  }
  cmd->add_option("--gen", args.gen,
                  "generator: table2 | rank-one-hard | single-unit-good | "
                  "unit-demand-example | random");
  cmd->add_option("--class", args.cls, "valuation class for --gen random");
  cmd->add_option("--n", args.n, "number of agents");
  cmd->add_option("--m", args.m, "number of items");
  cmd->add_option("--epsilon", args.epsilon,
                  "rational p/q; default 1/2 for table2, 1/(10n^2) for rank-one-hard");
  auto* seed_opt = cmd->add_option("--seed", args.seed,
                                   "RNG seed; mandatory with --gen random");
  cmd->callback([&args, seed_opt]() { args.has_seed = seed_opt->count() > 0; });
}

// The per-cell RNG folds (seed, n, m, trial) through a seed sequence, so any
// sweep cell reproduces in isolation regardless of execution order.
Rng cell_rng(std::uint64_t seed, int n, int m, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(m),
                    static_cast<std::uint32_t>(trial)};
  return Rng(seq);
}

Instance generate_instance(const SourceArgs& args, std::uint64_t trial) {
  if (args.gen == "table2") {
    Rational eps = args.epsilon.empty() ? Rational(1, 2) : Rational::parse(args.epsilon);
    return make_additive_lower_bound(args.n, args.m, eps);
  }
  if (args.gen == "rank-one-hard") {
    if (args.n < 1) {
      throw std::invalid_argument("--gen rank-one-hard requires --n");
    }
    Rational eps = args.epsilon.empty() ? Rational(1, 10 * args.n * args.n)
                                        : Rational::parse(args.epsilon);
    return make_rank_one_lower_bound(args.n, eps);
  }
  if (args.gen == "single-unit-good") {
    return make_single_unit_good(args.n);
  }
  if (args.gen == "unit-demand-example") {
    return make_unit_demand_inefficiency_example();
  }
  if (args.gen == "random") {
    if (args.cls.empty()) {
      throw std::invalid_argument("--gen random requires --class");
    }
    if (!args.has_seed) {
      throw std::invalid_argument("--gen random requires --seed for reproducibility");
    }
    std::string cls_name = args.cls;
    for (char& c : cls_name) {
      if (c == '-') c = '_';
    }
    ValuationClass cls = valuation_class_from_string(cls_name);
    Rng rng = cell_rng(args.seed, args.n, args.m, trial);
    return random_instance(cls, args.n, args.m, rng);
  }
  throw std::invalid_argument("unknown generator: '" + args.gen + "'");
}

Instance resolve_instance(const SourceArgs& args) {
  const bool have_file = !args.instance_file.empty();
  const bool have_gen = !args.gen.empty();
  if (have_file == have_gen) {
    throw std::invalid_argument("pass exactly one of --instance and --gen");
  }
  if (have_file) {
    return Instance::from_json(load_json_file(args.instance_file));
  }
  return generate_instance(args, 0);
}

int report_invalid(const ValidationReport& report) {
  std::cerr << "invalid instance:\n";
  for (const std::string& issue : report.issues) {
    std::cerr << "  - " << issue << '\n';
  }
  return kExitViolation;
}

std::unique_ptr<OnlinePolicy> resolve_policy(const std::string& cli_name,
                                             const Instance& instance,
                                             bool allow_unproven) {
  auto policy = make_policy(canonical_policy_name(cli_name));
  if (!policy->supports(instance.valuation_class()) && !allow_unproven) {
    throw std::invalid_argument(
        "policy '" + policy->name() + "' has no proven guarantee for class '" +
        to_string(instance.valuation_class()) + "'; pass --allow-unproven to run anyway");
  }
  return policy;
}

// Re-simulate the run prefix by prefix against the permutation oracle; the
// engine's cycle detector must agree at every step.
void cross_check_prefixes(const Instance& instance, const RunResult& result) {
  Allocation prefix(instance.n());
  for (const StepRecord& step : result.steps) {
    prefix.give(step.recipient, step.item);
    LeCheckResult oracle = brute_force_le(instance, prefix);
    if (oracle.locally_efficient != step.locally_efficient) {
      throw std::logic_error("cycle detector and permutation oracle disagree at step " +
                             std::to_string(step.step));
    }
  }
}

// --- run ---------------------------------------------------------------

struct RunArgs {
  SourceArgs source;
  std::string policy;
  bool allow_unproven = false;
  bool verify = false;
  std::string format = "csv";
  std::string out = "-";
  std::string dump_instance;
};

int cmd_run(const RunArgs& args) {
  Instance instance = resolve_instance(args.source);
  ValidationReport validation = validate_instance(instance);
  if (!validation.ok) {
    return report_invalid(validation);
  }
  auto policy = resolve_policy(args.policy, instance, args.allow_unproven);

  RunResult result = run_online(instance, *policy);
  if (args.verify) {
    cross_check_prefixes(instance, result);
  }

  if (!args.dump_instance.empty()) {
    write_output(args.dump_instance, instance.to_json().dump(2) + "\n");
  }
  std::string text = args.format == "jsonl" ? run_jsonl(instance, policy->name(), result)
                                            : run_csv(result);
  write_output(args.out, text);

  bool invariants_held = result.always_locally_efficient;
  for (const StepRecord& step : result.steps) {
    if (step.slack.has_value() && *step.slack < Rational(0)) {
      invariants_held = false;  // proven bound exceeded
    }
  }
  return invariants_held ? kExitOk : kExitViolation;
}

// --- adversary ---------------------------------------------------------

struct AdversaryArgs {
  std::string cls;
  std::string policy;
  int n = 0;
  std::string epsilon;
  int cap = 0;
  std::string out = "-";
};

int cmd_adversary(const AdversaryArgs& args) {
  const auto names = adversary_names();
  if (std::find(names.begin(), names.end(), args.cls) == names.end()) {
    throw std::invalid_argument("unknown adversary class: '" + args.cls + "'");
  }
  AdversaryParams params;
  params.n = args.n;
  if (!args.epsilon.empty()) {
    params.epsilon = Rational::parse(args.epsilon);
  }
  params.phase_item_cap = args.cap;

  nlohmann::json out;
  if (args.policy == "exhaustive") {
    int depth = 0;
    if (args.cls == "budget-additive") {
      depth = 2;
    } else if (args.cls == "binary-submodular") {
      depth = 4;
    } else if (args.cls == "binary-supermodular") {
      depth = 5;
    } else {
      throw std::invalid_argument(
          "exhaustive enumeration covers the bounded game trees only "
          "(budget-additive, binary-submodular, binary-supermodular)");
    }
    auto defeats = enumerate_scripted_defeats(
        [&](const OnlinePolicy& policy) { return run_adversary(args.cls, policy, params); },
        depth);
    out["adversary"] = args.cls;
    nlohmann::json branches = nlohmann::json::array();
    for (const BranchDefeat& defeat : defeats) {
      nlohmann::json branch;
      branch["script"] = defeat.script;
      branch["outcome"] = defeat.outcome.to_json();
      branches.push_back(std::move(branch));
    }
    out["branches"] = std::move(branches);
    out["defeated"] = defeats.size();
    out["total_branches"] = defeats.size();
  } else {
    auto policy = make_policy(canonical_policy_name(args.policy));
    AdversaryOutcome outcome = run_adversary(args.cls, *policy, params);
    out = outcome.to_json();
  }
  write_output(args.out, out.dump(2) + "\n");
  return kExitOk;
}

// --- verify ------------------------------------------------------------

struct VerifyArgs {
  std::string instance_file;
  std::string allocation_file;
  std::string out = "-";
};

int cmd_verify(const VerifyArgs& args) {
  nlohmann::json report;
  Instance instance = Instance::from_json(load_json_file(args.instance_file));
  ValidationReport validation = validate_instance(instance);
  report["instance_valid"] = validation.ok;
  if (!validation.ok) {
    report["issues"] = validation.issues;
    write_output(args.out, report.dump(2) + "\n");
    return kExitViolation;
  }

  if (!args.allocation_file.empty()) {
    Allocation allocation = Allocation::from_json(load_json_file(args.allocation_file));
    if (allocation.n() != instance.n()) {
      throw std::invalid_argument("allocation has " +
                                  std::to_string(allocation.n()) +
                                  " bundles for " + std::to_string(instance.n()) +
                                  " agents");
    }

    EnvyGraph graph = build_envy_graph(instance, allocation);
    auto cycle = find_positive_cycle(graph);
    LeCheckResult oracle = brute_force_le(instance, allocation);
    if (oracle.locally_efficient == cycle.has_value()) {
      throw std::logic_error("cycle detector and permutation oracle disagree");
    }
    report["locally_efficient"] = oracle.locally_efficient;
    report["welfare"] = oracle.current_welfare.format();

    if (oracle.locally_efficient) {
      SubsidyReport fast = min_subsidy(graph);
      SubsidyReport slow = brute_force_heaviest_paths(graph);
      if (fast.payments != slow.payments) {
        throw std::logic_error("subsidy dynamic program and path enumeration disagree");
      }
      if (!payments_eliminate_envy(graph, fast.payments)) {
        throw std::logic_error("minimum payments fail to eliminate envy");
      }
      bool some_zero = false;
      for (const Rational& p : fast.payments) {
        if (p == Rational(0)) some_zero = true;
      }
      if (!some_zero) {
        throw std::logic_error("minimum payments charge every agent");
      }
      report["subsidy"] = fast.to_json();
    } else {
      report["best_welfare"] = oracle.best_welfare.format();
      report["improving_permutation"] = oracle.best_permutation;
    }
  }
  write_output(args.out, report.dump(2) + "\n");
  return kExitOk;
}

// --- sweep -------------------------------------------------------------

struct SweepArgs {
  SourceArgs source;
  std::string policy;
  std::string n_list;
  std::string m_list;
  int trials = 1;
  bool allow_unproven = false;
  bool verify = false;
  std::string out = "-";
};

int cmd_sweep(const SweepArgs& args) {
  if (args.source.gen.empty()) {
    throw std::invalid_argument("sweep requires --gen");
  }
  if (args.trials < 1) {
    throw std::invalid_argument("--trials must be positive");
  }
  std::vector<int> ns = parse_int_list(args.n_list, "--n-list");
  std::vector<int> ms =
      args.m_list.empty() ? std::vector<int>{0} : parse_int_list(args.m_list, "--m-list");

  std::vector<SweepRow> rows;
  for (int n : ns) {
    for (int m : ms) {
      for (int trial = 0; trial < args.trials; ++trial) {
        SourceArgs cell = args.source;
        cell.n = n;
        cell.m = m;
        Instance instance = generate_instance(cell, static_cast<std::uint64_t>(trial));
        ValidationReport validation = validate_instance(instance);
        if (!validation.ok) {
          return report_invalid(validation);
        }
        auto policy = resolve_policy(args.policy, instance, args.allow_unproven);
        RunResult result = run_online(instance, *policy);
        if (args.verify) {
          cross_check_prefixes(instance, result);
        }

        SweepRow row;
        row.valuation_class = to_string(instance.valuation_class());
        row.n = n;
        row.m = instance.m();
        row.trial = static_cast<std::uint64_t>(trial);
        row.subsidy = result.max_prefix_subsidy;
        row.bound = policy->subsidy_bound(OnlineView(instance, instance.m()));
        rows.push_back(std::move(row));
      }
    }
  }
  write_output(args.out, sweep_csv(std::move(rows)));
  return kExitOk;
}

// --- validate ----------------------------------------------------------

struct ValidateArgs {
  std::string instance_file;
  std::string out = "-";
};

int cmd_validate(const ValidateArgs& args) {
  nlohmann::json report;
  try {
    Instance instance = Instance::from_json(load_json_file(args.instance_file));
    ValidationReport validation = validate_instance(instance);
    report["valid"] = validation.ok;
    report["class"] = to_string(instance.valuation_class());
    report["n"] = instance.n();
    report["m"] = instance.m();
    if (!validation.ok) {
      report["issues"] = validation.issues;
    }
    write_output(args.out, report.dump(2) + "\n");
    return validation.ok ? kExitOk : kExitViolation;
  } catch (const nlohmann::json::exception& e) {
    report["valid"] = false;
    report["issues"] = std::vector<std::string>{std::string("json: ") + e.what()};
    write_output(args.out, report.dump(2) + "\n");
    return kExitViolation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact engine for online fair division with subsidies: run policies "
      "item by item, certify local efficiency, compute minimum "
      "envy-eliminating payments, and play adaptive adversaries."};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand(
      "run", "feed items to a policy; per-step CSV or JSON-lines report; "
             "exit 0 iff every prefix stayed locally efficient within its bound");
  add_source_options(run_cmd, run_args.source, /*allow_file=*/true);
  run_cmd->add_option("--policy", run_args.policy, "online policy name")->required();
  run_cmd->add_flag("--allow-unproven", run_args.allow_unproven,
                    "run a policy outside its proven valuation class");
  run_cmd->add_flag("--verify", run_args.verify,
                    "cross-check every prefix against the permutation oracle");
  run_cmd->add_option("--format", run_args.format, "csv (default) or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  run_cmd->add_option("--out", run_args.out, "output file, - for stdout");
  run_cmd->add_option("--dump-instance", run_args.dump_instance,
                      "also write the instance JSON to this file");

  AdversaryArgs adversary_args;
  auto* adversary_cmd = app.add_subcommand(
      "adversary", "play an adaptive lower-bound construction against a policy "
                   "(or exhaustively against every choice script)");
  adversary_cmd
      ->add_option("--class", adversary_args.cls,
                   "budget-additive | binary-submodular | binary-supermodular | "
                   "restricted-additive")
      ->required();
  adversary_cmd
      ->add_option("--policy", adversary_args.policy, "policy name or 'exhaustive'")
      ->required();
  adversary_cmd->add_option("--n", adversary_args.n,
                            "number of agents (restricted-additive)");
  adversary_cmd->add_option("--epsilon", adversary_args.epsilon,
                            "rational p/q in (0, 1/4) (budget-additive)");
  adversary_cmd->add_option("--cap", adversary_args.cap,
                            "per-phase item cap override (restricted-additive)");
  adversary_cmd->add_option("--out", adversary_args.out, "output file, - for stdout");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand(
      "verify", "validate an instance and, given an allocation, check local "
                "efficiency and minimum subsidy against independent oracles");
  verify_cmd->add_option("--instance", verify_args.instance_file, "instance JSON file")
      ->required();
  verify_cmd->add_option("--allocation", verify_args.allocation_file,
                         "allocation JSON file ({\"bundles\": [[items...]...]})");
  verify_cmd->add_option("--out", verify_args.out, "output file, - for stdout");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "measure worst prefix subsidy across (n, m, trial) cells; "
               "sorted CSV on stdout");
  add_source_options(sweep_cmd, sweep_args.source, /*allow_file=*/false);
  sweep_cmd->add_option("--policy", sweep_args.policy, "online policy name")->required();
  sweep_cmd->add_option("--n-list", sweep_args.n_list, "agent counts, e.g. 2,3,4")
      ->required();
  sweep_cmd->add_option("--m-list", sweep_args.m_list,
                        "item counts, e.g. 2,4,8 (ignored by generators that fix m)");
  sweep_cmd->add_option("--trials", sweep_args.trials, "trials per cell (default 1)");
  sweep_cmd->add_flag("--allow-unproven", sweep_args.allow_unproven,
                      "sweep a policy outside its proven valuation class");
  sweep_cmd->add_flag("--verify", sweep_args.verify,
                      "cross-check every prefix against the permutation oracle");
  sweep_cmd->add_option("--out", sweep_args.out, "output file, - for stdout");

  ValidateArgs validate_args;
  auto* validate_cmd =
      app.add_subcommand("validate", "check an instance file against its class axioms");
  validate_cmd->add_option("--instance", validate_args.instance_file, "instance JSON file")
      ->required();
  validate_cmd->add_option("--out", validate_args.out, "output file, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_args);
    if (adversary_cmd->parsed()) return cmd_adversary(adversary_args);
    if (verify_cmd->parsed()) return cmd_verify(verify_args);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_args);
    if (validate_cmd->parsed()) return cmd_validate(validate_args);
    std::cerr << "no subcommand selected\n";
    return kExitUsage;
  } catch (const CapabilityError& e) {
    std::cerr << "capability limit: " << e.what() << '\n';
    return kExitCapability;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolation;
  }
}
