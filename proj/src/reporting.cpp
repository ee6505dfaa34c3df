#include "fairdiv/reporting.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace fairdiv {

namespace {

std::string cell(const std::optional<Rational>& value) {
  return value.has_value() ? value->format() : std::string();
}

}  // namespace

std::string lossy_decimal(const Rational& value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value.to_double());
  return buffer;
}

std::string run_csv(const RunResult& result) {
  std::ostringstream out;
  out << "step,item,agent,locally_efficient,subsidy,subsidy_float_lossy,bound,slack\n";
  for (const StepRecord& step : result.steps) {
    std::optional<Rational> subsidy;
    if (step.subsidy.has_value()) {
      subsidy = step.subsidy->total;
    }
    out << step.step << ',' << step.item << ',' << step.recipient << ','
        << (step.locally_efficient ? "true" : "false") << ',' << cell(subsidy) << ','
        << (subsidy.has_value() ? lossy_decimal(*subsidy) : std::string()) << ','
        << cell(step.bound) << ',' << cell(step.slack) << '\n';
  }
  return out.str();
}

std::string run_jsonl(const Instance& instance, const std::string& policy_name,
                      const RunResult& result) {
  std::ostringstream out;

  nlohmann::json header;
  header["type"] = "header";
  header["policy"] = policy_name;
  header["instance"] = instance.to_json();
  out << header.dump() << '\n';

  for (const StepRecord& step : result.steps) {
    nlohmann::json j;
    j["type"] = "step";
    j["step"] = step.step;
    j["item"] = step.item;
    j["recipient"] = step.recipient;
    nlohmann::json values = nlohmann::json::array();
    for (const Rational& v : step.item_values) {
      values.push_back(v.format());
    }
    j["item_values"] = std::move(values);
    j["locally_efficient"] = step.locally_efficient;
    if (step.subsidy.has_value()) {
      j["subsidy"] = step.subsidy->to_json();
    }
    if (step.bound.has_value()) {
      j["bound"] = step.bound->format();
    }
    if (step.slack.has_value()) {
      j["slack"] = step.slack->format();
    }
    out << j.dump() << '\n';
  }

  nlohmann::json summary;
  summary["type"] = "summary";
  summary["always_locally_efficient"] = result.always_locally_efficient;
  summary["max_prefix_subsidy"] = result.max_prefix_subsidy.format();
  summary["max_prefix_step"] = result.max_prefix_step;
  if (result.final_subsidy.has_value()) {
    summary["final_subsidy_total"] = result.final_subsidy->total.format();
  }
  out << summary.dump() << '\n';
  return out.str();
}

std::string sweep_csv(std::vector<SweepRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.valuation_class, a.n, a.m, a.trial) <
           std::tie(b.valuation_class, b.n, b.m, b.trial);
  });
  std::ostringstream out;
  out << "class,n,m,trial,subsidy,subsidy_float_lossy,bound\n";
  for (const SweepRow& row : rows) {
    out << row.valuation_class << ',' << row.n << ',' << row.m << ',' << row.trial << ','
        << row.subsidy.format() << ',' << lossy_decimal(row.subsidy) << ','
        << cell(row.bound) << '\n';
  }
  return out.str();
}

}  // namespace fairdiv
