#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/engine.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

// Lossy decimal rendering of a rational for the convenience columns. Exact
// values always travel as "p/q" strings in the column next to it; this one is
// for spreadsheets and plotting only.
std::string lossy_decimal(const Rational& value);

// Per-step table of one online run. Columns: step, item, agent,
// locally_efficient, subsidy, subsidy_float_lossy, bound, slack. Rationals
// render as "p/q"; a cell is empty when the quantity does not exist at that
// step (no subsidy without local efficiency, no bound without a proven
// guarantee for the class being played).
std::string run_csv(const RunResult& result);

// Line-delimited JSON transcript: a header object carrying the instance and
// policy name, one object per step, and one trailing summary object. Keys are
// emitted in sorted order, so identical runs serialize to identical bytes.
std::string run_jsonl(const Instance& instance, const std::string& policy_name,
                      const RunResult& result);

// One sweep measurement: the worst subsidy the policy needed on any prefix of
// the run, next to the policy's proven guarantee when it has one.
struct SweepRow {
  std::string valuation_class;
  int n = 0;
  int m = 0;
  std::uint64_t trial = 0;
  Rational subsidy;
  std::optional<Rational> bound;
};

// CSV table of sweep measurements. Rows are sorted by (class, n, m, trial)
// before emission, so the execution order of trials cannot perturb the bytes.
std::string sweep_csv(std::vector<SweepRow> rows);

}  // namespace fairdiv
