#pragma once
// The acceptance gate: ten numbered checks, each recomputing published
// dimension tables, resolutions, or identities on the built-in systems from
// scratch and comparing exactly (no tolerances). Each result carries a
// computed-vs-expected trail so a failure names the number that moved, plus
// the measured runtime against the check's budget.

#include <string>
#include <vector>

#include "jetseq/exactalg.hpp"

namespace jetseq {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // computed values, expectations on mismatch, timing
  double seconds = 0.0;
};

struct CheckOptions {
  RankPolicy policy;
  // The long high-dimension resolution leg (minutes, budgeted separately).
  // Skipping it is reported in the result, never silent.
  bool include_stretch = true;
};

// ids run 1..10; throws std::invalid_argument for anything else.
CheckResult run_check(int id, const CheckOptions& opts = {});
std::vector<CheckResult> run_all_checks(const CheckOptions& opts = {});

}  // namespace jetseq
