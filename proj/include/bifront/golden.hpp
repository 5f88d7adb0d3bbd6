// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "bifront/speed.hpp"

namespace bifront {

// One cell of the bundled reference table of critical-speed
// approximations (five parameter families, five values each).
struct GoldenCell {
  std::string family;    // "b-sweep", "gamma", "eps-fisher", ...
  std::string reaction;  // catalog name
  double reaction_param; // shape parameter (alpha / sigma / m), NaN if none
  double a = 1.0;
  double b = 1.0;
  double reference = 0.0;  // three-digit reference value
};

struct GoldenOutcome {
  GoldenCell cell;
  double computed = 0.0;
  double deviation = 0.0;
  double tolerance = 0.0;  // max(0.01, 2% of reference)
  bool pass = false;
  std::string error;
};

const std::vector<GoldenCell>& golden_table();
std::vector<GoldenOutcome> run_golden(const SolverControls& ctl = {});

}  // namespace bifront
