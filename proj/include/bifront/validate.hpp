// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "bifront/reduction.hpp"

namespace bifront {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string message;
};

// Cross-module invariant suite: bound sandwich on 5 reactions x 9 (a,b)
// pairs, parameter monotonicity of c*, profile gradient bound and
// second-order residual, combustion closed form vs numerical forward
// integration, E-transform round trip, balanced steady profile against its
// explicit quadrature.
std::vector<CheckResult> run_validation(const SolverControls& ctl = {});

}  // namespace bifront
