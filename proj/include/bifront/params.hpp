// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>

#include "bifront/errors.hpp"

namespace bifront {

// The two diffusion parameters of the operator (v'/sqrt(a^2 - b^2 v'^2))'.
// b/a is the field-strength ratio, 1/a the diffusion scale.  b == 0 is
// reserved for the linear-diffusion reference problem used by
// linear_critical(); the model itself requires b > 0.
struct ModelParams {
  double a = 1.0;
  double b = 1.0;

  ModelParams() = default;
  ModelParams(double a_, double b_) : a(a_), b(b_) {
    if (!(a > 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b))
      throw DomainError("ModelParams requires a > 0 and b >= 0");
  }

  // Hard bound on the profile slope, v' < a/b.
  double max_slope() const {
    return b > 0.0 ? a / b : std::numeric_limits<double>::infinity();
  }
  double ratio() const { return b / a; }

  // a = b = 1/eps (the singular perturbation family).
  static ModelParams epsilon_coupling(double eps) {
    if (!(eps > 0.0)) throw DomainError("epsilon coupling requires eps > 0");
    return ModelParams(1.0 / eps, 1.0 / eps);
  }
  // a = 1/gamma, b = 1 (vanishing / large diffusion family).
  static ModelParams gamma_coupling(double gamma) {
    if (!(gamma > 0.0)) throw DomainError("gamma coupling requires gamma > 0");
    return ModelParams(1.0 / gamma, 1.0);
  }
  // Linear diffusion reference (u_t = u_xx + f).
  static ModelParams linear_reference() { return ModelParams(1.0, 0.0); }
};

}  // namespace bifront
