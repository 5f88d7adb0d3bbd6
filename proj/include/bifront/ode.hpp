// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "bifront/errors.hpp"

namespace bifront {

struct OdeOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double h_init = 0.0;   // 0: pick from the interval
  double h_min = 1e-13;
  long max_steps = 4000000;
};

struct OdeNode {
  double u = 0.0;   // independent variable
  double y = 0.0;
  double dy = 0.0;  // f(u, y)
};

// Scalar Dormand-Prince 5(4) with local error control err <= atol + rtol*|y|.
// Integrates y' = f(u,y) from u0 to u1 (either direction).  Every accepted
// node is passed to `sink`.  If `stop` is given and becomes true during a
// step, the crossing is located on the step's cubic Hermite interpolant and
// integration ends there.  Throws StiffnessFailure when the step underflows
// h_min; the message carries `where(u)` so callers can report the original
// variable.
OdeNode rk45_integrate(const std::function<double(double, double)>& f,
                       double u0, double u1, double y0, const OdeOptions& opt,
                       const std::function<void(const OdeNode&)>& sink = {},
                       const std::function<bool(double, double)>& stop = {},
                       const std::function<double(double)>& where = {});

// Adaptive Simpson quadrature of g on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& g, double a,
                        double b, double tol, int max_depth = 48);

}  // namespace bifront
