// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "bifront/params.hpp"
#include "bifront/reaction.hpp"

namespace bifront {

// Numerical knobs shared by the integrators and the shooting layer.
struct SolverControls {
  double rtol = 1e-9;          // stepper relative tolerance
  double atol = 1e-12;         // stepper absolute tolerance
  double min_step = 1e-13;     // below this: StiffnessFailure
  double floor_scale = 1e-11;  // y positivity floor = floor_scale*max(1, a/b^2)
  double v_floor = 1e-4;       // corner cut for seeds / diagnostics
  double ctol = 1e-6;          // bisection bracket width
  double rtol_match = 1e-7;    // two-point matching residual target
  int max_expansions = 60;     // geometric bracket expansions before failure
  int grid_size = 10000;       // scan grid for roots and certifications
  int profile_points = 512;    // uniform z samples of a reconstructed profile
  double delta0 = 1e-4;        // profile truncation distance from v = 0
  double delta1 = 1e-4;        // profile truncation distance from v = 1
  double corner_width = 0.02;  // switch to log variables inside this margin
  double seed_delta = 1e-6;    // offset of the backward seed from v = 1
};

// Slope response of the first-order reduction, v' = a * slope_rate(y).
// Increasing in y, bounded by 1/b, with a square-root singularity at 0.
// b == 0 degenerates to the linear-diffusion rate sqrt(2 y / a).
double slope_rate(const ModelParams& p, double y);

// E(y) = integral_0^y ds / slope_rate(s) = sqrt(y (2a + b^2 y)); linearizes
// the singularity at y = 0.  e_inverse is its exact inverse.
double e_transform(const ModelParams& p, double y);
double e_inverse(const ModelParams& p, double E);

// Maximal solution of the reduction with the reaction switched off:
// y_m(v) = (a/b^2)(sqrt(1 + c^2 b^2 v^2) - 1), evaluated in a form stable
// for small b.  Coincides with the forward solution wherever f == 0.
double max_solution_closed_form(const ModelParams& p, double c, double v);

enum class Branch { ForwardFromZero, BackwardFromOne, TwoPoint };

struct ReductionSample {
  double v = 0.0;
  double E = 0.0;     // e_transform of y
  double dEdv = 0.0;
};

// A sampled solution y(v) of y' = c a slope_rate(y) - f(v), stored in the
// E variable with exact node derivatives for cubic Hermite evaluation.
class ReductionSolution {
 public:
  double c = 0.0;
  ModelParams params;
  Branch branch = Branch::BackwardFromOne;
  std::vector<ReductionSample> samples;  // ascending in v
  std::optional<double> hit_zero_at;     // interior v where y reached the floor

  double eval_E(double v) const;
  double eval_y(double v) const;
  double eval_dydv(double v) const;
  double v_min() const { return samples.front().v; }
  double v_max() const { return samples.back().v; }
  double y_floor() const;
};

// Backward Cauchy problem from (v, y) = (1, 0) down to v_stop.  The start is
// seeded with the local corner expansion at v = 1; near both corners the
// integration runs in a logarithmic variable.  Records hit_zero_at (and
// stops) if y reaches the positivity floor at an interior v inside the
// region where f <= 0 (the only region where backward solutions can vanish).
ReductionSolution integrate_backward(const ReactionCalculus& calc,
                                     const ModelParams& p, double c,
                                     const SolverControls& ctl,
                                     double v_stop = 0.0);

// Forward Cauchy problem from (0, 0) up to v_stop, for combustion and
// bistable reactions (the classes with forward uniqueness).  Combustion
// reactions use the exact closed form E = c a v on [0, alpha].
ReductionSolution integrate_forward(const ReactionCalculus& calc,
                                    const ModelParams& p, double c,
                                    const SolverControls& ctl, double v_stop);

// Maximal forward solution for a monostable reaction: leaves the corner
// along the largest root of x^2 - c a x + a f'(0) = 0.  Empty when the
// roots are complex (speeds below 2 sqrt(f'(0)/a) admit no monotone exit).
std::optional<ReductionSolution> max_forward_solution(
    const ReactionCalculus& calc, const ModelParams& p, double c,
    const SolverControls& ctl, double v_stop);

// Stitch a forward and a backward branch of the same problem into one
// two-point solution (the admissible reduction of a front).
ReductionSolution merge_two_point(const ReductionSolution& forward,
                                  const ReductionSolution& backward);

}  // namespace bifront
