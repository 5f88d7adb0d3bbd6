// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bifront/reduction.hpp"

namespace bifront {

// Analytic bounds on the critical speed.  A field is absent when it does
// not apply to the reaction class / parameter values.
struct SpeedBounds {
  // Integrated comparison bounds; type A uses the sup formulas over (0,1],
  // types B/C the alpha-based pair.
  std::optional<double> lower_main;
  std::optional<double> upper_main;
  // (b/a) sup F(v)/v - independent of the shape of f.
  std::optional<double> lower_universal;
  // 2 sqrt(f'(0)/a), type A with f'(0) defined.
  std::optional<double> lower_kpp;
  // 2 sqrt(M/a) with the minimal M certifying f(s) <= M s / sqrt(1 + (M/a) b^2 s^2).
  std::optional<double> upper_saturating;
  // Peak-derived variant of the saturating bound (a = b = 1 only); present
  // only when the peak value of M certifies the control globally.
  std::optional<double> upper_peak;

  double max_lower() const;
  double min_upper() const;
};

// Diagnostic of the corner slope at v -> 0: the measured x = E(y(v))/v and
// its residual in x^2 - c a x + a f'(0) = 0 (the critical front leaves the
// corner along the larger root).  Reported, not enforced.
struct CornerSlopeDiag {
  double x_measured = 0.0;
  double quadratic_residual = 0.0;
};

struct SpeedResult {
  double c_star = 0.0;
  std::vector<std::pair<double, double>> bracket_history;
  double matching_residual = 0.0;  // |y+ - y-| at the matching point
  int iterations = 0;
  SpeedBounds bounds;
  std::optional<CornerSlopeDiag> corner_slope;
};

SpeedBounds compute_bounds(const ReactionCalculus& calc, const ModelParams& p);

// Critical speed by bracketed bisection on the two-point shooting
// predicate.  Balanced bistable reactions short-circuit to c* = 0.
// Monostable: sign of y+_max(1/2) - y-(1/2) with the maximal forward
// branch (negative roots test included); combustion/bistable: sign of
// y+(alpha) - y-(alpha), strictly increasing in c.
SpeedResult compute_speed(const ReactionCalculus& calc, const ModelParams& p,
                          const SolverControls& ctl = {});

// The asymptotic parameter regimes with a predicted limit object.
enum class Regime {
  FieldVanishing,        // b -> 0, a bounded: linear-diffusion limit
  FieldDominant,         // b/a -> infinity: constant limit profile
  DiffusionVanishing,    // a -> infinity, b^2/a -> 0: step limit
  SingularPerturbation,  // a = b -> infinity
};

struct SpeedPrediction {
  enum class Kind { Finite, Zero, Infinite } kind = Kind::Finite;
  double value = std::numeric_limits<double>::quiet_NaN();
  // Known convergence order in the coupling parameter, when stated.
  std::optional<double> order;
  std::string note;
};

// Predicted limit of the critical speed in the given regime.  Throws
// NoPrediction for the open case (non-balanced bistable singular
// perturbation).
SpeedPrediction limit_speed_prediction(const ReactionCalculus& calc,
                                       Regime regime);

}  // namespace bifront
