// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bifront/speed.hpp"

namespace bifront {

struct ZSample {
  double z = 0.0;
  double v = 0.0;
  double dv = 0.0;  // v'(z)
};

// A sampled front profile v(z), strictly increasing, normalized to
// v(0) = V0, truncated at distance (delta0, delta1) from the equilibria.
class FrontProfile {
 public:
  double c = 0.0;
  ModelParams params;
  double V0 = 0.5;
  std::vector<ZSample> samples;  // ascending z, uniform grid
  double delta0 = 1e-4;
  double delta1 = 1e-4;
  // Measured tail decay rates v'/v at the left cut and v'/(1-v) at the
  // right cut.
  std::optional<double> tail_exponent0, tail_exponent1;
  std::shared_ptr<const ReductionSolution> reduction;

  double z_min() const { return samples.front().z; }
  double z_max() const { return samples.back().z; }
  // v(z); outside the sampled window the profile is clamped to its
  // truncation values.  Inside, the value is refined by locally
  // re-integrating dv/dz = a*slope_rate(y(v)) from the nearest node.
  double eval(double z) const;
  double eval_slope(double z) const;
};

// Reconstruct v(z) from an admissible (two-point) reduction by quadrature
// of z(v) = int dv / (a*slope_rate(y(v))) and inversion onto a uniform
// z grid.  Throws NotAdmissible if the reduction recorded an interior zero.
FrontProfile reconstruct_profile(std::shared_ptr<const ReductionSolution> red,
                                 double V0, const SolverControls& ctl = {});

// Two-point reduction of the front at speed c: maximal forward branch
// (monostable) or forward branch (combustion/bistable) stitched to the
// backward branch at the matching point.
std::shared_ptr<ReductionSolution> critical_reduction(
    const ReactionCalculus& calc, const ModelParams& p, double c,
    const SolverControls& ctl = {});

// Critical speed and critical profile of the linear-diffusion problem
// (reduction y' = 2 c sqrt(y) - 2 f, same shooting machinery at b = 0).
std::pair<double, FrontProfile> linear_critical(const ReactionCalculus& calc,
                                                const SolverControls& ctl = {});

enum class LimitKind {
  Constant,        // constant V0 (field-dominant limit)
  Heaviside,       // step at z = 0 (vanishing diffusion limit)
  PiecewiseLinear, // 0 / slope / 1 ramp through an anchor
  Inviscid,        // solution of c_bar v' = f(v)
  GluedLI,         // piecewise-linear left piece glued C1 to an inviscid tail
  LinearCritical,  // critical front of the linear-diffusion problem
  SteadyBalanced,  // balanced limit: unit-slope ramp through (0, alpha)
};

std::string limit_kind_name(LimitKind k);

// Closed-form (or semi-closed-form) limit profile with an evaluator.
class LimitProfile {
 public:
  LimitKind kind = LimitKind::Constant;
  double V0 = 0.5;
  // Piecewise-linear family: v = anchor_v + slope*(z - anchor_z), clamped.
  double anchor_z = 0.0, anchor_v = 0.5, slope = 1.0;
  // Glued / inviscid family.
  double c_bar = 0.0, v_plus = 0.0, glue_z = 0.0;
  std::vector<std::pair<double, double>> inviscid;  // (z, v), ascending z
  std::shared_ptr<const FrontProfile> reference;    // LinearCritical
  const ReactionCalculus* calc = nullptr;           // evaluator support

  double eval(double z) const;
  std::string describe() const;
};

// Build the limit object for a Table-style corner regime.  The glued
// profile requires a monostable reaction with a unique interior maximum
// (or a combustion reaction whose positive part has one); the open
// bistable case throws NoPrediction.
LimitProfile make_limit_profile(const ReactionCalculus& calc, Regime regime,
                                double V0, const SolverControls& ctl = {});

enum class Trend { ToZero, Bounded, ToInfinity };

struct RegimeCell {
  std::string speed_trend;              // "infinite", "zero", "finite-positive", "linear-critical"
  std::vector<LimitKind> profile_kinds; // candidate limit profiles
  bool open = false;                    // no proven limit profile
  std::optional<Regime> regime;         // mapped solver regime, when one exists
  std::string note;
};

// Pure lookup of the parameter-plane taxonomy: trends of a and b, plus the
// trends of b/a and b^2/a needed to split the a,b -> infinity corner.
// Inconsistent trend combinations throw DomainError.
RegimeCell classify_regime(Trend trend_a, Trend trend_b,
                           std::optional<Trend> ratio_ba = {},
                           std::optional<Trend> ratio_b2a = {});

}  // namespace bifront
