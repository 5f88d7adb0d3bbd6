// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bifront/profile.hpp"

namespace bifront {

enum class SweepAxis { A, B, EpsilonCoupling, GammaCoupling, CustomPairs };

struct SweepOutputs {
  bool speeds = true;
  bool bounds = true;
  bool profiles = false;
  bool distances = false;  // sup distance to the regime limit profile
};

struct SweepPlan {
  ReactionSpec reaction;
  SweepAxis axis = SweepAxis::B;
  std::vector<double> values;                   // strictly increasing
  std::vector<std::pair<double, double>> pairs; // CustomPairs only
  ModelParams base{1.0, 1.0};                   // fixed parameter for A/B axes
  SweepOutputs outputs;
  std::optional<double> expected_order;
  std::pair<double, double> window{-1.0, 4.0};  // distance window
};

struct SweepRow {
  double value = 0.0;
  ModelParams params;
  std::optional<SpeedResult> speed;
  std::optional<SpeedBounds> bounds;
  std::optional<double> distance;
  std::string error;  // per-row failure, empty on success
};

struct OrderFit {
  double slope = 0.0;
  double stderr_slope = 0.0;
  double residual = 0.0;  // rms of log-log fit residuals
  std::optional<double> expected_deviation;
  int points = 0;
};

struct SweepReport {
  SweepPlan plan;
  std::vector<SweepRow> rows;
  std::optional<OrderFit> fitted_order;
};

// One solve per plan value; per-row failures are recorded, not fatal; rows
// keep plan order.  jobs > 1 runs rows concurrently (solves are pure).
SweepReport run_sweep(const SweepPlan& plan, const SolverControls& ctl = {},
                      int jobs = 1);

// Least-squares slope of log c* against log value.  Requires >= 3
// successful rows spanning at least two decades.
OrderFit fit_order(const SweepReport& report,
                   std::optional<double> expected = {});

// sup |profile(z) - limit(z)| over the window.  DomainMismatch when the
// window exceeds the profile's sampled span by more than its tails allow.
double distance_to_limit(const FrontProfile& profile, const LimitProfile& limit,
                         std::pair<double, double> window);

}  // namespace bifront
