// SPDX-License-Identifier: Apache-2.0
#include "bifront/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace bifront {

namespace {

ModelParams params_for(const SweepPlan& plan, size_t i) {
  switch (plan.axis) {
    case SweepAxis::A:
      return ModelParams(plan.values[i], plan.base.b);
    case SweepAxis::B:
      return ModelParams(plan.base.a, plan.values[i]);
    case SweepAxis::EpsilonCoupling:
      return ModelParams::epsilon_coupling(plan.values[i]);
    case SweepAxis::GammaCoupling:
      return ModelParams::gamma_coupling(plan.values[i]);
    case SweepAxis::CustomPairs:
      return ModelParams(plan.pairs[i].first, plan.pairs[i].second);
  }
  throw DomainError("unknown sweep axis");
}

void run_row(const SweepPlan& plan, const ReactionCalculus& calc,
             const SolverControls& ctl, const LimitProfile* limit,
             SweepRow& row) {
  try {
    row.bounds = compute_bounds(calc, row.params);
    if (!plan.outputs.speeds && !plan.outputs.profiles && !plan.outputs.distances)
      return;
    SpeedResult res = compute_speed(calc, row.params, ctl);
    row.speed = res;
    if (plan.outputs.profiles || plan.outputs.distances) {
      auto red = critical_reduction(calc, row.params, res.c_star, ctl);
      FrontProfile prof =
          reconstruct_profile(red, calc.default_normalization(), ctl);
      if (plan.outputs.distances && limit)
        row.distance = distance_to_limit(prof, *limit, plan.window);
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
}

}  // namespace

SweepReport run_sweep(const SweepPlan& plan, const SolverControls& ctl,
                      int jobs) {
  size_t n = plan.axis == SweepAxis::CustomPairs ? plan.pairs.size()
                                                 : plan.values.size();
  if (n == 0) throw DomainError("sweep has no values");
  if (plan.axis != SweepAxis::CustomPairs)
    for (size_t i = 1; i < plan.values.size(); ++i)
      if (!(plan.values[i] > plan.values[i - 1]))
        throw DomainError("sweep values must be strictly increasing");

  ReactionCalculus calc = classify(plan.reaction, ctl.grid_size);

  SweepReport report;
  report.plan = plan;
  report.rows.resize(n);
  for (size_t i = 0; i < n; ++i) {
    report.rows[i].value =
        plan.axis == SweepAxis::CustomPairs ? double(i) : plan.values[i];
    report.rows[i].params = params_for(plan, i);
  }

  // the regime limit profile is shared by all rows of a coupling sweep
  std::optional<LimitProfile> limit;
  if (plan.outputs.distances) {
    try {
      Regime regime = plan.axis == SweepAxis::GammaCoupling
                          ? Regime::DiffusionVanishing
                          : Regime::SingularPerturbation;
      if (plan.axis == SweepAxis::EpsilonCoupling ||
          plan.axis == SweepAxis::GammaCoupling)
        limit = make_limit_profile(calc, regime,
                                   calc.default_normalization(), ctl);
    } catch (const NoPrediction&) {
      // open case: distances are skipped, rows still run
    }
  }

  jobs = std::clamp(jobs, 1, int(n));
  if (jobs == 1) {
    for (auto& row : report.rows)
      run_row(plan, calc, ctl, limit ? &*limit : nullptr, row);
  } else {
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
          run_row(plan, calc, ctl, limit ? &*limit : nullptr, report.rows[i]);
      });
    for (auto& th : pool) th.join();
  }

  if (plan.outputs.speeds) {
    try {
      report.fitted_order = fit_order(report, plan.expected_order);
    } catch (const InsufficientData&) {
    }
  }
  return report;
}

OrderFit fit_order(const SweepReport& report, std::optional<double> expected) {
  std::vector<double> x, y;
  for (const auto& row : report.rows) {
    if (!row.error.empty() || !row.speed) continue;
    if (!(row.speed->c_star > 0.0) || !(row.value > 0.0)) continue;
    x.push_back(std::log(row.value));
    y.push_back(std::log(row.speed->c_star));
  }
  if (x.size() < 3)
    throw InsufficientData("order fit needs at least 3 successful rows");
  double span = *std::max_element(x.begin(), x.end()) -
                *std::min_element(x.begin(), x.end());
  if (span < std::log(100.0) * (1.0 - 1e-9))
    throw InsufficientData("order fit needs values spanning two decades");

  size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double det = n * sxx - sx * sx;
  double slope = (n * sxy - sx * sy) / det;
  double intercept = (sy - slope * sx) / n;
  double sse = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double r = y[i] - slope * x[i] - intercept;
    sse += r * r;
  }
  OrderFit fit;
  fit.points = int(n);
  fit.slope = slope;
  fit.residual = std::sqrt(sse / n);
  double sxx_c = sxx - sx * sx / n;
  fit.stderr_slope =
      n > 2 ? std::sqrt(sse / double(n - 2) / std::max(sxx_c, 1e-300)) : 0.0;
  if (expected) fit.expected_deviation = std::abs(slope - *expected);
  return fit;
}

double distance_to_limit(const FrontProfile& profile, const LimitProfile& limit,
                         std::pair<double, double> window) {
  if (!(window.first < window.second))
    throw DomainMismatch("empty distance window");
  // the profile covers the window through its clamped tails; require at
  // least an overlap of the sampled span with the window
  if (profile.z_max() < window.first || profile.z_min() > window.second)
    throw DomainMismatch("profile samples do not reach the window");
  const int K = 2048;
  double worst = 0.0;
  for (int k = 0; k <= K; ++k) {
    double z = window.first + (window.second - window.first) * double(k) / K;
    worst = std::max(worst, std::abs(profile.eval(z) - limit.eval(z)));
  }
  return worst;
}

}  // namespace bifront
