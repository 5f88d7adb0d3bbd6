// SPDX-License-Identifier: Apache-2.0
#include "bifront/golden.hpp"

#include <cmath>

namespace bifront {

namespace {

std::vector<GoldenCell> build_table() {
  std::vector<GoldenCell> t;
  auto add = [&](const char* family, const char* reaction, double param,
                 double a, double b, double ref) {
    t.push_back({family, reaction, param, a, b, ref});
  };
  const double nan = std::numeric_limits<double>::quiet_NaN();

  // bistable s(1-s)(s-0.4), a = 1, growing field strength
  for (auto [b, ref] : {std::pair{1.0, 0.142}, {5.0, 0.167}, {10.0, 0.227},
                        {50.0, 0.874}, {100.0, 1.710}})
    add("b-sweep", "cubic-bistable", 0.4, 1.0, b, ref);

  // fisher, a = 1/gamma, b = 1 (vanishing / large diffusion)
  for (auto [g, ref] : {std::pair{1e-4, 0.020}, {1e-2, 0.201}, {1.0, 1.893},
                        {10.0, 5.919}, {100.0, 22.901}})
    add("gamma", "fisher", nan, 1.0 / g, 1.0, ref);

  // singular perturbation a = b = 1/eps, eps^2 in {1e-1 ... 1e-6}
  const double eps2[5] = {1e-1, 1e-2, 1e-3, 1e-4, 1e-6};
  const double fisher_ref[5] = {1.011, 0.569, 0.332, 0.229, 0.193};
  const double nagy_ref[5] = {1.318, 0.875, 0.707, 0.652, 0.626};
  const double comb_ref[5] = {0.284, 0.167, 0.106, 0.078, 0.063};
  const double cubic_ref[5] = {0.040, 0.024, 0.015, 0.011, 0.009};
  for (int i = 0; i < 5; ++i) {
    double inv_eps = 1.0 / std::sqrt(eps2[i]);
    add("eps-fisher", "fisher", nan, inv_eps, inv_eps, fisher_ref[i]);
    add("eps-nagylaki", "nagylaki", 5.0, inv_eps, inv_eps, nagy_ref[i]);
    add("eps-combustion", "combustion", 0.3, inv_eps, inv_eps, comb_ref[i]);
    add("eps-bistable", "cubic-bistable", 0.45, inv_eps, inv_eps, cubic_ref[i]);
  }
  return t;
}

}  // namespace

const std::vector<GoldenCell>& golden_table() {
  static const std::vector<GoldenCell> table = build_table();
  return table;
}

std::vector<GoldenOutcome> run_golden(const SolverControls& ctl) {
  std::vector<GoldenOutcome> out;
  for (const auto& cell : golden_table()) {
    GoldenOutcome o;
    o.cell = cell;
    o.tolerance = std::max(0.01, 0.02 * cell.reference);
    try {
      std::optional<double> param;
      if (std::isfinite(cell.reaction_param)) param = cell.reaction_param;
      ReactionCalculus calc =
          classify(ReactionSpec::catalog(cell.reaction, param), ctl.grid_size);
      SpeedResult res =
          compute_speed(calc, ModelParams(cell.a, cell.b), ctl);
      o.computed = res.c_star;
      o.deviation = std::abs(res.c_star - cell.reference);
      o.pass = o.deviation <= o.tolerance;
    } catch (const std::exception& e) {
      o.error = e.what();
      o.pass = false;
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace bifront
