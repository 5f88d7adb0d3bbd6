// SPDX-License-Identifier: Apache-2.0
#include "bifront/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "bifront/ode.hpp"
#include "bifront/profile.hpp"
#include "bifront/speed.hpp"

namespace bifront {

namespace {

std::string msg(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

// Second-order residual (phi(v'))' - c v' + f(v) from profile values only
// (five-point finite differences), evaluated where v is safely interior.
double fd_residual_max(const FrontProfile& prof, const ReactionCalculus& calc,
                       int n_samples, double h) {
  const ModelParams& p = prof.params;
  auto phi = [&](double s) {
    return s / std::sqrt(p.a * p.a - p.b * p.b * s * s);
  };
  double worst = 0.0;
  double z_lo = prof.z_min(), z_hi = prof.z_max();
  for (int i = 0; i < n_samples; ++i) {
    double z = z_lo + (z_hi - z_lo) * (i + 0.5) / n_samples;
    if (z - 2 * h < z_lo || z + 2 * h > z_hi) continue;
    double v0 = prof.eval(z);
    if (v0 < 0.02 || v0 > 0.98) continue;
    double vm2 = prof.eval(z - 2 * h), vm1 = prof.eval(z - h);
    double vp1 = prof.eval(z + h), vp2 = prof.eval(z + 2 * h);
    double slope_p = (vp2 - v0) / (2 * h);   // v' at z + h
    double slope_m = (v0 - vm2) / (2 * h);   // v' at z - h
    double dphi = (phi(slope_p) - phi(slope_m)) / (2 * h);
    double slope_0 = (vp1 - vm1) / (2 * h);
    double r = dphi - prof.c * slope_0 + calc.eval_f(v0);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

struct GridSolve {
  ModelParams p{1.0, 1.0};
  SpeedResult res;
};

}  // namespace

std::vector<CheckResult> run_validation(const SolverControls& ctl) {
  std::vector<CheckResult> out;
  auto push = [&](const std::string& name, bool pass, const std::string& m) {
    out.push_back({name, pass, m});
  };

  struct Entry {
    const char* label;
    ReactionSpec spec;
  };
  const std::vector<Entry> reactions = {
      {"fisher", ReactionSpec::fisher()},
      {"huxley", ReactionSpec::huxley()},
      {"nagylaki", ReactionSpec::nagylaki(5.0)},
      {"cubic-bistable-0.4", ReactionSpec::cubic_bistable(0.4)},
      {"combustion-0.3", ReactionSpec::combustion(0.3)},
  };
  const double grid_vals[3] = {0.5, 1.0, 2.0};

  // --- bound sandwich and parameter monotonicity on 5 x 9 solves ---------
  {
    bool sandwich_ok = true, mono_ok = true;
    std::string sandwich_msg = "all speeds inside their bound brackets";
    std::string mono_msg = "c* decreasing in a, increasing in b on all grids";
    const double slack = 10.0 * ctl.ctol;
    for (const auto& entry : reactions) {
      ReactionCalculus calc = classify(entry.spec, ctl.grid_size);
      GridSolve g[3][3];
      for (int ia = 0; ia < 3; ++ia)
        for (int ib = 0; ib < 3; ++ib) {
          g[ia][ib].p = ModelParams(grid_vals[ia], grid_vals[ib]);
          g[ia][ib].res = compute_speed(calc, g[ia][ib].p, ctl);
          const auto& r = g[ia][ib].res;
          double lo = r.bounds.max_lower(), hi = r.bounds.min_upper();
          if (lo > hi + slack || r.c_star < lo - slack ||
              r.c_star > hi + slack) {
            sandwich_ok = false;
            char buf[256];
            std::snprintf(buf, sizeof buf,
                          "%s a=%g b=%g: c*=%.8g outside [%.8g, %.8g]",
                          entry.label, g[ia][ib].p.a, g[ia][ib].p.b, r.c_star,
                          lo, hi);
            sandwich_msg = buf;
          }
        }
      for (int ia = 0; ia + 1 < 3; ++ia)
        for (int ib = 0; ib < 3; ++ib)
          if (g[ia + 1][ib].res.c_star > g[ia][ib].res.c_star + ctl.ctol) {
            mono_ok = false;
            mono_msg = msg("c* increased in a (%.8g -> %.8g)",
                           g[ia][ib].res.c_star, g[ia + 1][ib].res.c_star);
          }
      for (int ia = 0; ia < 3; ++ia)
        for (int ib = 0; ib + 1 < 3; ++ib)
          if (g[ia][ib + 1].res.c_star < g[ia][ib].res.c_star - ctl.ctol) {
            mono_ok = false;
            mono_msg = msg("c* decreased in b (%.8g -> %.8g)",
                           g[ia][ib].res.c_star, g[ia][ib + 1].res.c_star);
          }
    }
    push("bound-sandwich", sandwich_ok, sandwich_msg);
    push("speed-monotonicity", mono_ok, mono_msg);
  }

  // --- gradient bound and second-order residual on critical profiles -----
  {
    struct ProfCase {
      const char* label;
      ReactionSpec spec;
      ModelParams p;
    };
    const std::vector<ProfCase> cases = {
        {"fisher a=1 b=1", ReactionSpec::fisher(), ModelParams(1.0, 1.0)},
        {"nagylaki a=1 b=1", ReactionSpec::nagylaki(5.0), ModelParams(1.0, 1.0)},
        {"cubic-0.4 a=1 b=10", ReactionSpec::cubic_bistable(0.4),
         ModelParams(1.0, 10.0)},
        {"combustion a=b=10", ReactionSpec::combustion(0.3),
         ModelParams(10.0, 10.0)},
    };
    bool grad_ok = true, res_ok = true;
    std::string grad_msg = "max v' strictly below a/b on every profile";
    std::string res_msg = "finite-difference residual below 1e-4";
    for (const auto& pc : cases) {
      ReactionCalculus calc = classify(pc.spec, ctl.grid_size);
      SpeedResult sp = compute_speed(calc, pc.p, ctl);
      auto red = critical_reduction(calc, pc.p, sp.c_star, ctl);
      FrontProfile prof =
          reconstruct_profile(red, calc.default_normalization(), ctl);
      double max_dv = 0.0;
      for (const auto& s : prof.samples) max_dv = std::max(max_dv, s.dv);
      if (!(max_dv < pc.p.max_slope())) {
        grad_ok = false;
        grad_msg = msg("gradient bound violated: max v' = %.8g vs %.8g",
                       max_dv, pc.p.max_slope());
      }
      double r = fd_residual_max(prof, calc, 200, 1e-2);
      if (!(r < 1e-4)) {
        res_ok = false;
        char buf[192];
        std::snprintf(buf, sizeof buf, "%s: residual %.3g >= 1e-4", pc.label, r);
        res_msg = buf;
      }
    }
    push("profile-gradient-bound", grad_ok, grad_msg);
    push("profile-ode-residual", res_ok, res_msg);
  }

  // --- combustion closed form vs numerical forward integration -----------
  {
    ReactionCalculus calc = classify(ReactionSpec::combustion(0.3), ctl.grid_size);
    ModelParams p(2.0, 3.0);
    double c = 0.4;
    // integrate E' = c a - f sqrt(a^2+b^2E^2)/E from a seed on the exact
    // solution and compare against the closed form at alpha
    double v0 = 1e-6;
    double E0 = c * p.a * v0;
    auto rhs = [&](double v, double E) {
      return c * p.a -
             calc.eval_f(v) * std::hypot(p.a, p.b * E) / std::max(E, 1e-300);
    };
    OdeOptions opt;
    opt.rtol = 1e-12;
    opt.atol = 1e-15;
    OdeNode end = rk45_integrate(rhs, v0, calc.alpha, E0, opt);
    double y_num = e_inverse(p, end.y);
    double y_exact = max_solution_closed_form(p, c, calc.alpha);
    double err = std::abs(y_num - y_exact);
    push("combustion-closed-form", err < 1e-8,
         msg("|numeric - closed form| at alpha = %.3g", err));
  }

  // --- E-transform round trip --------------------------------------------
  {
    double worst = 0.0;
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> uy(-12.0, 3.0);
    for (ModelParams p : {ModelParams(1.0, 1.0), ModelParams(100.0, 100.0),
                          ModelParams(0.01, 1.0), ModelParams(1.0, 0.001)}) {
      for (int i = 0; i < 100; ++i) {
        double y = std::pow(10.0, uy(rng));
        double back = e_inverse(p, e_transform(p, y));
        worst = std::max(worst, std::abs(back - y) / y);
      }
    }
    push("e-transform-round-trip", worst < 1e-12,
         msg("max relative round-trip error %.3g", worst));
  }

  // --- balanced reaction: c* = 0 and steady profile quadrature -----------
  {
    ReactionCalculus calc =
        classify(ReactionSpec::cubic_bistable(0.5), ctl.grid_size);
    ModelParams p(100.0, 100.0);  // eps^2 = 1e-4
    SpeedResult res = compute_speed(calc, p, ctl);
    bool zero_ok = res.c_star == 0.0;

    auto red = critical_reduction(calc, p, 0.0, ctl);
    FrontProfile numeric =
        reconstruct_profile(red, calc.default_normalization(), ctl);

    // direct route: y = -F(v) in closed form, sampled densely
    auto direct = std::make_shared<ReductionSolution>();
    direct->c = 0.0;
    direct->params = p;
    direct->branch = Branch::TwoPoint;
    std::vector<double> vs;
    for (int j = 0; j <= 100; ++j)
      vs.push_back(1e-4 * std::pow(0.02 / 1e-4, j / 100.0));
    for (int j = 1; j <= 480; ++j) vs.push_back(0.02 + (0.96 * j) / 480.0);
    for (int j = 1; j <= 100; ++j)
      vs.push_back(1.0 - 0.02 * std::pow(1e-4 / 0.02, j / 100.0));
    std::sort(vs.begin(), vs.end());
    for (double v : vs) {
      double y = std::max(0.0, -calc.eval_F(v));
      double E = e_transform(p, y);
      double dEdv = E > 0.0
                        ? -calc.eval_f(v) * std::hypot(p.a, p.b * E) / E
                        : 0.0;
      direct->samples.push_back({v, E, dEdv});
    }
    FrontProfile explicit_prof =
        reconstruct_profile(direct, calc.default_normalization(), ctl);

    double z_lo = std::max(numeric.z_min(), explicit_prof.z_min());
    double z_hi = std::min(numeric.z_max(), explicit_prof.z_max());
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
      double z = z_lo + (z_hi - z_lo) * i / 400.0;
      worst = std::max(worst,
                       std::abs(numeric.eval(z) - explicit_prof.eval(z)));
    }
    push("balanced-zero-speed", zero_ok,
         msg("balanced cubic c* = %.3g", res.c_star));
    push("balanced-steady-profile", worst < 1e-4,
         msg("sup distance to explicit quadrature %.3g", worst));
  }

  return out;
}

}  // namespace bifront
