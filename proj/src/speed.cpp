// SPDX-License-Identifier: Apache-2.0
#include "bifront/speed.hpp"

#include <algorithm>
#include <cmath>

namespace bifront {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Check f(s) <= M s / sqrt(1 + (M/a) b^2 s^2) on a grid.
bool certifies(const ReactionCalculus& calc, const ModelParams& p, double M,
               int grid) {
  for (int i = 1; i <= grid; ++i) {
    double s = double(i) / grid;
    double ctrl = M * s / std::sqrt(1.0 + (M / p.a) * p.b * p.b * s * s);
    if (calc.eval_f(s) > ctrl + 1e-14 * std::max(1.0, M)) return false;
  }
  return true;
}

// Minimal M certifying the saturating growth control, bisected to 1e-8
// relative; the control is increasing in M so the certificate is monotone.
std::optional<double> minimal_saturating_m(const ReactionCalculus& calc,
                                           const ModelParams& p, int grid) {
  double hi = std::max({calc.fprime0, calc.f_max / calc.v_max, 1.0});
  int guard = 0;
  while (!certifies(calc, p, hi, grid)) {
    hi *= 2.0;
    if (++guard > 200) return std::nullopt;
  }
  // the control has slope M at s = 0, so M >= f'(0) is necessary
  double lo = std::max(0.0, calc.fprime0);
  if (hi < lo) hi = lo;
  while (hi - lo > 1e-8 * std::max(hi, 1e-30)) {
    double mid = 0.5 * (lo + hi);
    (certifies(calc, p, mid, grid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

double SpeedBounds::max_lower() const {
  double m = 0.0;
  for (const auto& x : {lower_main, lower_universal, lower_kpp})
    if (x) m = std::max(m, *x);
  return m;
}

double SpeedBounds::min_upper() const {
  double m = kInf;
  for (const auto& x : {upper_main, upper_saturating, upper_peak})
    if (x) m = std::min(m, *x);
  return m;
}

SpeedBounds compute_bounds(const ReactionCalculus& calc, const ModelParams& p) {
  SpeedBounds b;
  SupResult supFv = sup_ratio(calc, RatioKind::FOverV);
  b.lower_universal = p.ratio() * supFv.value;

  if (calc.type == ReactionType::Monostable) {
    b.lower_main = std::sqrt(std::max(0.0, sup_lower_main_arg(calc, p).value));
    b.upper_main = sup_upper_main_arg(calc, p).value;
    b.lower_kpp = 2.0 * std::sqrt(std::max(0.0, calc.fprime0) / p.a);
    if (auto M = minimal_saturating_m(calc, p, 10000))
      b.upper_saturating = 2.0 * std::sqrt(*M / p.a);
    if (std::abs(p.a - 1.0) < 1e-12 && std::abs(p.b - 1.0) < 1e-12) {
      // peak-derived control: B_M(v_max) = f_max solved for M; an upper
      // bound only when that M certifies the control globally
      double fM = calc.f_max, v0 = calc.v_max;
      double M = fM * (fM * v0 + std::sqrt(4.0 + fM * fM * v0 * v0)) / (2.0 * v0);
      if (certifies(calc, p, M * (1.0 + 1e-12) + 1e-15, 10000))
        b.upper_peak = 2.0 * std::sqrt(M);
    }
  } else {
    double Y = calc.F1 - calc.eval_F(calc.alpha);  // integral of f over [alpha,1]
    b.lower_main = supFv.value / (p.a * slope_rate(p, Y));
    b.upper_main =
        1.0 / calc.alpha *
        std::sqrt(p.ratio() * p.ratio() * Y * Y + 2.0 / p.a * Y);
  }
  return b;
}

namespace {

// Signed two-point mismatch y+(v_mid) - y-(v_mid); -inf marks speeds whose
// forward corner problem has no monotone solution at all.
struct Matcher {
  const ReactionCalculus& calc;
  const ModelParams& p;
  const SolverControls& ctl;
  double v_mid;

  double operator()(double c) const {
    double y_fwd;
    if (calc.type == ReactionType::Monostable) {
      auto fwd = max_forward_solution(calc, p, c, ctl, v_mid);
      if (!fwd) return -kInf;
      y_fwd = fwd->hit_zero_at ? 0.0 : fwd->eval_y(v_mid);
    } else if (calc.type == ReactionType::Combustion) {
      y_fwd = max_solution_closed_form(p, c, v_mid);
    } else {
      auto fwd = integrate_forward(calc, p, c, ctl, v_mid);
      y_fwd = fwd.hit_zero_at ? 0.0 : fwd.eval_y(v_mid);
    }
    auto bwd = integrate_backward(calc, p, c, ctl, v_mid);
    double y_bwd = bwd.hit_zero_at ? 0.0 : bwd.eval_y(v_mid);
    if (bwd.hit_zero_at) return kInf;  // backward died: c is too large
    return y_fwd - y_bwd;
  }
};

}  // namespace

SpeedResult compute_speed(const ReactionCalculus& calc, const ModelParams& p,
                          const SolverControls& ctl) {
  SpeedResult res;
  res.bounds = compute_bounds(calc, p);

  if (calc.type == ReactionType::Bistable && calc.balanced) {
    // stationary front: c* = 0 exactly
    res.c_star = 0.0;
    res.matching_residual = 0.0;
    return res;
  }

  double lo = res.bounds.max_lower();
  double hi = res.bounds.min_upper();
  res.bracket_history.emplace_back(lo, hi);

  double v_mid = calc.type == ReactionType::Monostable ? 0.5 : calc.alpha;
  Matcher D{calc, p, ctl, v_mid};

  // Bounds pinned the speed already.
  if (hi - lo <= ctl.ctol * std::max(1.0, hi)) {
    res.c_star = 0.5 * (lo + hi);
    double d = D(res.c_star);
    res.matching_residual = std::isfinite(d) ? std::abs(d) : 0.0;
    return res;
  }

  double d_lo = D(lo);
  if (d_lo >= 0.0 && std::isfinite(d_lo)) {
    // admissible at the proven lower bound: the bound is attained
    res.c_star = lo;
    res.matching_residual = std::abs(d_lo);
    return res;
  }
  double d_hi = D(hi);
  int expansions = 0;
  while (!(d_hi > 0.0) && expansions < ctl.max_expansions) {
    hi = lo + 2.0 * (hi - lo);
    d_hi = D(hi);
    ++expansions;
    res.bracket_history.emplace_back(lo, hi);
  }
  if (!(d_hi > 0.0))
    throw BracketFailure("matching predicate did not split after expansions");

  double d_best = d_hi;
  int iters = 0;
  while ((hi - lo > ctl.ctol * std::max(1.0, hi) ||
          std::abs(d_best) > ctl.rtol_match) &&
         iters < 240) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;  // bracket at floating resolution
    double d = D(mid);
    if (d >= 0.0) {
      hi = mid;
      d_best = d;
    } else {
      lo = mid;
    }
    res.bracket_history.emplace_back(lo, hi);
    ++iters;
  }
  res.iterations = iters;
  res.c_star = hi;  // admissible side of the final bracket
  res.matching_residual = std::isfinite(d_best) ? std::abs(d_best) : 0.0;

  // Corner-slope diagnostic: E(y(v))/v near v = 0 should solve
  // x^2 - c a x + a f'(0) = 0 along the largest root.
  if (calc.type == ReactionType::Monostable) {
    auto fwd = max_forward_solution(calc, p, res.c_star, ctl, 4.0 * ctl.v_floor);
    if (fwd && !fwd->samples.empty()) {
      double v0 = 2.0 * ctl.v_floor;
      double x = fwd->eval_E(v0) / v0;
      CornerSlopeDiag diag;
      diag.x_measured = x;
      diag.quadratic_residual =
          std::abs(x * x - res.c_star * p.a * x + p.a * calc.fprime0);
      res.corner_slope = diag;
    }
  }
  return res;
}

SpeedPrediction limit_speed_prediction(const ReactionCalculus& calc,
                                       Regime regime) {
  SpeedPrediction pred;
  if (calc.type == ReactionType::Bistable && calc.balanced) {
    pred.kind = SpeedPrediction::Kind::Zero;
    pred.value = 0.0;
    pred.note = "balanced reaction: the front is stationary for every parameter";
    return pred;
  }
  switch (regime) {
    case Regime::FieldVanishing:
      if (calc.kpp) {
        pred.kind = SpeedPrediction::Kind::Finite;
        pred.value = 2.0 * std::sqrt(calc.fprime0);
        pred.note = "linear-diffusion critical speed 2 sqrt(f'(0))";
      } else {
        pred.kind = SpeedPrediction::Kind::Finite;
        pred.note =
            "linear-diffusion critical speed; no closed form, see "
            "linear_critical()";
      }
      return pred;
    case Regime::FieldDominant:
      pred.kind = SpeedPrediction::Kind::Infinite;
      pred.order = 1.0;  // grows like b/a
      pred.note = "speed diverges linearly in the field-strength ratio";
      return pred;
    case Regime::DiffusionVanishing:
      pred.kind = SpeedPrediction::Kind::Zero;
      pred.order = 0.5;  // vanishes like sqrt(gamma)
      pred.value = 0.0;
      pred.note = "speed vanishes with order sqrt of the diffusion parameter";
      return pred;
    case Regime::SingularPerturbation:
      if (calc.type == ReactionType::Bistable)
        throw NoPrediction(
            "non-balanced bistable singular perturbation is open: candidates "
            "are f(v+) with a glued profile or F(1) with a fully piecewise "
            "linear profile");
      if (!calc.assumption_f)
        throw NoPrediction(
            "singular-perturbation limit speed requires a unique interior "
            "maximum of the reaction");
      pred.kind = SpeedPrediction::Kind::Finite;
      pred.value = calc.eval_f(calc.v_plus);
      pred.note = "limit speed f(v+) at the glue value";
      return pred;
  }
  throw DomainError("unknown regime");
}

}  // namespace bifront
