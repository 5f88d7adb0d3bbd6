// SPDX-License-Identifier: Apache-2.0
#include "bifront/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "bifront/ode.hpp"

namespace bifront {

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4), scalar, with event location on the step interpolant.

namespace {

struct DP45 {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                          e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640,
                          e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
};

double hermite(double u0, double y0, double d0, double u1, double y1, double d1,
               double u) {
  double h = u1 - u0;
  double t = (u - u0) / h;
  double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 +
         (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * d1;
}

}  // namespace

OdeNode rk45_integrate(const std::function<double(double, double)>& f,
                       double u0, double u1, double y0, const OdeOptions& opt,
                       const std::function<void(const OdeNode&)>& sink,
                       const std::function<bool(double, double)>& stop,
                       const std::function<double(double)>& where) {
  const double dir = u1 >= u0 ? 1.0 : -1.0;
  const double span = std::abs(u1 - u0);
  double u = u0, y = y0;
  double k1 = f(u, y);
  double h = opt.h_init > 0.0 ? opt.h_init : span / 100.0;
  h = std::min(h, span);
  if (sink) sink({u, y, k1});
  if (span == 0.0) return {u, y, k1};

  auto report_u = [&](double uu) { return where ? where(uu) : uu; };

  long steps = 0;
  while (dir * (u1 - u) > 0.0) {
    if (++steps > opt.max_steps)
      throw StiffnessFailure("step budget exhausted", report_u(u));
    h = std::min(h, std::abs(u1 - u));
    if (h < opt.h_min)
      throw StiffnessFailure("minimum step underflow", report_u(u));
    double hd = dir * h;

    double k2 = f(u + DP45::c2 * hd, y + hd * (DP45::a21 * k1));
    double k3 = f(u + DP45::c3 * hd, y + hd * (DP45::a31 * k1 + DP45::a32 * k2));
    double k4 = f(u + DP45::c4 * hd,
                  y + hd * (DP45::a41 * k1 + DP45::a42 * k2 + DP45::a43 * k3));
    double k5 = f(u + DP45::c5 * hd, y + hd * (DP45::a51 * k1 + DP45::a52 * k2 +
                                               DP45::a53 * k3 + DP45::a54 * k4));
    double k6 = f(u + hd, y + hd * (DP45::a61 * k1 + DP45::a62 * k2 +
                                    DP45::a63 * k3 + DP45::a64 * k4 +
                                    DP45::a65 * k5));
    double ynew = y + hd * (DP45::b1 * k1 + DP45::b3 * k3 + DP45::b4 * k4 +
                            DP45::b5 * k5 + DP45::b6 * k6);
    double k7 = f(u + hd, ynew);
    double err_raw = hd * (DP45::e1 * k1 + DP45::e3 * k3 + DP45::e4 * k4 +
                           DP45::e5 * k5 + DP45::e6 * k6 + DP45::e7 * k7);
    double sc = opt.atol + opt.rtol * std::max(std::abs(y), std::abs(ynew));
    double err = std::abs(err_raw) / sc;

    if (!std::isfinite(err)) {
      h *= 0.25;
      continue;
    }
    if (err > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      continue;
    }

    double unew = u + hd;
    if (stop && stop(unew, ynew)) {
      // locate the first crossing on the cubic interpolant
      double lo = u, hi = unew;
      for (int i = 0; i < 60 && std::abs(hi - lo) > 1e-15 * (1.0 + std::abs(hi));
           ++i) {
        double mid = 0.5 * (lo + hi);
        double ym = hermite(u, y, k1, unew, ynew, k7, mid);
        (stop(mid, ym) ? hi : lo) = mid;
      }
      double uc = hi;
      double yc = hermite(u, y, k1, unew, ynew, k7, uc);
      OdeNode node{uc, yc, f(uc, yc)};
      if (sink) sink(node);
      return node;
    }

    u = unew;
    y = ynew;
    k1 = k7;
    if (sink) sink({u, y, k1});
    h *= std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 6.0);
  }
  return {u, y, k1};
}

double adaptive_simpson(const std::function<double(double)>& g, double a,
                        double b, double tol, int max_depth) {
  struct Rec {
    const std::function<double(double)>& g;
    double run(double a, double fa, double b, double fb, double fm, double S,
               double tol, int depth) {
      double m = 0.5 * (a + b);
      double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      double flm = g(lm), frm = g(rm);
      double Sl = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      double Sr = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      if (depth <= 0) return Sl + Sr;
      if (std::abs(Sl + Sr - S) <= 15.0 * tol) return Sl + Sr + (Sl + Sr - S) / 15.0;
      return run(a, fa, m, fm, flm, Sl, 0.5 * tol, depth - 1) +
             run(m, fm, b, fb, frm, Sr, 0.5 * tol, depth - 1);
    }
  } rec{g};
  double fa = g(a), fb = g(b), fm = g(0.5 * (a + b));
  if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
    throw QuadratureFailure("non-finite integrand");
  double S = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return rec.run(a, fa, b, fb, fm, S, tol, max_depth);
}

// ---------------------------------------------------------------------------
// Reduction primitives.

double slope_rate(const ModelParams& p, double y) {
  if (y < 0.0) throw DomainError("slope_rate requires y >= 0");
  if (y == 0.0) return 0.0;
  double E = std::sqrt(y * (2.0 * p.a + p.b * p.b * y));
  return E / std::hypot(p.a, p.b * E);
}

double e_transform(const ModelParams& p, double y) {
  if (y < 0.0) throw DomainError("e_transform requires y >= 0");
  return std::sqrt(y * (2.0 * p.a + p.b * p.b * y));
}

double e_inverse(const ModelParams& p, double E) {
  if (E < 0.0) throw DomainError("e_inverse requires E >= 0");
  return E * E / (p.a + std::hypot(p.a, p.b * E));
}

double max_solution_closed_form(const ModelParams& p, double c, double v) {
  // (a/b^2)(sqrt(1 + c^2 b^2 v^2) - 1), stable for b -> 0
  double t = c * p.b * v;
  return p.a * c * c * v * v / (1.0 + std::sqrt(1.0 + t * t));
}

double ReductionSolution::y_floor() const {
  double scale = params.b > 0.0
                     ? std::max(1.0, params.a / (params.b * params.b))
                     : 1.0;
  return 1e-11 * scale;
}

namespace {

size_t find_interval(const std::vector<ReductionSample>& s, double v) {
  // rightmost i with s[i].v <= v, clamped to [0, n-2]
  size_t lo = 0, hi = s.size() - 1;
  if (v <= s.front().v) return 0;
  if (v >= s.back().v) return s.size() - 2;
  while (hi - lo > 1) {
    size_t mid = (lo + hi) / 2;
    (s[mid].v <= v ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

double ReductionSolution::eval_E(double v) const {
  const auto& s = samples;
  if (s.size() < 2) return s.empty() ? 0.0 : s.front().E;
  if (v <= s.front().v) {
    // linear ramp into the corner below the first node
    return s.front().v > 0.0 ? s.front().E * std::max(v, 0.0) / s.front().v
                             : s.front().E;
  }
  if (v >= s.back().v) {
    double rem = 1.0 - s.back().v;
    if (rem <= 0.0) return s.back().E;
    return s.back().E * std::max(1.0 - v, 0.0) / rem;
  }
  size_t i = find_interval(s, v);
  return std::max(0.0, hermite(s[i].v, s[i].E, s[i].dEdv, s[i + 1].v,
                               s[i + 1].E, s[i + 1].dEdv, v));
}

double ReductionSolution::eval_y(double v) const {
  return e_inverse(params, eval_E(v));
}

double ReductionSolution::eval_dydv(double v) const {
  // dy/dv = E/(sqrt(a^2+b^2E^2)) * dE/dv ... = R(y)*... ; use dE and chain
  size_t i = find_interval(samples, std::clamp(v, v_min(), v_max()));
  const auto& s0 = samples[i];
  const auto& s1 = samples[i + 1];
  double t = (v - s0.v) / (s1.v - s0.v);
  double dE = s0.dEdv * (1 - t) + s1.dEdv * t;
  double E = eval_E(v);
  return E / std::hypot(params.a, params.b * E) * dE;
}

// ---------------------------------------------------------------------------
// Phase-wise integration of E' = c a - f(v) sqrt(a^2 + b^2 E^2)/E.

namespace {

struct PassContext {
  const ReactionCalculus* calc;
  ModelParams p;
  double c;
  const SolverControls* ctl;
  std::vector<ReductionSample> samples;  // in traversal order
  std::optional<double> hit_v;

  double e_floor() const {
    double scale = p.b > 0.0 ? std::max(1.0, p.a / (p.b * p.b)) : 1.0;
    return e_transform(p, ctl->floor_scale * scale);
  }

  double Eprime(double v, double E) const {
    double Ee = std::max(E, 1e-300);
    return c * p.a - calc->eval_f(v) * std::hypot(p.a, p.b * Ee) / Ee;
  }

  // Floor event, active on the interior window [v_floor, 1 - v_floor].
  // Legitimate corner approaches cross the floor inside the excluded
  // margins; an interior crossing means the solution dies there.
  bool hit(double v, double E) const {
    if (E > e_floor()) return false;
    return v >= ctl->v_floor && v <= 1.0 - ctl->v_floor;
  }

  void record(double v, double E) {
    E = std::max(E, 0.0);
    samples.push_back({v, E, Eprime(v, E)});
  }

  OdeOptions opts() const {
    OdeOptions o;
    o.rtol = ctl->rtol;
    o.atol = ctl->atol;
    o.h_min = ctl->min_step;
    return o;
  }

  // Integrate in v from (v0, E0) to v1.  Returns final (v, E); sets hit_v
  // and stops early when the floor event fires.
  std::pair<double, double> run_v(double v0, double E0, double v1) {
    auto rhs = [this](double v, double E) { return Eprime(v, E); };
    auto sink = [this](const OdeNode& n) { record(n.u, n.y); };
    auto stop = [this](double v, double E) { return hit(v, E); };
    OdeNode end = rk45_integrate(rhs, v0, v1, E0, opts(), sink, stop);
    if (hit(end.u, end.y)) hit_v = end.u;
    return {end.u, end.y};
  }

  // Same in tau = log v (used near the v = 0 corner).
  std::pair<double, double> run_logv(double v0, double E0, double v1) {
    auto rhs = [this](double t, double E) {
      double v = std::exp(t);
      return v * Eprime(v, E);
    };
    auto sink = [this](const OdeNode& n) { record(std::exp(n.u), n.y); };
    auto stop = [this](double t, double E) { return hit(std::exp(t), E); };
    auto where = [](double t) { return std::exp(t); };
    OdeNode end = rk45_integrate(rhs, std::log(v0), std::log(v1), E0, opts(),
                                 sink, stop, where);
    double v = std::exp(end.u);
    if (hit(v, end.y)) hit_v = v;
    return {v, end.y};
  }

  // Same in sigma = log(1 - v) (used near the v = 1 corner).
  std::pair<double, double> run_log1mv(double v0, double E0, double v1) {
    auto rhs = [this](double s, double E) {
      double w = std::exp(s);  // 1 - v
      return -w * Eprime(1.0 - w, E);
    };
    auto sink = [this](const OdeNode& n) { record(1.0 - std::exp(n.u), n.y); };
    auto stop = [this](double s, double E) { return hit(1.0 - std::exp(s), E); };
    auto where = [](double s) { return 1.0 - std::exp(s); };
    OdeNode end = rk45_integrate(rhs, std::log(1.0 - v0), std::log(1.0 - v1),
                                 E0, opts(), sink, stop, where);
    double v = 1.0 - std::exp(end.u);
    if (hit(v, end.y)) hit_v = v;
    return {v, end.y};
  }
};

ReductionSolution finish(PassContext& ctx, double c, const ModelParams& p,
                         Branch branch) {
  ReductionSolution sol;
  sol.c = c;
  sol.params = p;
  sol.branch = branch;
  sol.hit_zero_at = ctx.hit_v;
  sol.samples = std::move(ctx.samples);
  if (branch == Branch::BackwardFromOne)
    std::reverse(sol.samples.begin(), sol.samples.end());
  // drop duplicate abscissae from phase boundaries
  auto& s = sol.samples;
  s.erase(std::unique(s.begin(), s.end(),
                      [](const ReductionSample& x, const ReductionSample& y) {
                        return std::abs(x.v - y.v) < 1e-15;
                      }),
          s.end());
  return sol;
}

}  // namespace

ReductionSolution integrate_backward(const ReactionCalculus& calc,
                                     const ModelParams& p, double c,
                                     const SolverControls& ctl, double v_stop) {
  if (c < 0.0) throw DomainError("integrate_backward requires c >= 0");
  PassContext ctx{&calc, p, c, &ctl, {}, {}};

  // Corner seed at v = 1 - delta: E = x * delta with x the positive root of
  // x^2 + c a x - a m1 = 0, m1 = -f'(1); quadratic fallback when f'(1) = 0.
  const double delta = ctl.seed_delta;
  const double m1 = std::max(0.0, -calc.fprime1);
  double E0;
  if (m1 > 1e-12) {
    double ca = c * p.a;
    double x = 2.0 * p.a * m1 / (std::sqrt(ca * ca + 4.0 * p.a * m1) + ca);
    E0 = x * delta;
  } else if (c > 0.0 && calc.fsecond1 > 1e-12) {
    E0 = 0.5 * calc.fsecond1 / c * delta * delta;
  } else {
    E0 = e_transform(p, std::max(calc.eval_F(1.0) - calc.eval_F(1.0 - delta), 0.0));
  }
  if (E0 <= 0.0) E0 = ctl.atol;

  double v = 1.0 - delta, E = E0;
  double v_lo = std::max(v_stop, 1e-10);
  const double cw = ctl.corner_width;

  if (v > 1.0 - cw) {
    double target = std::max(v_lo, 1.0 - cw);
    std::tie(v, E) = ctx.run_log1mv(v, E, target);
  }
  if (!ctx.hit_v && v > v_lo && v > cw) {
    double target = std::max(v_lo, cw);
    std::tie(v, E) = ctx.run_v(v, E, target);
  }
  if (!ctx.hit_v && v > v_lo) {
    std::tie(v, E) = ctx.run_logv(v, E, v_lo);
  }
  return finish(ctx, c, p, Branch::BackwardFromOne);
}

ReductionSolution integrate_forward(const ReactionCalculus& calc,
                                    const ModelParams& p, double c,
                                    const SolverControls& ctl, double v_stop) {
  if (calc.type == ReactionType::Monostable)
    throw DomainError(
        "integrate_forward handles combustion/bistable reactions; use "
        "max_forward_solution for the monostable maximal branch");
  if (v_stop <= 0.0 || v_stop > 1.0)
    throw DomainError("integrate_forward requires v_stop in (0,1]");
  PassContext ctx{&calc, p, c, &ctl, {}, {}};

  double v, E;
  if (calc.type == ReactionType::Combustion) {
    // exact on [0, alpha]: E(v) = c a v
    double upto = std::min(calc.alpha, v_stop);
    const int M = 32;
    for (int i = 0; i <= M; ++i) {
      double vv = upto * double(i) / M;
      ctx.samples.push_back({vv, c * p.a * vv, c * p.a});
    }
    v = upto;
    E = c * p.a * upto;
  } else {
    // bistable: y ~ q v^2 leaving the corner, 2q = c a sqrt(2q/a) + m0
    const double m0 = std::max(0.0, -calc.fprime0);
    double ca_s = c * std::sqrt(2.0 * p.a);
    double u = (ca_s + std::sqrt(ca_s * ca_s + 8.0 * m0)) / 4.0;  // sqrt(q)
    double v_seed = std::min(1e-4, calc.alpha / 64.0);
    if (u <= 0.0) throw DomainError("degenerate bistable corner");
    double E_seed = std::sqrt(2.0 * p.a) * u * v_seed;
    ctx.record(v_seed, E_seed);
    v = v_seed;
    E = E_seed;
    if (v < ctl.corner_width && v_stop > v) {
      double target = std::min(ctl.corner_width, v_stop);
      std::tie(v, E) = ctx.run_logv(v, E, target);
    }
  }
  if (!ctx.hit_v && v < v_stop) std::tie(v, E) = ctx.run_v(v, E, v_stop);
  return finish(ctx, c, p, Branch::ForwardFromZero);
}

std::optional<ReductionSolution> max_forward_solution(
    const ReactionCalculus& calc, const ModelParams& p, double c,
    const SolverControls& ctl, double v_stop) {
  if (calc.type != ReactionType::Monostable)
    throw DomainError("max_forward_solution is the monostable maximal branch");
  double ca = c * p.a;
  double disc = ca * ca - 4.0 * p.a * calc.fprime0;
  double scale = ca * ca + 4.0 * p.a * std::abs(calc.fprime0);
  if (disc < -1e-12 * scale) return std::nullopt;  // complex corner roots
  disc = std::max(disc, 0.0);
  double X = 0.5 * (ca + std::sqrt(disc));
  if (X <= 0.0) return std::nullopt;

  PassContext ctx{&calc, p, c, &ctl, {}, {}};
  double v_seed = ctl.v_floor;
  double f2 = 0.5 * calc.fsecond0;
  double e2 = -p.a * f2 / (X * (2.0 - p.a * calc.fprime0 / (X * X)));
  double E = std::max(X * v_seed + e2 * v_seed * v_seed, 0.5 * X * v_seed);
  ctx.record(v_seed, E);
  double v = v_seed;
  if (v < ctl.corner_width && v_stop > v) {
    double target = std::min(ctl.corner_width, v_stop);
    std::tie(v, E) = ctx.run_logv(v, E, target);
  }
  if (!ctx.hit_v && v < v_stop) std::tie(v, E) = ctx.run_v(v, E, v_stop);
  return finish(ctx, c, p, Branch::ForwardFromZero);
}

ReductionSolution merge_two_point(const ReductionSolution& forward,
                                  const ReductionSolution& backward) {
  if (forward.branch != Branch::ForwardFromZero ||
      backward.branch != Branch::BackwardFromOne)
    throw DomainError("merge_two_point expects a forward and a backward branch");
  ReductionSolution out;
  out.c = backward.c;
  out.params = backward.params;
  out.branch = Branch::TwoPoint;
  if (forward.hit_zero_at) out.hit_zero_at = forward.hit_zero_at;
  if (backward.hit_zero_at) out.hit_zero_at = backward.hit_zero_at;
  double v_join = forward.samples.back().v;
  out.samples = forward.samples;
  for (const auto& s : backward.samples)
    if (s.v > v_join + 1e-15) out.samples.push_back(s);
  return out;
}

}  // namespace bifront
