// SPDX-License-Identifier: Apache-2.0
#include "bifront/profile.hpp"

#include <algorithm>
#include <cmath>

#include "bifront/ode.hpp"

namespace bifront {

namespace {

// 7-point Gauss-Legendre on [-1, 1]
constexpr double kGx[7] = {0.0,
                           0.4058451513773972,  -0.4058451513773972,
                           0.7415311855993945,  -0.7415311855993945,
                           0.9491079123427585,  -0.9491079123427585};
constexpr double kGw[7] = {0.4179591836734694, 0.3818300505051189,
                           0.3818300505051189, 0.2797053914892766,
                           0.2797053914892766, 0.1294849661688697,
                           0.1294849661688697};

double hermite_val(double u0, double y0, double d0, double u1, double y1,
                   double d1, double u) {
  double h = u1 - u0;
  double t = (u - u0) / h;
  double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 +
         (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * d1;
}

// dz/dv = sqrt(a^2 + b^2 E^2) / (a E)
double dz_dv(const ModelParams& p, double E) {
  return std::hypot(p.a, p.b * E) / (p.a * std::max(E, 1e-300));
}

double slope_from_E(const ModelParams& p, double E) {
  return p.a * E / std::hypot(p.a, p.b * E);
}

// integral of dz/dv over [va, vb] using GL7 on the reduction interpolant
double z_increment(const ReductionSolution& red, double va, double vb) {
  double mid = 0.5 * (va + vb), half = 0.5 * (vb - va);
  double acc = 0.0;
  for (int i = 0; i < 7; ++i) {
    double v = mid + half * kGx[i];
    acc += kGw[i] * dz_dv(red.params, red.eval_E(v));
  }
  return acc * half;
}

}  // namespace

double FrontProfile::eval(double z) const {
  if (samples.empty()) throw DomainError("empty profile");
  if (z <= samples.front().z) return samples.front().v;
  if (z >= samples.back().z) return samples.back().v;
  size_t lo = 0, hi = samples.size() - 1;
  while (hi - lo > 1) {
    size_t mid = (lo + hi) / 2;
    (samples[mid].z <= z ? lo : hi) = mid;
  }
  const auto& s0 = samples[lo];
  const auto& s1 = samples[lo + 1];
  if (!reduction)
    return hermite_val(s0.z, s0.v, s0.dv, s1.z, s1.v, s1.dv, z);
  // refine by re-integrating dv/dz from the nearest node (4 RK4 substeps)
  const auto& s = (z - s0.z <= s1.z - z) ? s0 : s1;
  double zz = s.z, vv = s.v;
  double h = (z - zz) / 4.0;
  auto rhs = [&](double v) {
    return slope_from_E(params, reduction->eval_E(std::clamp(v, 0.0, 1.0)));
  };
  for (int i = 0; i < 4; ++i) {
    double k1 = rhs(vv);
    double k2 = rhs(vv + 0.5 * h * k1);
    double k3 = rhs(vv + 0.5 * h * k2);
    double k4 = rhs(vv + h * k3);
    vv += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    zz += h;
  }
  return std::clamp(vv, 0.0, 1.0);
}

double FrontProfile::eval_slope(double z) const {
  if (reduction) {
    double v = eval(z);
    return slope_from_E(params, reduction->eval_E(std::clamp(v, 0.0, 1.0)));
  }
  if (z <= samples.front().z) return samples.front().dv;
  if (z >= samples.back().z) return samples.back().dv;
  size_t lo = 0, hi = samples.size() - 1;
  while (hi - lo > 1) {
    size_t mid = (lo + hi) / 2;
    (samples[mid].z <= z ? lo : hi) = mid;
  }
  double t = (z - samples[lo].z) / (samples[lo + 1].z - samples[lo].z);
  return samples[lo].dv * (1 - t) + samples[lo + 1].dv * t;
}

FrontProfile reconstruct_profile(std::shared_ptr<const ReductionSolution> red,
                                 double V0, const SolverControls& ctl) {
  if (!red || red->samples.size() < 4)
    throw DomainError("reduction solution has too few samples");
  if (red->hit_zero_at)
    throw NotAdmissible("reduction vanished at interior v = " +
                        std::to_string(*red->hit_zero_at));
  const ModelParams p = red->params;
  double v_lo = std::max(ctl.delta0, red->v_min());
  double v_hi = std::min(1.0 - ctl.delta1, red->v_max());
  if (!(v_lo < V0 && V0 < v_hi))
    throw DomainError("normalization value outside the sampled range");

  // quadrature nodes: reduction samples clipped to [v_lo, v_hi] plus V0
  std::vector<double> nodes;
  nodes.push_back(v_lo);
  for (const auto& s : red->samples)
    if (s.v > v_lo + 1e-15 && s.v < v_hi - 1e-15) nodes.push_back(s.v);
  nodes.push_back(v_hi);
  nodes.push_back(V0);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end(),
                          [](double x, double y) { return y - x < 1e-15; }),
              nodes.end());

  std::vector<double> zs(nodes.size(), 0.0);
  for (size_t i = 1; i < nodes.size(); ++i)
    zs[i] = zs[i - 1] + z_increment(*red, nodes[i - 1], nodes[i]);
  // shift so that z(V0) = 0
  size_t i0 = std::lower_bound(nodes.begin(), nodes.end(), V0) - nodes.begin();
  double z0 = zs[std::min(i0, zs.size() - 1)];
  for (auto& z : zs) z -= z0;

  FrontProfile prof;
  prof.c = red->c;
  prof.params = p;
  prof.V0 = V0;
  prof.delta0 = v_lo;
  prof.delta1 = 1.0 - v_hi;
  prof.reduction = red;

  const int K = std::max(16, ctl.profile_points);
  double z_lo = zs.front(), z_hi = zs.back();
  for (int k = 0; k < K; ++k) {
    double z = z_lo + (z_hi - z_lo) * double(k) / (K - 1);
    // locate the quadrature interval and solve z(v) = z by Newton
    size_t lo = 0, hi = zs.size() - 1;
    while (hi - lo > 1) {
      size_t mid = (lo + hi) / 2;
      (zs[mid] <= z ? lo : hi) = mid;
    }
    double va = nodes[lo], vb = nodes[hi];
    double v = va + (vb - va) * (z - zs[lo]) / std::max(zs[hi] - zs[lo], 1e-300);
    for (int it = 0; it < 8; ++it) {
      double zv = zs[lo] + z_increment(*red, va, v);
      double g = dz_dv(p, red->eval_E(v));
      double dv = (z - zv) / g;
      v = std::clamp(v + dv, va, vb);
      if (std::abs(dv) < 1e-13) break;
    }
    double E = red->eval_E(v);
    prof.samples.push_back({z, v, slope_from_E(p, E)});
  }
  prof.tail_exponent0 = prof.samples.front().dv / prof.samples.front().v;
  prof.tail_exponent1 =
      prof.samples.back().dv / (1.0 - prof.samples.back().v);
  return prof;
}

std::shared_ptr<ReductionSolution> critical_reduction(
    const ReactionCalculus& calc, const ModelParams& p, double c,
    const SolverControls& ctl) {
  double v_mid = calc.type == ReactionType::Monostable ? 0.5 : calc.alpha;
  ReductionSolution fwd;
  if (calc.type == ReactionType::Monostable) {
    auto f = max_forward_solution(calc, p, c, ctl, v_mid);
    if (!f)
      throw NotAdmissible("no monotone corner exit at this speed");
    fwd = std::move(*f);
  } else {
    fwd = integrate_forward(calc, p, c, ctl, v_mid);
  }
  auto bwd = integrate_backward(calc, p, c, ctl, v_mid);
  return std::make_shared<ReductionSolution>(merge_two_point(fwd, bwd));
}

std::pair<double, FrontProfile> linear_critical(const ReactionCalculus& calc,
                                                const SolverControls& ctl) {
  ModelParams lin = ModelParams::linear_reference();
  SpeedResult res = compute_speed(calc, lin, ctl);
  if (calc.kpp) {
    double cL_kpp = 2.0 * std::sqrt(calc.fprime0);
    if (std::abs(res.c_star - cL_kpp) > 1e-3)
      throw BracketFailure("linear critical speed deviates from 2 sqrt(f'(0))");
  }
  double c = res.c_star;
  if (calc.type == ReactionType::Bistable && calc.balanced) c = 0.0;
  auto red = critical_reduction(calc, lin, c, ctl);
  FrontProfile prof =
      reconstruct_profile(red, calc.default_normalization(), ctl);
  return {c, prof};
}

// ---------------------------------------------------------------------------

std::string limit_kind_name(LimitKind k) {
  switch (k) {
    case LimitKind::Constant: return "constant";
    case LimitKind::Heaviside: return "heaviside";
    case LimitKind::PiecewiseLinear: return "piecewise-linear";
    case LimitKind::Inviscid: return "inviscid";
    case LimitKind::GluedLI: return "glued-linear-inviscid";
    case LimitKind::LinearCritical: return "linear-critical";
    case LimitKind::SteadyBalanced: return "steady-balanced";
  }
  return "?";
}

double LimitProfile::eval(double z) const {
  switch (kind) {
    case LimitKind::Constant:
      return V0;
    case LimitKind::Heaviside:
      return z < 0.0 ? 0.0 : (z > 0.0 ? 1.0 : V0);
    case LimitKind::PiecewiseLinear:
    case LimitKind::SteadyBalanced:
      return std::clamp(anchor_v + slope * (z - anchor_z), 0.0, 1.0);
    case LimitKind::LinearCritical:
      return reference->eval(z);
    case LimitKind::Inviscid:
    case LimitKind::GluedLI: {
      if (kind == LimitKind::GluedLI && z <= glue_z)
        return std::clamp(v_plus + (z - glue_z), 0.0, 1.0);
      if (inviscid.empty()) return v_plus;
      if (z <= inviscid.front().first) return inviscid.front().second;
      if (z >= inviscid.back().first) return inviscid.back().second;
      size_t lo = 0, hi = inviscid.size() - 1;
      while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        (inviscid[mid].first <= z ? lo : hi) = mid;
      }
      double z0 = inviscid[lo].first, v0 = inviscid[lo].second;
      double z1 = inviscid[hi].first, v1 = inviscid[hi].second;
      double d0 = calc ? calc->eval_f(v0) / c_bar : (v1 - v0) / (z1 - z0);
      double d1 = calc ? calc->eval_f(v1) / c_bar : (v1 - v0) / (z1 - z0);
      return std::clamp(hermite_val(z0, v0, d0, z1, v1, d1, z), 0.0, 1.0);
    }
  }
  throw DomainError("unknown limit profile kind");
}

std::string LimitProfile::describe() const {
  char buf[160];
  switch (kind) {
    case LimitKind::GluedLI:
      std::snprintf(buf, sizeof buf,
                    "%s: v+ = %.9g, c_bar = %.9g, glue z = %.9g",
                    limit_kind_name(kind).c_str(), v_plus, c_bar, glue_z);
      break;
    case LimitKind::Inviscid:
      std::snprintf(buf, sizeof buf, "%s: c_bar = %.9g",
                    limit_kind_name(kind).c_str(), c_bar);
      break;
    case LimitKind::PiecewiseLinear:
    case LimitKind::SteadyBalanced:
      std::snprintf(buf, sizeof buf, "%s: anchor (%.9g, %.9g), slope %.9g",
                    limit_kind_name(kind).c_str(), anchor_z, anchor_v, slope);
      break;
    default:
      std::snprintf(buf, sizeof buf, "%s: V0 = %.9g",
                    limit_kind_name(kind).c_str(), V0);
  }
  return buf;
}

namespace {

// cumulative z(v) of the inviscid equation c v' = f(v) through (z_a, v_a)
std::vector<std::pair<double, double>> inviscid_curve(
    const ReactionCalculus& calc, double c_bar, double z_a, double v_a) {
  std::vector<std::pair<double, double>> out;
  auto integrand = [&](double s) { return c_bar / calc.eval_f(s); };
  // graded nodes approaching v = 1 (and v_a from above)
  const int n_up = 320;
  std::vector<double> vs;
  vs.push_back(v_a);
  double tail = 1.0 - v_a;
  double r = std::pow(1e-6 / tail, 1.0 / n_up);
  for (int j = 1; j <= n_up; ++j) vs.push_back(1.0 - tail * std::pow(r, j));
  double z = z_a;
  out.emplace_back(z, v_a);
  for (size_t j = 1; j < vs.size(); ++j) {
    z += adaptive_simpson(integrand, vs[j - 1], vs[j], 1e-12);
    out.emplace_back(z, vs[j]);
  }
  return out;
}

}  // namespace

LimitProfile make_limit_profile(const ReactionCalculus& calc, Regime regime,
                                double V0, const SolverControls& ctl) {
  if (!(V0 > 0.0 && V0 < 1.0))
    throw DomainError("normalization value must lie in (0,1)");
  LimitProfile lp;
  lp.V0 = V0;
  lp.calc = &calc;
  switch (regime) {
    case Regime::FieldDominant:
      lp.kind = LimitKind::Constant;
      return lp;
    case Regime::DiffusionVanishing:
      lp.kind = LimitKind::Heaviside;
      return lp;
    case Regime::FieldVanishing: {
      lp.kind = LimitKind::LinearCritical;
      auto [cL, prof] = linear_critical(calc, ctl);
      lp.c_bar = cL;
      lp.reference = std::make_shared<FrontProfile>(std::move(prof));
      return lp;
    }
    case Regime::SingularPerturbation: {
      if (calc.type == ReactionType::Bistable) {
        if (calc.balanced) {
          lp.kind = LimitKind::SteadyBalanced;
          lp.anchor_z = 0.0;
          lp.anchor_v = calc.alpha;
          lp.slope = 1.0;
          return lp;
        }
        throw NoPrediction(
            "non-balanced bistable singular perturbation is open: candidates "
            "are the glued profile and the fully piecewise linear one");
      }
      if (!calc.assumption_f)
        throw NoPrediction(
            "glued limit profile requires a unique interior maximum of f");
      lp.kind = LimitKind::GluedLI;
      lp.v_plus = calc.v_plus;
      lp.c_bar = calc.eval_f(calc.v_plus);
      lp.slope = 1.0;
      if (calc.v_plus >= V0) {
        lp.anchor_z = 0.0;
        lp.anchor_v = V0;
        lp.glue_z = calc.v_plus - V0;
        lp.inviscid = inviscid_curve(calc, lp.c_bar, lp.glue_z, calc.v_plus);
      } else {
        // inviscid piece passes through (0, V0); glue where it takes v+
        auto integrand = [&](double s) { return lp.c_bar / calc.eval_f(s); };
        double z_plus = -adaptive_simpson(integrand, calc.v_plus, V0, 1e-12);
        lp.anchor_z = z_plus;
        lp.anchor_v = calc.v_plus;
        lp.glue_z = z_plus;
        lp.inviscid = inviscid_curve(calc, lp.c_bar, z_plus, calc.v_plus);
      }
      return lp;
    }
  }
  throw DomainError("unknown regime");
}

// ---------------------------------------------------------------------------

RegimeCell classify_regime(Trend trend_a, Trend trend_b,
                           std::optional<Trend> ratio_ba,
                           std::optional<Trend> ratio_b2a) {
  using T = Trend;
  // derive b/a where the individual trends already determine it
  std::optional<Trend> derived;
  if (trend_a == T::ToZero && trend_b != T::ToZero) derived = T::ToInfinity;
  if (trend_a == T::Bounded && trend_b == T::ToInfinity) derived = T::ToInfinity;
  if (trend_a == T::Bounded && trend_b == T::ToZero) derived = T::ToZero;
  if (trend_a == T::Bounded && trend_b == T::Bounded) derived = T::Bounded;
  if (trend_a == T::ToInfinity && trend_b != T::ToInfinity) derived = T::ToZero;
  if (derived && ratio_ba && *ratio_ba != *derived)
    throw DomainError("inconsistent trends: b/a is fixed by a and b");
  if (derived) ratio_ba = derived;

  RegimeCell cell;
  // field strength ratio blows up: profiles lose all room for slope
  if (ratio_ba == T::ToInfinity) {
    cell.speed_trend = "infinite";
    cell.profile_kinds = {LimitKind::Constant};
    cell.regime = Regime::FieldDominant;
    cell.note = "constant limit profile at the normalization value";
    return cell;
  }
  if (trend_a == T::ToZero) {  // a -> 0 with b/a bounded (or to zero)
    cell.speed_trend = "infinite";
    cell.profile_kinds = {LimitKind::Constant};
    cell.regime = Regime::FieldDominant;
    cell.note = "speed grows like 1/sqrt(a); constant limit profile";
    return cell;
  }
  if (trend_a == T::Bounded && trend_b == T::ToZero) {
    cell.speed_trend = "linear-critical";
    cell.profile_kinds = {LimitKind::LinearCritical};
    cell.regime = Regime::FieldVanishing;
    cell.note = "linear-diffusion critical front recovered";
    return cell;
  }
  if (trend_a == T::Bounded && trend_b == T::Bounded) {
    cell.speed_trend = "none";
    cell.note = "both parameters stay bounded: no asymptotic regime";
    return cell;
  }
  if (trend_a == T::ToInfinity && trend_b != T::ToInfinity) {
    cell.speed_trend = "zero";
    cell.profile_kinds = {LimitKind::Heaviside};
    cell.regime = Regime::DiffusionVanishing;
    cell.note = "step limit profile";
    return cell;
  }
  // a, b -> infinity together: split by b/a and b^2/a
  if (!ratio_ba) ratio_ba = T::Bounded;
  if (*ratio_ba == T::Bounded) {
    cell.speed_trend = "finite-positive";
    cell.profile_kinds = {LimitKind::GluedLI, LimitKind::PiecewiseLinear};
    cell.regime = Regime::SingularPerturbation;
    cell.note =
        "glued linear/inviscid profile (monostable, combustion); fully "
        "piecewise linear in the balanced case; bistable case open";
    return cell;
  }
  // b/a -> 0 with a -> infinity
  if (ratio_b2a && *ratio_b2a == T::ToZero) {
    cell.speed_trend = "zero";
    cell.profile_kinds = {LimitKind::Heaviside};
    cell.regime = Regime::DiffusionVanishing;
    cell.note = "step limit profile";
    return cell;
  }
  cell.speed_trend = "zero";
  cell.open = true;
  cell.note =
      "open regime (b^2/a not vanishing): speed tends to zero, limit profile "
      "unresolved";
  return cell;
}

}  // namespace bifront
