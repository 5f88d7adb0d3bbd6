// SPDX-License-Identifier: Apache-2.0
#include "bifront/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace bifront {

std::string fmt_sig(double x, int sig) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", sig, x);
  return buf;
}

namespace {

nlohmann::json num(double x, int sig) {
  // route through the fixed formatter so json output is byte-stable
  if (!std::isfinite(x)) return fmt_sig(x, sig);
  return nlohmann::json::parse(fmt_sig(x, sig));
}

void put_opt(nlohmann::json& j, const char* key, const std::optional<double>& v,
             int sig) {
  if (v) j[key] = num(*v, sig);
}

}  // namespace

nlohmann::json to_json(const SpeedBounds& b, int sig) {
  nlohmann::json j = nlohmann::json::object();
  put_opt(j, "lower_main", b.lower_main, sig);
  put_opt(j, "upper_main", b.upper_main, sig);
  put_opt(j, "lower_universal", b.lower_universal, sig);
  put_opt(j, "lower_kpp", b.lower_kpp, sig);
  put_opt(j, "upper_saturating", b.upper_saturating, sig);
  put_opt(j, "upper_peak", b.upper_peak, sig);
  return j;
}

nlohmann::json to_json(const SpeedResult& r, int sig) {
  nlohmann::json j;
  j["c_star"] = num(r.c_star, sig);
  j["residual"] = num(r.matching_residual, sig);
  j["iterations"] = r.iterations;
  nlohmann::json jb = to_json(r.bounds, sig);
  for (auto& [k, v] : jb.items()) j[k] = v;
  if (r.corner_slope) {
    j["corner_slope"] = num(r.corner_slope->x_measured, sig);
    j["corner_slope_residual"] = num(r.corner_slope->quadratic_residual, sig);
  }
  return j;
}

nlohmann::json to_json(const FrontProfile& p, int sig) {
  nlohmann::json j;
  j["c"] = num(p.c, sig);
  j["a"] = num(p.params.a, sig);
  j["b"] = num(p.params.b, sig);
  j["v0"] = num(p.V0, sig);
  j["delta0"] = num(p.delta0, sig);
  j["delta1"] = num(p.delta1, sig);
  if (p.tail_exponent0) j["tail_exponent0"] = num(*p.tail_exponent0, sig);
  if (p.tail_exponent1) j["tail_exponent1"] = num(*p.tail_exponent1, sig);
  auto z = nlohmann::json::array(), v = nlohmann::json::array(),
       dv = nlohmann::json::array();
  for (const auto& s : p.samples) {
    z.push_back(num(s.z, sig));
    v.push_back(num(s.v, sig));
    dv.push_back(num(s.dv, sig));
  }
  j["z"] = std::move(z);
  j["v"] = std::move(v);
  j["dv"] = std::move(dv);
  return j;
}

nlohmann::json to_json(const LimitProfile& p, int sig) {
  nlohmann::json j;
  j["kind"] = limit_kind_name(p.kind);
  j["v0"] = num(p.V0, sig);
  switch (p.kind) {
    case LimitKind::GluedLI:
      j["v_plus"] = num(p.v_plus, sig);
      j["c_bar"] = num(p.c_bar, sig);
      j["glue_z"] = num(p.glue_z, sig);
      j["slope"] = num(p.slope, sig);
      break;
    case LimitKind::Inviscid:
      j["c_bar"] = num(p.c_bar, sig);
      break;
    case LimitKind::PiecewiseLinear:
    case LimitKind::SteadyBalanced:
      j["anchor_z"] = num(p.anchor_z, sig);
      j["anchor_v"] = num(p.anchor_v, sig);
      j["slope"] = num(p.slope, sig);
      break;
    case LimitKind::LinearCritical:
      j["c_bar"] = num(p.c_bar, sig);
      break;
    default:
      break;
  }
  return j;
}

nlohmann::json to_json(const SweepReport& r, int sig) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json jr;
    jr["value"] = num(row.value, sig);
    jr["a"] = num(row.params.a, sig);
    jr["b"] = num(row.params.b, sig);
    if (!row.error.empty()) jr["error"] = row.error;
    if (row.speed) {
      jr["speed"] = to_json(*row.speed, sig);
    } else if (row.bounds) {
      jr["bounds"] = to_json(*row.bounds, sig);
    }
    if (row.distance) jr["distance"] = num(*row.distance, sig);
    rows.push_back(std::move(jr));
  }
  nlohmann::json j;
  j["rows"] = std::move(rows);
  if (r.fitted_order) {
    j["fitted_order"] = num(r.fitted_order->slope, sig);
    j["fitted_order_stderr"] = num(r.fitted_order->stderr_slope, sig);
    j["fitted_order_residual"] = num(r.fitted_order->residual, sig);
    if (r.fitted_order->expected_deviation)
      j["fitted_order_expected_deviation"] =
          num(*r.fitted_order->expected_deviation, sig);
  }
  return j;
}

nlohmann::json to_json(const RegimeCell& cell) {
  nlohmann::json j;
  j["speed_trend"] = cell.speed_trend;
  auto kinds = nlohmann::json::array();
  for (auto k : cell.profile_kinds) kinds.push_back(limit_kind_name(k));
  j["profile_kinds"] = std::move(kinds);
  j["open"] = cell.open;
  j["note"] = cell.note;
  return j;
}

void write_profile_csv(std::ostream& os, const FrontProfile& p, int sig) {
  os << "z,v,dv\n";
  for (const auto& s : p.samples)
    os << fmt_sig(s.z, sig) << ',' << fmt_sig(s.v, sig) << ','
       << fmt_sig(s.dv, sig) << '\n';
}

void write_reduction_csv(std::ostream& os, const ReductionSolution& r, int sig) {
  os << "v,y\n";
  for (const auto& s : r.samples)
    os << fmt_sig(s.v, sig) << ',' << fmt_sig(e_inverse(r.params, s.E), sig)
       << '\n';
}

void write_limit_csv(std::ostream& os, const LimitProfile& p,
                     std::pair<double, double> window, int points, int sig) {
  os << "# " << p.describe() << '\n';
  os << "z,v\n";
  for (int k = 0; k <= points; ++k) {
    double z = window.first + (window.second - window.first) * double(k) / points;
    os << fmt_sig(z, sig) << ',' << fmt_sig(p.eval(z), sig) << '\n';
  }
}

namespace {

void speed_csv_header(std::ostream& os) {
  os << "c_star,residual,iterations,lower_main,upper_main,lower_universal,"
        "lower_kpp,upper_saturating,upper_peak\n";
}

void speed_csv_row(std::ostream& os, const SpeedResult& r, int sig) {
  auto opt = [&](const std::optional<double>& v) {
    return v ? fmt_sig(*v, sig) : std::string();
  };
  os << fmt_sig(r.c_star, sig) << ',' << fmt_sig(r.matching_residual, sig)
     << ',' << r.iterations << ',' << opt(r.bounds.lower_main) << ','
     << opt(r.bounds.upper_main) << ',' << opt(r.bounds.lower_universal) << ','
     << opt(r.bounds.lower_kpp) << ',' << opt(r.bounds.upper_saturating) << ','
     << opt(r.bounds.upper_peak) << '\n';
}

}  // namespace

void write_speed_csv(std::ostream& os, const SpeedResult& r, int sig) {
  speed_csv_header(os);
  speed_csv_row(os, r, sig);
}

void write_sweep_csv(std::ostream& os, const SweepReport& r, int sig) {
  os << "value,a,b,c_star,residual,iterations,lower_main,upper_main,"
        "lower_universal,lower_kpp,upper_saturating,upper_peak,distance,error\n";
  auto opt = [&](const std::optional<double>& v) {
    return v ? fmt_sig(*v, sig) : std::string();
  };
  for (const auto& row : r.rows) {
    os << fmt_sig(row.value, sig) << ',' << fmt_sig(row.params.a, sig) << ','
       << fmt_sig(row.params.b, sig) << ',';
    if (row.speed) {
      const auto& s = *row.speed;
      os << fmt_sig(s.c_star, sig) << ',' << fmt_sig(s.matching_residual, sig)
         << ',' << s.iterations << ',';
    } else {
      os << ",,,";
    }
    const SpeedBounds* b =
        row.speed ? &row.speed->bounds : (row.bounds ? &*row.bounds : nullptr);
    if (b) {
      os << opt(b->lower_main) << ',' << opt(b->upper_main) << ','
         << opt(b->lower_universal) << ',' << opt(b->lower_kpp) << ','
         << opt(b->upper_saturating) << ',' << opt(b->upper_peak) << ',';
    } else {
      os << ",,,,,,";
    }
    os << opt(row.distance) << ',' << row.error << '\n';
  }
}

}  // namespace bifront
