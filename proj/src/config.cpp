// SPDX-License-Identifier: Apache-2.0
#include "bifront/config.hpp"

#include <cmath>

namespace bifront {

namespace {

using nlohmann::json;

double get_num(const json& j, const std::string& path, const char* key,
               double fallback, bool* present = nullptr) {
  if (!j.contains(key)) {
    if (present) *present = false;
    return fallback;
  }
  if (present) *present = true;
  const auto& v = j.at(key);
  if (!v.is_number())
    throw ConfigError(path + "." + key, "expected a number");
  return v.get<double>();
}

double require_pos(double x, const std::string& where) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw ConfigError(where, "must be a positive finite number");
  return x;
}

ReactionSpec parse_reaction(const json& j) {
  const std::string path = "reaction";
  if (j.contains("name")) {
    std::string name = j.at("name").get<std::string>();
    std::optional<double> param;
    for (const char* key : {"alpha", "sigma", "m"}) {
      if (j.contains(key)) {
        if (param) throw ConfigError(path, "give at most one shape parameter");
        param = j.at(key).get<double>();
      }
    }
    try {
      return ReactionSpec::catalog(name, param);
    } catch (const DomainError& e) {
      throw ConfigError(path + ".name", e.what());
    }
  }
  if (j.contains("poly")) {
    auto coef = j.at("poly").get<std::vector<double>>();
    if (coef.empty()) throw ConfigError(path + ".poly", "empty coefficient list");
    return ReactionSpec::polynomial("custom", coef);
  }
  if (j.contains("piecewise")) {
    const auto& pw = j.at("piecewise");
    if (!pw.contains("breaks") || !pw.contains("pieces"))
      throw ConfigError(path + ".piecewise", "needs breaks and pieces");
    try {
      return ReactionSpec::piecewise(
          "custom", pw.at("breaks").get<std::vector<double>>(),
          pw.at("pieces").get<std::vector<std::vector<double>>>());
    } catch (const DomainError& e) {
      throw ConfigError(path + ".piecewise", e.what());
    }
  }
  throw ConfigError(path, "needs one of: name, poly, piecewise");
}

SweepAxis axis_from_string(const std::string& s) {
  if (s == "a") return SweepAxis::A;
  if (s == "b") return SweepAxis::B;
  if (s == "epsilon") return SweepAxis::EpsilonCoupling;
  if (s == "gamma") return SweepAxis::GammaCoupling;
  if (s == "pairs") return SweepAxis::CustomPairs;
  throw ConfigError("sweep.axis", "expected a, b, epsilon, gamma or pairs");
}

std::string axis_to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::A: return "a";
    case SweepAxis::B: return "b";
    case SweepAxis::EpsilonCoupling: return "epsilon";
    case SweepAxis::GammaCoupling: return "gamma";
    case SweepAxis::CustomPairs: return "pairs";
  }
  return "?";
}

}  // namespace

Regime regime_from_string(const std::string& s) {
  if (s == "field-vanishing" || s == "linear-limit") return Regime::FieldVanishing;
  if (s == "field-dominant" || s == "constant-limit") return Regime::FieldDominant;
  if (s == "diffusion-vanishing" || s == "heaviside-limit")
    return Regime::DiffusionVanishing;
  if (s == "singular-perturbation") return Regime::SingularPerturbation;
  throw ConfigError("limit.regime",
                    "expected field-vanishing, field-dominant, "
                    "diffusion-vanishing or singular-perturbation");
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config", "top level must be an object");
  RunConfig c;

  if (j.contains("reaction")) {
    c.reaction = parse_reaction(j.at("reaction"));
    c.has_reaction = true;
  }

  if (j.contains("model")) {
    const auto& m = j.at("model");
    if (m.contains("coupling")) {
      std::string name = m.at("coupling").get<std::string>();
      if (name != "epsilon" && name != "gamma")
        throw ConfigError("model.coupling", "expected epsilon or gamma");
      double value = require_pos(get_num(m, "model", "value", 0.0), "model.value");
      c.coupling = {name, value};
      c.model = name == "epsilon" ? ModelParams::epsilon_coupling(value)
                                  : ModelParams::gamma_coupling(value);
    } else {
      double a = get_num(m, "model", "a", 1.0);
      double b = get_num(m, "model", "b", 1.0);
      require_pos(a, "model.a");
      if (!(b > 0.0) || !std::isfinite(b))
        throw ConfigError("model.b", "must be a positive finite number");
      c.model = ModelParams(a, b);
    }
  }

  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    auto& ctl = c.solver;
    ctl.rtol = require_pos(get_num(s, "solver", "rtol", ctl.rtol), "solver.rtol");
    ctl.atol = require_pos(get_num(s, "solver", "atol", ctl.atol), "solver.atol");
    ctl.ctol = require_pos(get_num(s, "solver", "ctol", ctl.ctol), "solver.ctol");
    ctl.rtol_match = require_pos(
        get_num(s, "solver", "rtol_match", ctl.rtol_match), "solver.rtol_match");
    ctl.floor_scale = require_pos(
        get_num(s, "solver", "floor", ctl.floor_scale), "solver.floor");
    ctl.v_floor =
        require_pos(get_num(s, "solver", "v_floor", ctl.v_floor), "solver.v_floor");
    ctl.min_step = require_pos(get_num(s, "solver", "min_step", ctl.min_step),
                               "solver.min_step");
    ctl.grid_size =
        int(get_num(s, "solver", "grid_size", double(ctl.grid_size)));
    if (ctl.grid_size < 16) throw ConfigError("solver.grid_size", "too small");
    ctl.profile_points =
        int(get_num(s, "solver", "profile_points", double(ctl.profile_points)));
    if (ctl.profile_points < 16)
      throw ConfigError("solver.profile_points", "too small");
    ctl.delta0 =
        require_pos(get_num(s, "solver", "delta0", ctl.delta0), "solver.delta0");
    ctl.delta1 =
        require_pos(get_num(s, "solver", "delta1", ctl.delta1), "solver.delta1");
  }

  if (j.contains("output")) {
    const auto& o = j.at("output");
    if (o.contains("format")) {
      c.output.format = o.at("format").get<std::string>();
      if (c.output.format != "csv" && c.output.format != "json")
        throw ConfigError("output.format", "expected csv or json");
    }
    if (o.contains("path")) c.output.path = o.at("path").get<std::string>();
    c.output.digits = int(get_num(o, "output", "digits", double(c.output.digits)));
    if (c.output.digits < 1 || c.output.digits > 17)
      throw ConfigError("output.digits", "expected 1..17");
  }

  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    if (!s.contains("axis")) throw ConfigError("sweep.axis", "required");
    c.sweep_axis = axis_from_string(s.at("axis").get<std::string>());
    if (*c.sweep_axis == SweepAxis::CustomPairs) {
      if (!s.contains("pairs")) throw ConfigError("sweep.pairs", "required");
      for (const auto& pr : s.at("pairs")) {
        if (!pr.is_array() || pr.size() != 2)
          throw ConfigError("sweep.pairs", "expected [a, b] pairs");
        c.sweep_pairs.emplace_back(pr[0].get<double>(), pr[1].get<double>());
      }
    } else {
      if (!s.contains("values")) throw ConfigError("sweep.values", "required");
      c.sweep_values = s.at("values").get<std::vector<double>>();
      for (double v : c.sweep_values) require_pos(v, "sweep.values");
    }
    if (s.contains("outputs")) {
      c.sweep_outputs = {false, false, false, false};
      for (const auto& name : s.at("outputs")) {
        std::string n = name.get<std::string>();
        if (n == "speeds") c.sweep_outputs.speeds = true;
        else if (n == "bounds") c.sweep_outputs.bounds = true;
        else if (n == "profiles") c.sweep_outputs.profiles = true;
        else if (n == "distances-to-limit") c.sweep_outputs.distances = true;
        else throw ConfigError("sweep.outputs", "unknown output: " + n);
      }
    }
    if (s.contains("expected_order"))
      c.expected_order = s.at("expected_order").get<double>();
    if (s.contains("window")) {
      const auto& w = s.at("window");
      if (!w.is_array() || w.size() != 2)
        throw ConfigError("sweep.window", "expected [z_lo, z_hi]");
      c.window = {w[0].get<double>(), w[1].get<double>()};
    }
  }

  if (j.contains("profile")) {
    const auto& pr = j.at("profile");
    if (pr.contains("v0")) {
      double v0 = pr.at("v0").get<double>();
      if (!(v0 > 0.0 && v0 < 1.0)) throw ConfigError("profile.v0", "must be in (0,1)");
      c.v0 = v0;
    }
    if (pr.contains("c")) {
      double cc = pr.at("c").get<double>();
      if (!(cc >= 0.0)) throw ConfigError("profile.c", "must be >= 0");
      c.wave_speed = cc;
    }
  }

  if (j.contains("limit")) {
    const auto& l = j.at("limit");
    if (!l.contains("regime")) throw ConfigError("limit.regime", "required");
    c.regime = l.at("regime").get<std::string>();
    regime_from_string(*c.regime);  // validate
  }

  if (j.contains("jobs")) {
    c.jobs = j.at("jobs").get<int>();
    if (c.jobs < 1) throw ConfigError("jobs", "must be >= 1");
  }
  return c;
}

json dump_config(const RunConfig& c) {
  json j = json::object();
  if (c.has_reaction) {
    json r;
    bool is_catalog = false;
    for (const char* n :
         {"fisher", "huxley", "nagylaki", "cubic-bistable", "combustion"})
      if (c.reaction.name == n) is_catalog = true;
    if (is_catalog) {
      r["name"] = c.reaction.name;
      // recover the single shape parameter where one exists
      if (c.reaction.name == "combustion") r["alpha"] = c.reaction.pieces[0].hi;
      if (c.reaction.name == "cubic-bistable")
        r["alpha"] = -c.reaction.pieces[0].coef[1];
      if (c.reaction.name == "nagylaki" && c.reaction.pieces[0].coef.size() > 3)
        r["sigma"] = -c.reaction.pieces[0].coef[3];
      if (c.reaction.name == "fisher") r["m"] = c.reaction.pieces[0].coef[1];
    } else if (c.reaction.pieces.size() == 1) {
      r["poly"] = c.reaction.pieces[0].coef;
    } else {
      json breaks = json::array(), pieces = json::array();
      breaks.push_back(0.0);
      for (const auto& p : c.reaction.pieces) {
        breaks.push_back(p.hi);
        pieces.push_back(p.coef);
      }
      r["piecewise"] = {{"breaks", breaks}, {"pieces", pieces}};
    }
    j["reaction"] = std::move(r);
  }
  if (c.coupling) {
    j["model"] = {{"coupling", c.coupling->first}, {"value", c.coupling->second}};
  } else {
    j["model"] = {{"a", c.model.a}, {"b", c.model.b}};
  }
  j["solver"] = {{"rtol", c.solver.rtol},
                 {"atol", c.solver.atol},
                 {"ctol", c.solver.ctol},
                 {"rtol_match", c.solver.rtol_match},
                 {"floor", c.solver.floor_scale},
                 {"v_floor", c.solver.v_floor},
                 {"min_step", c.solver.min_step},
                 {"grid_size", c.solver.grid_size},
                 {"profile_points", c.solver.profile_points},
                 {"delta0", c.solver.delta0},
                 {"delta1", c.solver.delta1}};
  j["output"] = {{"format", c.output.format},
                 {"path", c.output.path},
                 {"digits", c.output.digits}};
  if (c.sweep_axis) {
    json s;
    s["axis"] = axis_to_string(*c.sweep_axis);
    if (*c.sweep_axis == SweepAxis::CustomPairs) {
      json pairs = json::array();
      for (auto& [a, b] : c.sweep_pairs) pairs.push_back({a, b});
      s["pairs"] = std::move(pairs);
    } else {
      s["values"] = c.sweep_values;
    }
    json outs = json::array();
    if (c.sweep_outputs.speeds) outs.push_back("speeds");
    if (c.sweep_outputs.bounds) outs.push_back("bounds");
    if (c.sweep_outputs.profiles) outs.push_back("profiles");
    if (c.sweep_outputs.distances) outs.push_back("distances-to-limit");
    s["outputs"] = std::move(outs);
    if (c.expected_order) s["expected_order"] = *c.expected_order;
    s["window"] = {c.window.first, c.window.second};
    j["sweep"] = std::move(s);
  }
  if (c.v0 || c.wave_speed) {
    json pr = json::object();
    if (c.v0) pr["v0"] = *c.v0;
    if (c.wave_speed) pr["c"] = *c.wave_speed;
    j["profile"] = std::move(pr);
  }
  if (c.regime) j["limit"] = {{"regime", *c.regime}};
  if (c.jobs != 1) j["jobs"] = c.jobs;
  return j;
}

}  // namespace bifront
