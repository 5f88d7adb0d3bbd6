// SPDX-License-Identifier: Apache-2.0
//
// Command line front end: bounds, speed, profile, limit, sweep, validate.
// Exit codes: 0 ok, 2 config error, 3 solver error, 4 golden-test deviation.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bifront/config.hpp"
#include "bifront/golden.hpp"
#include "bifront/io.hpp"
#include "bifront/validate.hpp"

namespace {

using namespace bifront;

struct GlobalArgs {
  std::string config_path;
  std::string out_path;
  std::string format;
  bool golden_appendix = false;
  bool seedless = false;  // reserved: there is no randomness anywhere
  bool dump = false;
  int jobs = 0;
  // flag overrides
  double a = 0.0, b = 0.0, epsilon = 0.0, gamma = 0.0;
  std::string reaction;
  double alpha = -1.0, sigma = 0.0, m = 0.0;
  double ctol = 0.0, rtol = 0.0, atol = 0.0;
  int digits = 0;
  double v0 = 0.0, c = -1.0;
  std::string regime;
};

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config", std::string("invalid json: ") + e.what());
  }
  return j;
}

// flags > config > defaults
nlohmann::json apply_overrides(nlohmann::json j, const GlobalArgs& g) {
  if (!j.is_object()) j = nlohmann::json::object();
  if (!g.reaction.empty()) {
    j["reaction"] = nlohmann::json::object();
    j["reaction"]["name"] = g.reaction;
  }
  if (g.alpha >= 0.0) j["reaction"]["alpha"] = g.alpha;
  if (g.sigma != 0.0) j["reaction"]["sigma"] = g.sigma;
  if (g.m != 0.0) j["reaction"]["m"] = g.m;
  if (g.epsilon > 0.0)
    j["model"] = {{"coupling", "epsilon"}, {"value", g.epsilon}};
  if (g.gamma > 0.0) j["model"] = {{"coupling", "gamma"}, {"value", g.gamma}};
  if (g.a > 0.0 || g.b > 0.0) {
    if (!j.contains("model") || !j["model"].is_object())
      j["model"] = nlohmann::json::object();
    j["model"].erase("coupling");
    j["model"].erase("value");
    if (g.a > 0.0) j["model"]["a"] = g.a;
    if (g.b > 0.0) j["model"]["b"] = g.b;
  }
  if (g.ctol > 0.0) j["solver"]["ctol"] = g.ctol;
  if (g.rtol > 0.0) j["solver"]["rtol"] = g.rtol;
  if (g.atol > 0.0) j["solver"]["atol"] = g.atol;
  if (!g.format.empty()) j["output"]["format"] = g.format;
  if (!g.out_path.empty()) j["output"]["path"] = g.out_path;
  if (g.digits > 0) j["output"]["digits"] = g.digits;
  if (g.v0 > 0.0) j["profile"]["v0"] = g.v0;
  if (g.c >= 0.0) j["profile"]["c"] = g.c;
  if (!g.regime.empty()) j["limit"]["regime"] = g.regime;
  if (g.jobs > 0) j["jobs"] = g.jobs;
  return j;
}

RunConfig make_config(const GlobalArgs& g) {
  nlohmann::json j = nlohmann::json::object();
  if (!g.config_path.empty()) j = load_json(g.config_path);
  j = apply_overrides(std::move(j), g);
  return parse_config(j);
}

ReactionCalculus calc_of(const RunConfig& cfg) {
  if (!cfg.has_reaction)
    throw ConfigError("reaction", "a reaction block is required");
  return classify(cfg.reaction, cfg.solver.grid_size);
}

// output sink: file or stdout
struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file.open(path);
      if (!file) throw ConfigError("output.path", "cannot open " + path);
      os = &file;
    }
  }
};

void emit(const RunConfig& cfg, const nlohmann::json& as_json,
          const std::function<void(std::ostream&)>& as_csv) {
  Sink sink(cfg.output.path);
  if (cfg.output.format == "json")
    *sink.os << as_json.dump(2) << '\n';
  else
    as_csv(*sink.os);
}

int cmd_bounds(const RunConfig& cfg) {
  ReactionCalculus calc = calc_of(cfg);
  SpeedBounds b = compute_bounds(calc, cfg.model);
  nlohmann::json j = to_json(b, cfg.output.digits);
  emit(cfg, j, [&](std::ostream& os) {
    os << "bound,value\n";
    for (auto& [k, v] : j.items())
      os << k << ',' << (v.is_number() ? fmt_sig(v.get<double>(), cfg.output.digits)
                                       : v.dump())
         << '\n';
  });
  return 0;
}

int cmd_speed_golden(const RunConfig& cfg) {
  auto outcomes = run_golden(cfg.solver);
  int failures = 0;
  std::printf("%-16s %-15s %10s %10s %10s %10s %6s\n", "family", "reaction",
              "a", "b", "computed", "reference", "status");
  for (const auto& o : outcomes) {
    bool ok = o.pass;
    if (!ok) ++failures;
    std::printf("%-16s %-15s %10.4g %10.4g %10.4f %10.3f %6s\n",
                o.cell.family.c_str(), o.cell.reaction.c_str(), o.cell.a,
                o.cell.b, o.computed, o.cell.reference, ok ? "ok" : "DEV");
    if (!o.error.empty()) std::printf("    error: %s\n", o.error.c_str());
  }
  std::printf("%zu cells, %d deviations\n", outcomes.size(), failures);
  (void)cfg;
  return failures == 0 ? 0 : 4;
}

int cmd_speed(const RunConfig& cfg) {
  ReactionCalculus calc = calc_of(cfg);
  SpeedResult r = compute_speed(calc, cfg.model, cfg.solver);
  // presentation rounding: three digits, matching the reference tables
  std::fprintf(stderr, "c* = %.3f  (residual %.2e, %d iterations)\n", r.c_star,
               r.matching_residual, r.iterations);
  emit(cfg, to_json(r, cfg.output.digits),
       [&](std::ostream& os) { write_speed_csv(os, r, cfg.output.digits); });
  return 0;
}

int cmd_profile(const RunConfig& cfg) {
  ReactionCalculus calc = calc_of(cfg);
  double c;
  if (cfg.wave_speed) {
    c = *cfg.wave_speed;
  } else {
    c = compute_speed(calc, cfg.model, cfg.solver).c_star;
  }
  auto red = critical_reduction(calc, cfg.model, c, cfg.solver);
  double v0 = cfg.v0 ? *cfg.v0 : calc.default_normalization();
  FrontProfile prof = reconstruct_profile(red, v0, cfg.solver);
  emit(cfg, to_json(prof, cfg.output.digits), [&](std::ostream& os) {
    write_profile_csv(os, prof, cfg.output.digits);
  });
  return 0;
}

int cmd_limit(const RunConfig& cfg) {
  ReactionCalculus calc = calc_of(cfg);
  if (!cfg.regime) throw ConfigError("limit.regime", "required");
  Regime regime = regime_from_string(*cfg.regime);
  double v0 = cfg.v0 ? *cfg.v0 : calc.default_normalization();
  LimitProfile lp = make_limit_profile(calc, regime, v0, cfg.solver);
  std::fprintf(stderr, "%s\n", lp.describe().c_str());
  emit(cfg, to_json(lp, cfg.output.digits), [&](std::ostream& os) {
    write_limit_csv(os, lp, cfg.window, cfg.solver.profile_points,
                    cfg.output.digits);
  });
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  if (!cfg.sweep_axis) throw ConfigError("sweep", "a sweep block is required");
  SweepPlan plan;
  if (!cfg.has_reaction)
    throw ConfigError("reaction", "a reaction block is required");
  plan.reaction = cfg.reaction;
  plan.axis = *cfg.sweep_axis;
  plan.values = cfg.sweep_values;
  plan.pairs = cfg.sweep_pairs;
  plan.base = cfg.model;
  plan.outputs = cfg.sweep_outputs;
  plan.expected_order = cfg.expected_order;
  plan.window = cfg.window;
  SweepReport report = run_sweep(plan, cfg.solver, cfg.jobs);
  if (report.fitted_order)
    std::fprintf(stderr, "fitted order %.4f (stderr %.4f)\n",
                 report.fitted_order->slope, report.fitted_order->stderr_slope);
  emit(cfg, to_json(report, cfg.output.digits), [&](std::ostream& os) {
    write_sweep_csv(os, report, cfg.output.digits);
  });
  return 0;
}

int cmd_validate(const RunConfig& cfg) {
  auto checks = run_validation(cfg.solver);
  int failures = 0;
  for (const auto& c : checks) {
    if (!c.pass) ++failures;
    std::printf("%-26s %s  %s\n", c.name.c_str(), c.pass ? "pass" : "FAIL",
                c.message.c_str());
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Traveling fronts for reaction-diffusion equations with "
               "Born-Infeld diffusion"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  GlobalArgs g;

  app.add_option("--config", g.config_path, "json run configuration");
  app.add_option("--out", g.out_path, "output path (default stdout)");
  app.add_option("--format", g.format, "csv | json");
  app.add_flag("--seedless", g.seedless,
               "reserved: the solver uses no randomness");
  app.add_flag("--dump-config", g.dump, "echo the normalized config and exit");
  app.add_option("--jobs", g.jobs, "worker threads for sweeps");
  app.add_option("--a", g.a, "model parameter a");
  app.add_option("--b", g.b, "model parameter b");
  app.add_option("--epsilon", g.epsilon, "coupling a = b = 1/eps");
  app.add_option("--gamma", g.gamma, "coupling a = 1/gamma, b = 1");
  app.add_option("--reaction", g.reaction, "catalog reaction name");
  app.add_option("--alpha", g.alpha, "reaction shape parameter alpha");
  app.add_option("--sigma", g.sigma, "reaction shape parameter sigma");
  app.add_option("--m", g.m, "reaction shape parameter m");
  app.add_option("--ctol", g.ctol, "bisection tolerance");
  app.add_option("--rtol", g.rtol, "stepper relative tolerance");
  app.add_option("--atol", g.atol, "stepper absolute tolerance");
  app.add_option("--digits", g.digits, "output significant digits");
  app.add_option("--v0", g.v0, "profile normalization value at z = 0");
  app.add_option("--c", g.c, "profile wave speed override");
  app.add_option("--regime", g.regime, "limit regime name");

  auto* sb = app.add_subcommand("bounds", "analytic speed bounds");
  auto* ss = app.add_subcommand("speed", "critical speed");
  std::string golden;
  ss->add_option("--golden", golden,
                 "run the bundled reference table (value: appendix)");
  auto* sp = app.add_subcommand("profile", "front profile CSV");
  auto* sl = app.add_subcommand("limit", "limit profile CSV");
  auto* sw = app.add_subcommand("sweep", "parameter sweep report");
  auto* sv = app.add_subcommand("validate", "cross-module invariant suite");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = make_config(g);
    if (g.dump) {
      std::cout << dump_config(cfg).dump(2) << '\n';
      return 0;
    }
    if (ss->parsed() && !golden.empty()) {
      if (golden != "appendix")
        throw ConfigError("--golden", "unknown table: " + golden);
      return cmd_speed_golden(cfg);
    }
    if (sb->parsed()) return cmd_bounds(cfg);
    if (ss->parsed()) return cmd_speed(cfg);
    if (sp->parsed()) return cmd_profile(cfg);
    if (sl->parsed()) return cmd_limit(cfg);
    if (sw->parsed()) return cmd_sweep(cfg);
    if (sv->parsed()) return cmd_validate(cfg);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error at %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 3;
  }
  return 0;
}
