// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "bifront/sweep.hpp"

namespace bifront {

struct OutputOptions {
  std::string format = "csv";  // "csv" | "json"
  std::string path;            // empty: stdout
  int digits = 9;              // significant digits in emitted files
};

// Parsed and validated run configuration.  Field precedence is
// flags > config > defaults; the CLI applies flag overrides onto the
// parsed json before validation.
struct RunConfig {
  ReactionSpec reaction;
  bool has_reaction = false;
  ModelParams model{1.0, 1.0};
  std::optional<std::pair<std::string, double>> coupling;  // ("epsilon"|"gamma", value)
  SolverControls solver;
  OutputOptions output;
  // sweep block
  std::optional<SweepAxis> sweep_axis;
  std::vector<double> sweep_values;
  std::vector<std::pair<double, double>> sweep_pairs;
  SweepOutputs sweep_outputs;
  std::optional<double> expected_order;
  std::pair<double, double> window{-1.0, 4.0};
  // profile block
  std::optional<double> v0;
  std::optional<double> wave_speed;  // profile at a prescribed admissible c
  // limit block
  std::optional<std::string> regime;
  int jobs = 1;
};

// Throws ConfigError with a field path on any invalid entry.
RunConfig parse_config(const nlohmann::json& j);
// Normalized echo; parse_config(dump_config(c)) reproduces an identical run.
nlohmann::json dump_config(const RunConfig& c);

Regime regime_from_string(const std::string& s);  // ConfigError on unknown

}  // namespace bifront
