// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace bifront {

// Argument outside the admissible domain (v outside [0,1], y < 0, ...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The sampled sign pattern of f matches none of the monostable /
// combustion / bistable classes.
struct NotClassifiable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Endpoint zeros or the linear controls |f| <= k*s, |f| <= k*(1-s) fail.
struct HypothesisHViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Adaptive stepper underflowed its minimum step; last_v is the last
// abscissa reached.
struct StiffnessFailure : std::runtime_error {
  double last_v;
  StiffnessFailure(const std::string& msg, double v)
      : std::runtime_error(msg), last_v(v) {}
};

// The shooting predicate did not change sign after the allowed number of
// geometric bracket expansions.
struct BracketFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Profile reconstruction was asked for a reduction solution that died at
// an interior point.
struct NotAdmissible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Order fitting needs at least 3 rows spanning two decades.
struct InsufficientData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested window is not covered by both profiles.
struct DomainMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The asymptotic regime is one of the open cases; no limit object is
// predicted.
struct NoPrediction : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Config validation failure; `path` is the offending field.
struct ConfigError : std::runtime_error {
  std::string path;
  ConfigError(const std::string& field_path, const std::string& msg)
      : std::runtime_error(field_path + ": " + msg), path(field_path) {}
};

}  // namespace bifront
