// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "bifront/sweep.hpp"

namespace bifront {

// Fixed float formatting: %.{sig}g with sig significant digits.
// All serialization goes through this so identical runs emit identical bytes.
std::string fmt_sig(double x, int sig = 9);

nlohmann::json to_json(const SpeedBounds& b, int sig = 9);
nlohmann::json to_json(const SpeedResult& r, int sig = 9);
nlohmann::json to_json(const FrontProfile& p, int sig = 9);
nlohmann::json to_json(const LimitProfile& p, int sig = 9);
nlohmann::json to_json(const SweepReport& r, int sig = 9);
nlohmann::json to_json(const RegimeCell& cell);

// CSV writers; '.' decimal separator, ',' delimiter, mandatory header row.
void write_profile_csv(std::ostream& os, const FrontProfile& p, int sig = 9);
void write_reduction_csv(std::ostream& os, const ReductionSolution& r, int sig = 9);
void write_limit_csv(std::ostream& os, const LimitProfile& p,
                     std::pair<double, double> window, int points, int sig = 9);
void write_sweep_csv(std::ostream& os, const SweepReport& r, int sig = 9);
void write_speed_csv(std::ostream& os, const SpeedResult& r, int sig = 9);

}  // namespace bifront
