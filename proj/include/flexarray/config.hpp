// SPDX-License-Identifier: Apache-2.0
//
// flexarray - folded flexible patch antenna array and link simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flexarray/align.hpp"

namespace flexarray {

using Json = nlohmann::ordered_json;

struct NamedFold {
  std::string name;
  FoldSpec fold;
};

struct PatternConfig {
  SynthesisMode mode = SynthesisMode::Physical;
  double radius = 1000.0;
  std::string grid = "cut";  // "cut" or "sphere"
  double theta_start = deg2rad(-90.0);
  double theta_stop = deg2rad(90.0);
  double theta_step = deg2rad(1.0);
  std::vector<double> phi_cuts = {0.0, deg2rad(90.0)};
  double sphere_theta_step = deg2rad(2.0);
  double sphere_phi_step = deg2rad(2.0);
};

struct ModemConfig {
  std::uint64_t n_bits = 1000000;
  std::uint64_t seed = 12345;
  std::vector<int> modulations = {4, 16, 64};
  std::vector<double> snr_db_list = {0, 4, 8, 12, 16, 20};
};

struct SweepConfig {
  std::vector<double> xi1_grid = {0.0};  // radians
  std::vector<double> xi2_grid = {0.0};
  double pivot_x = 0.5;
  double pivot_y = 0.5;
};

struct AlignConfig {
  double target_theta = deg2rad(30.0);
  double target_phi = 0.0;
  AlignmentOptions options;
};

/// Fully validated experiment description. Angles live in degrees inside
/// the JSON file and in radians here.
struct ExperimentConfig {
  ArraySpec array;
  FoldSpec fold;
  PatternConfig pattern;
  QuadratureOptions power;
  LinkBudget budget;
  std::optional<double> link_z_ant_override;  // absent: impedance follows the fold
  std::vector<NamedFold> impedance_folds;
  double impedance_x_ant = 0.0;
  double impedance_p_in_over_p_tot = 1.0;
  ModemConfig modem;
  SweepConfig sweep;
  AlignConfig align;
  unsigned threads = 1;

  /// Budget with z_ant resolved: the explicit override when configured,
  /// otherwise the given fold's input impedance.
  LinkBudget resolved_budget(const std::vector<ElementFrame>& frames) const;

  static Json defaults_json();
  /// Parses user JSON merged over the defaults. Unknown keys anywhere are
  /// rejected with the offending path. Throws std::invalid_argument.
  static ExperimentConfig from_json(const Json& user);
  static ExperimentConfig defaults() { return from_json(Json::object()); }
};

/// Applies one "path.to.key=value" override onto a JSON document; the value
/// is parsed as JSON when possible, otherwise taken as a string. The path
/// must already exist (unknown keys are configuration errors).
void apply_override(Json& document, const std::string& assignment);

/// The five reference bend scenarios.
std::vector<NamedFold> reference_scenarios();

}  // namespace flexarray
