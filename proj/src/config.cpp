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

#include "flexarray/config.hpp"

#include <sstream>
#include <stdexcept>

namespace flexarray {

namespace {

[[noreturn]] void config_fail(const std::string& message) {
  throw std::invalid_argument("config: " + message);
}

const Json& object_section(const Json& j, const char* name) {
  const Json& node = j.at(name);
  if (!node.is_object()) config_fail(std::string("'") + name + "' must be an object");
  return node;
}

// Every key the schema understands, by section path. Anything else is
// rejected so typos cannot silently fall back to defaults.
void check_keys(const Json& node, const std::string& path,
                const std::vector<std::string>& allowed) {
  for (const auto& item : node.items()) {
    bool known = false;
    for (const auto& k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known) config_fail("unknown key '" + path + item.key() + "'");
  }
}

void merge_defaults(Json& target, const Json& defaults) {
  if (!target.is_object() || !defaults.is_object()) return;
  for (const auto& item : defaults.items()) {
    if (!target.contains(item.key())) {
      target[item.key()] = item.value();
    } else if (item.value().is_object() && target[item.key()].is_object()) {
      merge_defaults(target[item.key()], item.value());
    }
  }
}

double require_number(const Json& node, const std::string& path, const std::string& key) {
  const auto& v = node.at(key);
  if (!v.is_number()) config_fail("'" + path + key + "' must be a number");
  return v.get<double>();
}

bool require_bool(const Json& node, const std::string& path, const std::string& key) {
  const auto& v = node.at(key);
  if (!v.is_boolean()) config_fail("'" + path + key + "' must be a boolean");
  return v.get<bool>();
}

Eigen::MatrixXcd parse_excitations(const Json& array_node, int rows, int cols) {
  Eigen::MatrixXcd currents = Eigen::MatrixXcd::Ones(rows, cols);
  const bool has_re = !array_node.at("excitations_re").is_null();
  const bool has_im = !array_node.at("excitations_im").is_null();
  if (!has_re && !has_im) return currents;

  auto fill = [&](const Json& mat, bool imaginary) {
    if (!mat.is_array() || static_cast<int>(mat.size()) != rows)
      config_fail("excitations must be a rows x cols matrix");
    for (int i = 0; i < rows; ++i) {
      const auto& row = mat.at(i);
      if (!row.is_array() || static_cast<int>(row.size()) != cols)
        config_fail("excitations must be a rows x cols matrix");
      for (int j = 0; j < cols; ++j) {
        const double v = row.at(j).get<double>();
        if (imaginary)
          currents(i, j) = Complex(currents(i, j).real(), v);
        else
          currents(i, j) = Complex(v, has_im ? currents(i, j).imag() : 0.0);
      }
    }
  };
  if (has_re) {
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) currents(i, j) = Complex(0.0, 0.0);
    fill(array_node.at("excitations_re"), false);
  }
  if (has_im) fill(array_node.at("excitations_im"), true);
  return currents;
}

FoldSpec parse_fold(const Json& node, const std::string& path) {
  check_keys(node, path, {"xi1_deg", "xi2_deg", "pivot_x", "pivot_y", "name"});
  FoldSpec fold;
  fold.xi1 = deg2rad(require_number(node, path, "xi1_deg"));
  fold.xi2 = deg2rad(require_number(node, path, "xi2_deg"));
  if (node.contains("pivot_x")) fold.pivot_x = require_number(node, path, "pivot_x");
  if (node.contains("pivot_y")) fold.pivot_y = require_number(node, path, "pivot_y");
  fold.validate();
  return fold;
}

}  // namespace

std::vector<NamedFold> reference_scenarios() {
  auto fold = [](double x1, double x2) {
    FoldSpec f;
    f.xi1 = deg2rad(x1);
    f.xi2 = deg2rad(x2);
    return f;
  };
  return {
      {"unfolded", fold(0, 0)}, {"x9y45", fold(9, 45)},   {"x9y90", fold(9, 90)},
      {"x45y45", fold(45, 45)}, {"x15y45", fold(15, 45)},
  };
}

Json ExperimentConfig::defaults_json() {
  const ArraySpec array = ArraySpec::with_defaults();
  Json j;
  j["array"] = {
      {"rows", array.rows},
      {"cols", array.cols},
      {"patch_width_m", array.patch_width},
      {"patch_length_m", array.patch_length},
      {"pitch_x_m", array.pitch_x},
      {"pitch_y_m", array.pitch_y},
      {"freq_ghz", array.freq_hz / 1e9},
      {"field_scale_v_per_m", array.field_scale},
      {"reference_radius_m", array.reference_radius},
      {"port_voltage_v", nullptr},  // null: calibrate to a 50 ohm unfolded array
      {"excitations_re", nullptr},
      {"excitations_im", nullptr},
  };
  j["fold"] = {{"xi1_deg", 0.0}, {"xi2_deg", 0.0}, {"pivot_x", 0.5}, {"pivot_y", 0.5}};
  j["pattern"] = {
      {"mode", "physical"},
      {"radius_m", 1000.0},
      {"grid", "cut"},
      {"theta_start_deg", -90.0},
      {"theta_stop_deg", 90.0},
      {"theta_step_deg", 1.0},
      {"phi_cuts_deg", Json::array({0.0, 90.0})},
      {"sphere_theta_step_deg", 2.0},
      {"sphere_phi_step_deg", 2.0},
  };
  j["power"] = {
      {"theta_order", 64},   {"phi_points", 128},    {"paper_approximations", false},
      {"rel_tol", 1e-6},     {"max_doublings", 4},
  };
  j["link"] = {
      {"tx_power_w", 0.01},
      {"tx_gain_db", 12.0},
      {"rx_gain_db", 12.0},
      {"distance_m", 1.0},
      {"z_pa_ohm", 50.0},
      {"z_ant_ohm", nullptr},  // null: follow the configured fold's impedance
      {"noise_rx_in_w", 2.5e-10},
      {"noise_out_w", 6.5e-10},
      {"bandwidth_ghz", 5.0},
      {"strict_paper_friis", false},
  };
  Json folds = Json::array();
  for (const auto& s : reference_scenarios()) {
    folds.push_back({{"name", s.name},
                     {"xi1_deg", rad2deg(s.fold.xi1)},
                     {"xi2_deg", rad2deg(s.fold.xi2)},
                     {"pivot_x", s.fold.pivot_x},
                     {"pivot_y", s.fold.pivot_y}});
  }
  j["impedance"] = {{"folds", folds}, {"x_ant_ohm", 0.0}, {"p_in_over_p_tot", 1.0}};
  j["modem"] = {
      {"n_bits", 1000000},
      {"seed", 12345},
      {"modulations", Json::array({4, 16, 64})},
      {"snr_db_list", Json::array({0.0, 4.0, 8.0, 12.0, 16.0, 20.0})},
  };
  j["sweep"] = {
      {"xi1_start_deg", 0.0}, {"xi1_stop_deg", 0.0},   {"xi1_step_deg", 5.0},
      {"xi2_start_deg", 0.0}, {"xi2_stop_deg", 0.0},   {"xi2_step_deg", 5.0},
      {"pivot_x", 0.5},       {"pivot_y", 0.5},
  };
  j["align"] = {
      {"target_theta_deg", 30.0}, {"target_phi_deg", 0.0},
      {"bound_deg", 120.0},       {"coarse_step_deg", 5.0},
      {"refine_resolution_deg", 0.1},
      {"pivot_x", -0.5},          {"pivot_y", -0.5},
      {"penalize_mismatch", false},
  };
  j["threads"] = 1;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const Json& user) {
  if (!user.is_object()) config_fail("top level must be a JSON object");
  Json j = user;
  merge_defaults(j, defaults_json());

  check_keys(j, "", {"array", "fold", "pattern", "power", "link", "impedance", "modem", "sweep",
                     "align", "threads"});

  ExperimentConfig cfg;

  // array
  {
    const Json& a = object_section(j, "array");
    check_keys(a, "array.",
               {"rows", "cols", "patch_width_m", "patch_length_m", "pitch_x_m", "pitch_y_m",
                "freq_ghz", "field_scale_v_per_m", "reference_radius_m", "port_voltage_v",
                "excitations_re", "excitations_im"});
    ArraySpec& s = cfg.array;
    s.rows = a.at("rows").get<int>();
    s.cols = a.at("cols").get<int>();
    if (s.rows < 1 || s.cols < 1) config_fail("'array.rows'/'array.cols' must be >= 1");
    s.freq_hz = require_number(a, "array.", "freq_ghz") * 1e9;
    s.patch_width = require_number(a, "array.", "patch_width_m");
    s.patch_length = require_number(a, "array.", "patch_length_m");
    s.pitch_x = require_number(a, "array.", "pitch_x_m");
    s.pitch_y = require_number(a, "array.", "pitch_y_m");
    s.field_scale = require_number(a, "array.", "field_scale_v_per_m");
    s.reference_radius = require_number(a, "array.", "reference_radius_m");
    s.excitations = parse_excitations(a, s.rows, s.cols);
    if (a.at("port_voltage_v").is_null())
      s.port_voltage = calibrated_port_voltage(s);
    else
      s.port_voltage = require_number(a, "array.", "port_voltage_v");
    s.validate();
  }

  cfg.fold = parse_fold(object_section(j, "fold"), "fold.");

  // pattern
  {
    const Json& p = object_section(j, "pattern");
    check_keys(p, "pattern.",
               {"mode", "radius_m", "grid", "theta_start_deg", "theta_stop_deg", "theta_step_deg",
                "phi_cuts_deg", "sphere_theta_step_deg", "sphere_phi_step_deg"});
    cfg.pattern.mode = synthesis_mode_from_string(p.at("mode").get<std::string>());
    cfg.pattern.radius = require_number(p, "pattern.", "radius_m");
    cfg.pattern.grid = p.at("grid").get<std::string>();
    if (cfg.pattern.grid != "cut" && cfg.pattern.grid != "sphere")
      config_fail("'pattern.grid' must be 'cut' or 'sphere'");
    cfg.pattern.theta_start = deg2rad(require_number(p, "pattern.", "theta_start_deg"));
    cfg.pattern.theta_stop = deg2rad(require_number(p, "pattern.", "theta_stop_deg"));
    cfg.pattern.theta_step = deg2rad(require_number(p, "pattern.", "theta_step_deg"));
    cfg.pattern.phi_cuts.clear();
    if (!p.at("phi_cuts_deg").is_array()) config_fail("'pattern.phi_cuts_deg' must be an array");
    for (const auto& v : p.at("phi_cuts_deg")) cfg.pattern.phi_cuts.push_back(deg2rad(v.get<double>()));
    if (cfg.pattern.phi_cuts.empty()) config_fail("'pattern.phi_cuts_deg' must be non-empty");
    cfg.pattern.sphere_theta_step = deg2rad(require_number(p, "pattern.", "sphere_theta_step_deg"));
    cfg.pattern.sphere_phi_step = deg2rad(require_number(p, "pattern.", "sphere_phi_step_deg"));
  }

  // power
  {
    const Json& p = object_section(j, "power");
    check_keys(p, "power.",
               {"theta_order", "phi_points", "paper_approximations", "rel_tol", "max_doublings"});
    cfg.power.theta_order = p.at("theta_order").get<int>();
    cfg.power.phi_points = p.at("phi_points").get<int>();
    if (cfg.power.theta_order < 2 || cfg.power.phi_points < 4)
      config_fail("'power.theta_order' must be >= 2 and 'power.phi_points' >= 4");
    cfg.power.paper_approximations = require_bool(p, "power.", "paper_approximations");
    cfg.power.rel_tol = require_number(p, "power.", "rel_tol");
    cfg.power.max_doublings = p.at("max_doublings").get<int>();
  }

  // link
  {
    const Json& l = object_section(j, "link");
    check_keys(l, "link.",
               {"tx_power_w", "tx_gain_db", "rx_gain_db", "distance_m", "z_pa_ohm", "z_ant_ohm",
                "noise_rx_in_w", "noise_out_w", "bandwidth_ghz", "strict_paper_friis"});
    LinkBudget& b = cfg.budget;
    b.tx_power = require_number(l, "link.", "tx_power_w");
    b.tx_gain = power_from_db(require_number(l, "link.", "tx_gain_db"));
    b.rx_gain = power_from_db(require_number(l, "link.", "rx_gain_db"));
    b.distance = require_number(l, "link.", "distance_m");
    b.z_pa = Complex(require_number(l, "link.", "z_pa_ohm"), 0.0);
    if (!l.at("z_ant_ohm").is_null())
      cfg.link_z_ant_override = require_number(l, "link.", "z_ant_ohm");
    b.noise_rx_in = require_number(l, "link.", "noise_rx_in_w");
    b.noise_out = require_number(l, "link.", "noise_out_w");
    b.bandwidth = require_number(l, "link.", "bandwidth_ghz") * 1e9;
    b.strict_paper_friis = require_bool(l, "link.", "strict_paper_friis");
    b.wavelength = cfg.array.wavelength();
    b.validate();
  }

  // impedance
  {
    const Json& node = object_section(j, "impedance");
    check_keys(node, "impedance.", {"folds", "x_ant_ohm", "p_in_over_p_tot"});
    cfg.impedance_x_ant = require_number(node, "impedance.", "x_ant_ohm");
    cfg.impedance_p_in_over_p_tot = require_number(node, "impedance.", "p_in_over_p_tot");
    cfg.impedance_folds.clear();
    if (!node.at("folds").is_array()) config_fail("'impedance.folds' must be an array");
    for (const auto& f : node.at("folds")) {
      NamedFold named;
      named.name = f.contains("name") ? f.at("name").get<std::string>() : "";
      named.fold = parse_fold(f, "impedance.folds[].");
      cfg.impedance_folds.push_back(named);
    }
    if (cfg.impedance_folds.empty()) config_fail("'impedance.folds' must be non-empty");
  }

  // modem
  {
    const Json& m = object_section(j, "modem");
    check_keys(m, "modem.", {"n_bits", "seed", "modulations", "snr_db_list"});
    cfg.modem.n_bits = m.at("n_bits").get<std::uint64_t>();
    cfg.modem.seed = m.at("seed").get<std::uint64_t>();
    cfg.modem.modulations.clear();
    if (!m.at("modulations").is_array()) config_fail("'modem.modulations' must be an array");
    for (const auto& v : m.at("modulations")) {
      const int order = v.get<int>();
      (void)Modulation::qam(order);  // validates
      cfg.modem.modulations.push_back(order);
    }
    if (cfg.modem.modulations.empty()) config_fail("'modem.modulations' must be non-empty");
    cfg.modem.snr_db_list.clear();
    if (!m.at("snr_db_list").is_array()) config_fail("'modem.snr_db_list' must be an array");
    for (const auto& v : m.at("snr_db_list")) cfg.modem.snr_db_list.push_back(v.get<double>());
  }

  // sweep
  {
    const Json& s = object_section(j, "sweep");
    check_keys(s, "sweep.",
               {"xi1_start_deg", "xi1_stop_deg", "xi1_step_deg", "xi2_start_deg", "xi2_stop_deg",
                "xi2_step_deg", "pivot_x", "pivot_y"});
    auto grid = [&](const char* start, const char* stop, const char* step) {
      std::vector<double> g = linspace_grid(require_number(s, "sweep.", start),
                                            require_number(s, "sweep.", stop),
                                            require_number(s, "sweep.", step));
      for (auto& v : g) v = deg2rad(v);
      return g;
    };
    cfg.sweep.xi1_grid = grid("xi1_start_deg", "xi1_stop_deg", "xi1_step_deg");
    cfg.sweep.xi2_grid = grid("xi2_start_deg", "xi2_stop_deg", "xi2_step_deg");
    cfg.sweep.pivot_x = require_number(s, "sweep.", "pivot_x");
    cfg.sweep.pivot_y = require_number(s, "sweep.", "pivot_y");
  }

  // align
  {
    const Json& a = object_section(j, "align");
    check_keys(a, "align.",
               {"target_theta_deg", "target_phi_deg", "bound_deg", "coarse_step_deg",
                "refine_resolution_deg", "pivot_x", "pivot_y", "penalize_mismatch"});
    cfg.align.target_theta = deg2rad(require_number(a, "align.", "target_theta_deg"));
    cfg.align.target_phi = deg2rad(require_number(a, "align.", "target_phi_deg"));
    cfg.align.options.bound = deg2rad(require_number(a, "align.", "bound_deg"));
    cfg.align.options.coarse_step = deg2rad(require_number(a, "align.", "coarse_step_deg"));
    cfg.align.options.refine_resolution =
        deg2rad(require_number(a, "align.", "refine_resolution_deg"));
    cfg.align.options.pivot_x = require_number(a, "align.", "pivot_x");
    cfg.align.options.pivot_y = require_number(a, "align.", "pivot_y");
    cfg.align.options.penalize_mismatch = require_bool(a, "align.", "penalize_mismatch");
    if (cfg.align.options.bound <= 0.0 || cfg.align.options.bound > FoldSpec::max_fold)
      config_fail("'align.bound_deg' must be in (0, 330]");
  }

  cfg.threads = j.at("threads").get<unsigned>();
  if (cfg.threads < 1) config_fail("'threads' must be >= 1");
  cfg.align.options.threads = cfg.threads;
  cfg.align.options.mode = cfg.pattern.mode;
  cfg.align.options.radius = cfg.pattern.radius;

  return cfg;
}

LinkBudget ExperimentConfig::resolved_budget(const std::vector<ElementFrame>& frames) const {
  LinkBudget b = budget;
  if (link_z_ant_override.has_value()) {
    b.z_ant = Complex(*link_z_ant_override, 0.0);
  } else {
    const auto report =
        impedance_report(array, frames, impedance_x_ant, impedance_p_in_over_p_tot);
    b.z_ant = report.z_ant;
  }
  return b;
}

void apply_override(Json& document, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    config_fail("--set expects key.path=value, got '" + assignment + "'");
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);

  Json value;
  try {
    value = Json::parse(raw);
  } catch (const Json::parse_error&) {
    value = raw;  // plain string
  }

  Json* node = &document;
  std::stringstream keys(path);
  std::string key;
  std::vector<std::string> parts;
  while (std::getline(keys, key, '.')) parts.push_back(key);
  if (parts.empty()) config_fail("--set key path is empty");
  for (std::size_t k = 0; k + 1 < parts.size(); ++k) {
    if (!node->is_object()) config_fail("--set path '" + path + "' does not address an object");
    node = &(*node)[parts[k]];
  }
  (*node)[parts.back()] = value;
}

}  // namespace flexarray
