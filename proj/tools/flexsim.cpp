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

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "flexarray/config.hpp"
#include "flexarray/io.hpp"

namespace fx = flexarray;

namespace {

struct CliOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::string mode;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  bool json_errors = false;
};

fx::Json load_user_json(const CliOptions& cli) {
  fx::Json user = fx::Json::object();
  if (!cli.config_path.empty()) {
    std::ifstream in(cli.config_path);
    if (!in) throw std::invalid_argument("config: cannot open '" + cli.config_path + "'");
    try {
      user = fx::Json::parse(in);
    } catch (const fx::Json::parse_error& e) {
      throw std::invalid_argument(std::string("config: ") + e.what());
    }
  }
  for (const auto& assignment : cli.overrides) fx::apply_override(user, assignment);
  if (cli.seed) user["modem"]["seed"] = *cli.seed;
  if (cli.threads) user["threads"] = *cli.threads;
  if (!cli.mode.empty()) user["pattern"]["mode"] = cli.mode;
  return user;
}

std::string out_path(const CliOptions& cli, const std::string& name) {
  std::filesystem::create_directories(cli.out_dir);
  return (std::filesystem::path(cli.out_dir) / name).string();
}

std::vector<fx::Modulation> modulations_of(const fx::ExperimentConfig& cfg) {
  std::vector<fx::Modulation> mods;
  for (int order : cfg.modem.modulations) mods.push_back(fx::Modulation::qam(order));
  return mods;
}

int run_pattern(const CliOptions& cli, const fx::ExperimentConfig& cfg) {
  const auto frames = fx::fold_layout(cfg.array, cfg.fold);
  std::vector<double> theta, phi;
  if (cfg.pattern.grid == "cut") {
    theta = fx::linspace_grid(cfg.pattern.theta_start, cfg.pattern.theta_stop,
                              cfg.pattern.theta_step);
    phi = cfg.pattern.phi_cuts;
    for (std::size_t k = 1; k < phi.size(); ++k)
      if (phi[k] <= phi[k - 1])
        throw std::invalid_argument("config: 'pattern.phi_cuts_deg' must be strictly increasing");
  } else {
    theta = fx::linspace_grid(0.0, fx::constants::pi, cfg.pattern.sphere_theta_step);
    phi = fx::linspace_grid(0.0, 2.0 * fx::constants::pi - cfg.pattern.sphere_phi_step,
                            cfg.pattern.sphere_phi_step);
  }
  const auto pat = fx::pattern(frames, cfg.array, theta, phi, cfg.pattern.radius,
                               cfg.pattern.mode, cfg.threads, cfg.fold);
  fx::write_file(out_path(cli, "pattern.csv"), fx::pattern_to_csv(pat));
  fx::write_file(out_path(cli, "pattern.json"), fx::pattern_to_json(pat).dump(2) + "\n");
  const auto peak = fx::beam_peak(pat);
  std::cout << "pattern: " << pat.theta_grid().size() << "x" << pat.phi_grid().size()
            << " samples, peak |E| = " << fx::format_double(peak.magnitude) << " V/m at ("
            << fx::format_double(fx::rad2deg(peak.theta)) << ", "
            << fx::format_double(fx::rad2deg(peak.phi)) << ") deg\n";
  return 0;
}

int run_impedance(const CliOptions& cli, const fx::ExperimentConfig& cfg) {
  fx::Json out = fx::Json::array();
  for (const auto& named : cfg.impedance_folds) {
    const auto frames = fx::fold_layout(cfg.array, named.fold);
    const auto imp = fx::impedance_report(cfg.array, frames, cfg.impedance_x_ant,
                                          cfg.impedance_p_in_over_p_tot);
    const auto pow = fx::power_report(cfg.array, frames, cfg.power, cfg.threads);
    out.push_back(fx::impedance_to_json(named, imp, pow));
  }
  fx::write_file(out_path(cli, "impedance.json"), out.dump(2) + "\n");
  std::cout << "impedance: " << out.size() << " fold state(s) written\n";
  return 0;
}

int run_link(const CliOptions& cli, const fx::ExperimentConfig& cfg) {
  const auto frames = fx::fold_layout(cfg.array, cfg.fold);
  const auto budget = cfg.resolved_budget(frames);
  const auto mods = modulations_of(cfg);
  fx::write_file(out_path(cli, "link.json"), fx::link_to_json(budget, mods).dump(2) + "\n");
  std::cout << "link: SNR "
            << fx::format_double(fx::power_db(
                   fx::snr(fx::received_power(budget), budget.noise_rx_in, budget.noise_out)))
            << " dB\n";
  return 0;
}

int run_ber(const CliOptions& cli, const fx::ExperimentConfig& cfg) {
  std::vector<fx::BerResult> rows;
  for (int order : cfg.modem.modulations) {
    const auto mod = fx::Modulation::qam(order);
    for (double snr_db : cfg.modem.snr_db_list) {
      rows.push_back(fx::ber_monte_carlo(mod, fx::power_from_db(snr_db), cfg.modem.n_bits,
                                         cfg.modem.seed));
    }
  }
  fx::write_file(out_path(cli, "ber.csv"), fx::ber_table_csv(rows));
  std::cout << "ber: " << rows.size() << " (modulation, SNR) points written\n";
  return 0;
}

int run_align(const CliOptions& cli, const fx::ExperimentConfig& cfg) {
  const auto mods = modulations_of(cfg);
  fx::AlignmentOptions options = cfg.align.options;
  const auto result = fx::align_beam(cfg.array, cfg.align.target_theta, cfg.align.target_phi,
                                     options, cfg.budget, mods);
  fx::write_file(out_path(cli, "align.json"), fx::align_to_json(result, mods).dump(2) + "\n");
  std::cout << "align: fold (" << fx::format_double(fx::rad2deg(result.best_fold.xi1)) << ", "
            << fx::format_double(fx::rad2deg(result.best_fold.xi2)) << ") deg, gain at target "
            << fx::format_double(result.gain_at_target_db) << " dB"
            << (result.reachable ? "" : " [unreachable]") << "\n";
  return 0;
}

int run_sweep(const CliOptions& cli, const fx::ExperimentConfig& cfg) {
  const auto mods = modulations_of(cfg);
  fx::SweepOptions options;
  options.pivot_x = cfg.sweep.pivot_x;
  options.pivot_y = cfg.sweep.pivot_y;
  options.mode = cfg.pattern.mode;
  options.radius = cfg.pattern.radius;
  options.threads = cfg.threads;
  const auto rows =
      fx::sweep(cfg.array, cfg.sweep.xi1_grid, cfg.sweep.xi2_grid, cfg.budget, mods, options);
  fx::write_file(out_path(cli, "sweep.csv"), fx::sweep_to_csv(rows, mods));
  std::cout << "sweep: " << rows.size() << " fold state(s) written\n";
  return 0;
}

// Reference values from full-wave simulation of the five bend scenarios:
// total field magnitude and input resistance pairs, in scenario order
// unfolded, x9y45, x9y90, x45y45, x15y45.
constexpr double kReferenceFieldMag[5] = {51.0, 46.0, 38.0, 30.0, 46.0};
constexpr double kReferenceResistance[5] = {50.0, 67.0, 62.0, 67.0, 72.0};

int run_repro(const CliOptions& cli, const fx::ExperimentConfig& cfg) {
  const auto scenarios = fx::reference_scenarios();
  const auto mods = modulations_of(cfg);

  // Scenario table: peak field and input impedance per fold state.
  const auto unfolded_frames = fx::fold_layout(cfg.array, fx::FoldSpec{});
  const double peak_unfolded =
      fx::find_beam_peak(unfolded_frames, cfg.array, cfg.pattern.radius, cfg.pattern.mode,
                         cfg.threads)
          .magnitude;

  fx::Json scenario_json = fx::Json::array();
  std::string scenario_csv =
      "name,xi1_deg,xi2_deg,e_peak,e_ratio,e_ratio_ref,e_within_20pct,r_ant_ohm,r_ant_ref_ohm,"
      "r_within_20pct\n";
  for (std::size_t k = 0; k < scenarios.size(); ++k) {
    const auto& sc = scenarios[k];
    const auto frames = fx::fold_layout(cfg.array, sc.fold);
    const double peak =
        fx::find_beam_peak(frames, cfg.array, cfg.pattern.radius, cfg.pattern.mode, cfg.threads)
            .magnitude;
    const auto imp = fx::impedance_report(cfg.array, frames, cfg.impedance_x_ant,
                                          cfg.impedance_p_in_over_p_tot);
    const double ratio = peak / peak_unfolded;
    const double ratio_ref = kReferenceFieldMag[k] / kReferenceFieldMag[0];
    const double r_ref = kReferenceResistance[k];
    const bool e_ok = std::abs(ratio - ratio_ref) <= 0.2 * ratio_ref;
    const bool r_ok = std::abs(imp.z_ant.real() - r_ref) <= 0.2 * r_ref;

    fx::Json row;
    row["name"] = sc.name;
    row["xi1_deg"] = fx::rad2deg(sc.fold.xi1);
    row["xi2_deg"] = fx::rad2deg(sc.fold.xi2);
    row["e_peak"] = peak;
    row["e_ratio"] = ratio;
    row["e_ratio_ref"] = ratio_ref;
    row["e_within_20pct"] = e_ok;
    row["r_ant_ohm"] = imp.z_ant.real();
    row["r_ant_ref_ohm"] = r_ref;
    row["r_within_20pct"] = r_ok;
    scenario_json.push_back(row);

    scenario_csv += sc.name + ',' + fx::format_double(fx::rad2deg(sc.fold.xi1)) + ',' +
                    fx::format_double(fx::rad2deg(sc.fold.xi2)) + ',' + fx::format_double(peak) +
                    ',' + fx::format_double(ratio) + ',' + fx::format_double(ratio_ref) + ',' +
                    (e_ok ? "true" : "false") + ',' + fx::format_double(imp.z_ant.real()) + ',' +
                    fx::format_double(r_ref) + ',' + (r_ok ? "true" : "false") + '\n';
  }

  // Beam squint of the x15y45 state across the operating band.
  std::vector<double> freqs;
  for (double f = 97.5e9; f <= 102.5e9 + 1.0; f += 1e9) freqs.push_back(f);
  fx::FoldSpec squint_fold;
  for (const auto& sc : scenarios)
    if (sc.name == "x15y45") squint_fold = sc.fold;
  const auto squint_points =
      fx::beam_squint(cfg.array, squint_fold, freqs, cfg.pattern.mode, cfg.threads);
  const double squint_deg = fx::rad2deg(fx::squint_metric(squint_points));

  fx::Json squint_json;
  squint_json["fold"] = "x15y45";
  squint_json["max_pairwise_separation_deg"] = squint_deg;
  squint_json["threshold_deg"] = 3.0;
  squint_json["within"] = squint_deg <= 3.0;
  fx::Json pts = fx::Json::array();
  std::string squint_csv = "freq_ghz,peak_theta_deg,peak_phi_deg\n";
  for (const auto& p : squint_points) {
    pts.push_back({{"freq_ghz", p.freq_hz / 1e9},
                   {"peak_theta_deg", fx::rad2deg(p.peak_theta)},
                   {"peak_phi_deg", fx::rad2deg(p.peak_phi)}});
    squint_csv += fx::format_double(p.freq_hz / 1e9) + ',' +
                  fx::format_double(fx::rad2deg(p.peak_theta)) + ',' +
                  fx::format_double(fx::rad2deg(p.peak_phi)) + '\n';
  }
  squint_json["points"] = pts;

  // Monte Carlo versus analytic BER table.
  std::vector<fx::BerResult> ber_rows;
  fx::Json ber_json = fx::Json::array();
  for (int order : cfg.modem.modulations) {
    const auto mod = fx::Modulation::qam(order);
    for (double snr_db : cfg.modem.snr_db_list) {
      const auto r =
          fx::ber_monte_carlo(mod, fx::power_from_db(snr_db), cfg.modem.n_bits, cfg.modem.seed);
      ber_rows.push_back(r);
      const double analytic = fx::ber_from_snr(mod, r.snr_linear);
      const double sigma = std::sqrt(std::max(analytic * (1.0 - analytic), 1e-300) /
                                     static_cast<double>(r.bits_sent));
      fx::Json row;
      row["modulation"] = order;
      row["snr_db"] = snr_db;
      row["ber_analytic"] = analytic;
      row["ber_mc"] = r.ber_estimate;
      row["ci95"] = r.ci95_halfwidth;
      row["bits"] = r.bits_sent;
      row["expected_errors"] = analytic * static_cast<double>(r.bits_sent);
      row["within_3sigma"] = std::abs(r.ber_estimate - analytic) <= 3.0 * sigma;
      ber_json.push_back(row);
    }
  }

  fx::Json report;
  report["scenarios"] = scenario_json;
  report["squint"] = squint_json;
  report["ber"] = ber_json;
  report["seed"] = cfg.modem.seed;

  fx::write_file(out_path(cli, "repro_report.json"), report.dump(2) + "\n");
  fx::write_file(out_path(cli, "repro_scenarios.csv"), scenario_csv);
  fx::write_file(out_path(cli, "repro_squint.csv"), squint_csv);
  fx::write_file(out_path(cli, "repro_ber.csv"), fx::ber_table_csv(ber_rows));
  std::cout << "repro: report written to " << out_path(cli, "repro_report.json") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CliOptions cli;
  CLI::App app{"flexarray: folded patch-array radiation, impedance and link simulator"};
  app.require_subcommand(1);

  app.add_option("--config", cli.config_path, "JSON experiment configuration");
  app.add_option("--out", cli.out_dir, "output directory (default: current)");
  app.add_option("--seed", cli.seed, "override modem.seed");
  app.add_option("--mode", cli.mode, "synthesis mode: paper|physical")
      ->check(CLI::IsMember({"paper", "physical"}));
  app.add_option("--threads", cli.threads, "worker thread cap (results unchanged)");
  app.add_flag("--json-errors", cli.json_errors, "machine-readable error diagnostics on stderr");
  app.add_option("--set", cli.overrides, "config override key.path=value (repeatable)")
      ->take_all();

  auto* cmd_pattern = app.add_subcommand("pattern", "radiation pattern CSV/JSON");
  auto* cmd_impedance = app.add_subcommand("impedance", "impedance report for a fold list");
  auto* cmd_link = app.add_subcommand("link", "link budget to SNR/BER JSON");
  auto* cmd_ber = app.add_subcommand("ber", "analytic + Monte Carlo BER CSV");
  auto* cmd_align = app.add_subcommand("align", "beam alignment by fold search");
  auto* cmd_sweep = app.add_subcommand("sweep", "full factorial fold sweep CSV");
  auto* cmd_repro = app.add_subcommand("repro", "reference scenario suite and comparison report");
  for (auto* sub : {cmd_pattern, cmd_impedance, cmd_link, cmd_ber, cmd_align, cmd_sweep, cmd_repro})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    const fx::Json user = load_user_json(cli);
    const auto cfg = fx::ExperimentConfig::from_json(user);
    if (cmd_pattern->parsed()) return run_pattern(cli, cfg);
    if (cmd_impedance->parsed()) return run_impedance(cli, cfg);
    if (cmd_link->parsed()) return run_link(cli, cfg);
    if (cmd_ber->parsed()) return run_ber(cli, cfg);
    if (cmd_align->parsed()) return run_align(cli, cfg);
    if (cmd_sweep->parsed()) return run_sweep(cli, cfg);
    if (cmd_repro->parsed()) return run_repro(cli, cfg);
    return 1;
  } catch (const std::invalid_argument& e) {
    if (cli.json_errors)
      std::cerr << fx::Json{{"error", {{"type", "config"}, {"message", e.what()}, {"exit_code", 1}}}}
                       .dump()
                << "\n";
    else
      std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    if (cli.json_errors)
      std::cerr
          << fx::Json{{"error", {{"type", "numeric"}, {"message", e.what()}, {"exit_code", 2}}}}
                 .dump()
          << "\n";
    else
      std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
