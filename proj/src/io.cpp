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

#include "flexarray/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace flexarray {

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string pattern_to_csv(const RadiationPattern& p) {
  std::string out = "theta_deg,phi_deg,e_re_x,e_im_x,e_re_y,e_im_y,e_re_z,e_im_z,e_mag\n";
  for (std::size_t it = 0; it < p.theta_grid().size(); ++it) {
    for (std::size_t ip = 0; ip < p.phi_grid().size(); ++ip) {
      const CVec3& e = p.field(it, ip);
      out += format_double(rad2deg(p.theta_grid()[it]));
      out += ',';
      out += format_double(rad2deg(p.phi_grid()[ip]));
      for (int c = 0; c < 3; ++c) {
        out += ',';
        out += format_double(e(c).real());
        out += ',';
        out += format_double(e(c).imag());
      }
      out += ',';
      out += format_double(p.magnitude(it, ip));
      out += '\n';
    }
  }
  return out;
}

Json pattern_to_json(const RadiationPattern& p) {
  Json j;
  j["freq_ghz"] = p.freq_hz() / 1e9;
  j["radius_m"] = p.radius();
  j["mode"] = to_string(p.mode());
  j["fold"] = {{"xi1_deg", rad2deg(p.fold().xi1)},
               {"xi2_deg", rad2deg(p.fold().xi2)},
               {"pivot_x", p.fold().pivot_x},
               {"pivot_y", p.fold().pivot_y}};
  Json theta = Json::array();
  for (double t : p.theta_grid()) theta.push_back(rad2deg(t));
  Json phi = Json::array();
  for (double f : p.phi_grid()) phi.push_back(rad2deg(f));
  j["theta_deg"] = theta;
  j["phi_deg"] = phi;
  Json samples = Json::array();
  for (std::size_t it = 0; it < p.theta_grid().size(); ++it) {
    for (std::size_t ip = 0; ip < p.phi_grid().size(); ++ip) {
      const CVec3& e = p.field(it, ip);
      samples.push_back(Json::array({e.x().real(), e.x().imag(), e.y().real(), e.y().imag(),
                                     e.z().real(), e.z().imag(), p.magnitude(it, ip)}));
    }
  }
  j["e_samples"] = samples;
  return j;
}

Json impedance_to_json(const NamedFold& fold, const ImpedanceReport& report,
                       const PowerReport& power) {
  Json j;
  j["name"] = fold.name;
  j["xi1_deg"] = rad2deg(fold.fold.xi1);
  j["xi2_deg"] = rad2deg(fold.fold.xi2);
  j["r_rad_ohm"] = report.r_rad;
  j["z_ant_re_ohm"] = report.z_ant.real();
  j["z_ant_im_ohm"] = report.z_ant.imag();
  j["x_ant_ohm"] = report.x_ant;
  j["p_in_w"] = report.p_in;
  j["p_tot_closed_w"] = report.p_tot;
  j["p_quadrature_w"] = power.p_quadrature;
  j["p_closed_w"] = power.p_closed;
  j["quadrature_over_closed"] = power.p_quadrature / power.p_closed;
  j["eta_ohm"] = power.eta;
  Json chi_rows = Json::array();
  for (Eigen::Index i = 0; i < power.chi_per_element.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index jj = 0; jj < power.chi_per_element.cols(); ++jj)
      row.push_back(power.chi_per_element(i, jj));
    chi_rows.push_back(row);
  }
  j["chi_per_element"] = chi_rows;
  return j;
}

Json link_to_json(const LinkBudget& budget, const std::vector<Modulation>& modulations) {
  const double p_r = received_power(budget);
  const double snr_linear = snr(p_r, budget.noise_rx_in, budget.noise_out);
  const double evm = evm_from_snr(snr_linear);
  const double path = std::pow(budget.wavelength / (4.0 * constants::pi * budget.distance), 2);

  Json j;
  j["p_r_w"] = p_r;
  j["p_r_dbm"] = power_db(p_r / 1e-3);
  j["path_loss_db"] = power_db(path);
  j["mismatch_factor"] = mismatch_factor(budget.z_pa, budget.z_ant);
  j["mismatch_db"] = power_db(mismatch_factor(budget.z_pa, budget.z_ant));
  j["snr_linear"] = snr_linear;
  j["snr_db"] = power_db(snr_linear);
  j["evm_rms"] = evm;
  Json ber = Json::object();
  for (const auto& m : modulations)
    ber["qam" + std::to_string(m.order)] = ber_analytic(m, evm);
  j["ber_analytic"] = ber;
  j["z_pa_ohm"] = budget.z_pa.real();
  j["z_ant_re_ohm"] = budget.z_ant.real();
  j["z_ant_im_ohm"] = budget.z_ant.imag();
  return j;
}

std::string ber_table_csv(const std::vector<BerResult>& rows) {
  std::string out = "modulation,snr_db,ber_analytic,ber_mc,ci95,bits,seed\n";
  for (const auto& r : rows) {
    const double analytic = ber_from_snr(r.modulation, r.snr_linear);
    out += std::to_string(r.modulation.order);
    out += ',';
    out += format_double(power_db(r.snr_linear));
    out += ',';
    out += format_double(analytic);
    out += ',';
    out += format_double(r.ber_estimate);
    out += ',';
    out += format_double(r.ci95_halfwidth);
    out += ',';
    out += std::to_string(r.bits_sent);
    out += ',';
    out += std::to_string(r.seed);
    out += '\n';
  }
  return out;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows,
                         const std::vector<Modulation>& modulations) {
  std::string out = "xi1_deg,xi2_deg,e_peak,peak_theta_deg,peak_phi_deg,r_ant_ohm,snr_db";
  for (const auto& m : modulations) out += ",ber_qam" + std::to_string(m.order);
  out += '\n';
  for (const auto& r : rows) {
    out += format_double(rad2deg(r.xi1));
    out += ',';
    out += format_double(rad2deg(r.xi2));
    out += ',';
    out += format_double(r.e_peak);
    out += ',';
    out += format_double(rad2deg(r.peak_theta));
    out += ',';
    out += format_double(rad2deg(r.peak_phi));
    out += ',';
    out += format_double(r.r_ant);
    out += ',';
    out += format_double(power_db(r.snr_linear));
    for (double b : r.ber) {
      out += ',';
      out += format_double(b);
    }
    out += '\n';
  }
  return out;
}

Json align_to_json(const AlignmentResult& result, const std::vector<Modulation>& modulations) {
  Json j;
  j["xi1_deg"] = rad2deg(result.best_fold.xi1);
  j["xi2_deg"] = rad2deg(result.best_fold.xi2);
  j["pivot_x"] = result.best_fold.pivot_x;
  j["pivot_y"] = result.best_fold.pivot_y;
  j["peak_theta_deg"] = rad2deg(result.peak_theta);
  j["peak_phi_deg"] = rad2deg(result.peak_phi);
  j["target_field_magnitude"] = result.target_magnitude;
  j["gain_at_target_db"] = result.gain_at_target_db;
  j["z_ant_re_ohm"] = result.z_ant.real();
  j["z_ant_im_ohm"] = result.z_ant.imag();
  j["snr_linear"] = result.snr_linear;
  j["snr_db"] = power_db(result.snr_linear);
  Json ber = Json::object();
  for (std::size_t k = 0; k < modulations.size() && k < result.ber.size(); ++k)
    ber["qam" + std::to_string(modulations[k].order)] = result.ber[k];
  j["ber_analytic"] = ber;
  j["reachable"] = result.reachable;
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace flexarray
