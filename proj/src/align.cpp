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

#include "flexarray/align.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace flexarray {

double angular_separation(double theta_a, double phi_a, double theta_b, double phi_b) {
  const Vec3 a(std::sin(theta_a) * std::cos(phi_a), std::sin(theta_a) * std::sin(phi_a),
               std::cos(theta_a));
  const Vec3 b(std::sin(theta_b) * std::cos(phi_b), std::sin(theta_b) * std::sin(phi_b),
               std::cos(theta_b));
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

BeamPeak find_beam_peak(const std::vector<ElementFrame>& frames, const ArraySpec& spec,
                        double radius, SynthesisMode mode, unsigned threads) {
  const auto coarse_theta = linspace_grid(0.0, deg2rad(88.0), deg2rad(2.0));
  const auto coarse_phi = linspace_grid(0.0, deg2rad(356.0), deg2rad(4.0));
  const auto coarse = pattern(frames, spec, coarse_theta, coarse_phi, radius, mode, threads);
  const BeamPeak rough = beam_peak(coarse);

  const double t0 = std::max(0.0, rough.theta - deg2rad(2.5));
  const double t1 = std::min(deg2rad(89.0), rough.theta + deg2rad(2.5));
  const auto fine_theta = linspace_grid(t0, t1, deg2rad(0.25));
  const auto fine_phi =
      linspace_grid(rough.phi - deg2rad(5.0), rough.phi + deg2rad(5.0), deg2rad(0.5));
  const auto fine = pattern(frames, spec, fine_theta, fine_phi, radius, mode, threads);
  BeamPeak peak = beam_peak(fine);
  if (peak.phi < 0.0) peak.phi += 2.0 * constants::pi;
  if (peak.phi >= 2.0 * constants::pi) peak.phi -= 2.0 * constants::pi;
  return peak;
}

namespace {

// Golden-section maximization; f must be unimodal on [lo, hi] for an exact
// answer, deterministic regardless.
double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

struct LinkReport {
  Complex z_ant;
  double snr = 0.0;
  std::vector<double> ber;
};

LinkReport link_chain(const ArraySpec& spec, const std::vector<ElementFrame>& frames,
                      double field_ratio, const LinkBudget& budget,
                      const std::vector<Modulation>& modulations) {
  LinkReport report;
  const double r_rad = radiation_resistance(spec, frames);
  report.z_ant = input_impedance(r_rad, 1.0, 1.0);

  LinkBudget folded = budget;
  folded.tx_gain = budget.tx_gain * field_ratio * field_ratio;
  folded.z_ant = report.z_ant;
  const double p_r = received_power(folded);
  report.snr = snr(p_r, folded.noise_rx_in, folded.noise_out);
  report.ber.reserve(modulations.size());
  for (const auto& m : modulations) report.ber.push_back(ber_from_snr(m, report.snr));
  return report;
}

}  // namespace

AlignmentResult align_beam(const ArraySpec& spec, double target_theta, double target_phi,
                           const AlignmentOptions& options, const LinkBudget& budget,
                           const std::vector<Modulation>& modulations) {
  const auto unfolded = fold_layout(spec, FoldSpec{});
  const double broadside =
      total_field(unfolded, spec, 0.0, 0.0, options.radius, options.mode).magnitude();

  const auto objective = [&](double xi1, double xi2) {
    FoldSpec fold{xi1, xi2, options.pivot_x, options.pivot_y};
    const auto frames = fold_layout(spec, fold);
    double value =
        total_field(frames, spec, target_theta, target_phi, options.radius, options.mode)
            .magnitude();
    if (options.penalize_mismatch) {
      const double r_rad = radiation_resistance(spec, frames);
      value *= mismatch_factor(budget.z_pa, Complex(r_rad, 0.0));
    }
    return value;
  };

  // Exhaustive coarse grid, zero included exactly; ties keep the first
  // (smallest xi1, then xi2) candidate.
  const int half = static_cast<int>(std::floor(options.bound / options.coarse_step));
  double best_value = -1.0;
  double best_xi1 = 0.0, best_xi2 = 0.0;
  for (int k1 = -half; k1 <= half; ++k1) {
    for (int k2 = -half; k2 <= half; ++k2) {
      const double xi1 = k1 * options.coarse_step;
      const double xi2 = k2 * options.coarse_step;
      const double value = objective(xi1, xi2);
      if (value > best_value) {
        best_value = value;
        best_xi1 = xi1;
        best_xi2 = xi2;
      }
    }
  }

  // Coordinate descent, shrinking golden-section line searches per axis.
  double span = options.coarse_step;
  for (int round = 0; round < 6; ++round) {
    best_xi1 = golden_max(
        [&](double x) { return objective(std::clamp(x, -options.bound, options.bound), best_xi2); },
        std::max(best_xi1 - span, -options.bound), std::min(best_xi1 + span, options.bound),
        options.refine_resolution / 4.0);
    best_xi2 = golden_max(
        [&](double x) { return objective(best_xi1, std::clamp(x, -options.bound, options.bound)); },
        std::max(best_xi2 - span, -options.bound), std::min(best_xi2 + span, options.bound),
        options.refine_resolution / 4.0);
    span = std::max(span / 4.0, options.refine_resolution);
  }

  AlignmentResult result;
  result.best_fold = FoldSpec{best_xi1, best_xi2, options.pivot_x, options.pivot_y};
  const auto frames = fold_layout(spec, result.best_fold);
  result.target_magnitude =
      total_field(frames, spec, target_theta, target_phi, options.radius, options.mode)
          .magnitude();
  const BeamPeak peak = find_beam_peak(frames, spec, options.radius, options.mode, options.threads);
  result.peak_theta = peak.theta;
  result.peak_phi = peak.phi;
  result.gain_at_target_db = field_db(result.target_magnitude / broadside);

  double target_theta_n = target_theta, target_phi_n = target_phi;
  if (target_theta_n < 0.0) {
    target_theta_n = -target_theta_n;
    target_phi_n += constants::pi;
  }
  result.reachable =
      angular_separation(peak.theta, peak.phi, target_theta_n, target_phi_n) <= deg2rad(5.0);

  const LinkReport chain =
      link_chain(spec, frames, result.target_magnitude / broadside, budget, modulations);
  result.z_ant = chain.z_ant;
  result.snr_linear = chain.snr;
  result.ber = chain.ber;
  return result;
}

std::vector<SweepRow> sweep(const ArraySpec& spec, const std::vector<double>& xi1_grid,
                            const std::vector<double>& xi2_grid, const LinkBudget& budget,
                            const std::vector<Modulation>& modulations,
                            const SweepOptions& options) {
  if (xi1_grid.empty() || xi2_grid.empty())
    throw std::invalid_argument("sweep: fold grids must be non-empty");

  const auto unfolded = fold_layout(spec, FoldSpec{});
  const double peak_unfolded =
      find_beam_peak(unfolded, spec, options.radius, options.mode, options.threads).magnitude;

  std::vector<SweepRow> rows;
  rows.reserve(xi1_grid.size() * xi2_grid.size());
  for (double xi1 : xi1_grid) {
    for (double xi2 : xi2_grid) {
      FoldSpec fold{xi1, xi2, options.pivot_x, options.pivot_y};
      const auto frames = fold_layout(spec, fold);
      const BeamPeak peak =
          find_beam_peak(frames, spec, options.radius, options.mode, options.threads);

      SweepRow row;
      row.xi1 = xi1;
      row.xi2 = xi2;
      row.e_peak = peak.magnitude;
      row.peak_theta = peak.theta;
      row.peak_phi = peak.phi;

      const LinkReport chain =
          link_chain(spec, frames, peak.magnitude / peak_unfolded, budget, modulations);
      row.r_ant = chain.z_ant.real();
      row.snr_linear = chain.snr;
      row.ber = chain.ber;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace flexarray
