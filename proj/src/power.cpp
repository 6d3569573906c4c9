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

#include "flexarray/power.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace flexarray {

double chi(double alpha_x, double alpha_y, double alpha_z) {
  const double sx = std::sin(alpha_x), cx = std::cos(alpha_x);
  const double sy = std::sin(alpha_y), cy = std::cos(alpha_y);
  const double sz = std::sin(alpha_z), cz = std::cos(alpha_z);
  const double chi1 = cx * cz - sx * sy * sz;
  const double chi2 = cy * cy * sz * sz;
  const double chi3 = sx * sx * cy * cy;
  const double chi4 = sy * sy;
  const double chi5 = cx * sz + sx * sy * cz;
  return 64.0 * chi1 * chi1 + 24.0 * chi2 + 64.0 * chi3 + 16.0 * chi4 + 32.0 * chi5 * chi5 +
         16.0 * chi1 * cy * cz + 16.0 * chi5 * cy * sz;
}

namespace {

double chi_weighted_sum(const ArraySpec& spec, const std::vector<ElementFrame>& frames) {
  double total = 0.0;
  for (int i = 0; i < spec.rows; ++i)
    for (int j = 0; j < spec.cols; ++j) {
      const ElementFrame& f = frames[static_cast<std::size_t>(i) * spec.cols + j];
      total += std::norm(spec.excitations(i, j)) * chi(f.alpha_x, f.alpha_y, f.alpha_z);
    }
  return total;
}

}  // namespace

double radiated_power_closed(const ArraySpec& spec, const std::vector<ElementFrame>& frames) {
  if (frames.size() != spec.element_count())
    throw std::invalid_argument("power: frame count does not match the array spec");
  const double e0 = spec.field_scale_volts();
  const double pi2 = constants::pi * constants::pi;
  return pi2 * e0 * e0 * chi_weighted_sum(spec, frames) /
         (60.0 * constants::free_space_impedance);
}

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double mid = 0.5 * (b + a);
  const double half = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton iteration on the Legendre polynomial from the Chebyshev estimate.
    double z = std::cos(constants::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * k - 1.0) * z * p2 - (k - 1.0) * p3) / k;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    nodes[i] = mid - half * z;
    nodes[n - 1 - i] = mid + half * z;
    weights[i] = 2.0 * half / ((1.0 - z * z) * pp * pp);
    weights[n - 1 - i] = weights[i];
  }
}

namespace {

double quadrature_pass(const ArraySpec& spec, const std::vector<ElementFrame>& frames,
                       int theta_order, int phi_points, bool approximations, unsigned threads) {
  std::vector<double> th_nodes, th_weights;
  gauss_legendre(theta_order, 0.0, constants::pi, th_nodes, th_weights);

  const double beta = spec.wavenumber();
  const double half_w = beta * spec.patch_width / 2.0;
  const double half_l = beta * spec.patch_length / 2.0;

  std::vector<double> row_sums(th_nodes.size(), 0.0);
  parallel_for(th_nodes.size(), threads, [&](std::size_t it) {
    const double theta = th_nodes[it];
    const double st = std::sin(theta), ct = std::cos(theta);
    double acc = 0.0;
    for (int ip = 0; ip < phi_points; ++ip) {
      const double phi = 2.0 * constants::pi * ip / phi_points;
      const double sp = std::sin(phi), cp = std::cos(phi);
      double taper2 = 1.0;
      if (!approximations) {
        const double t = sinc(half_w * st * sp) * std::cos(half_l * st * cp);
        taper2 = t * t;
      }
      double cell = 0.0;
      for (int i = 0; i < spec.rows; ++i)
        for (int j = 0; j < spec.cols; ++j) {
          const ElementFrame& f = frames[static_cast<std::size_t>(i) * spec.cols + j];
          const Vec3 mu = mu_coefficients(theta, phi, f.rotation);
          const double k1 = ct * cp * mu.x() + ct * sp * mu.y() - st * mu.z();
          const double k2 = -sp * mu.x() + cp * mu.y();
          cell += std::norm(spec.excitations(i, j)) * (k1 * k1 + k2 * k2);
        }
      acc += cell * taper2;
    }
    row_sums[it] = acc * st * th_weights[it] * (2.0 * constants::pi / phi_points);
  });

  const double integral = std::accumulate(row_sums.begin(), row_sums.end(), 0.0);
  const double e0 = spec.field_scale_volts();
  return e0 * e0 / (2.0 * constants::free_space_impedance) * integral;
}

}  // namespace

double radiated_power_quadrature(const ArraySpec& spec, const std::vector<ElementFrame>& frames,
                                 const QuadratureOptions& options, unsigned threads) {
  if (frames.size() != spec.element_count())
    throw std::invalid_argument("power: frame count does not match the array spec");

  int order = options.theta_order;
  int phi_points = options.phi_points;
  double coarse = quadrature_pass(spec, frames, order, phi_points,
                                  options.paper_approximations, threads);
  for (int pass = 0; pass < options.max_doublings; ++pass) {
    order *= 2;
    phi_points *= 2;
    const double fine = quadrature_pass(spec, frames, order, phi_points,
                                        options.paper_approximations, threads);
    const double scale = std::max(std::abs(fine), 1e-300);
    if (std::abs(fine - coarse) / scale < options.rel_tol) return fine;
    coarse = fine;
  }
  throw numeric_error("radiated power quadrature did not converge: last order " +
                      std::to_string(order) + " x " + std::to_string(phi_points) +
                      ", relative change still above " + std::to_string(options.rel_tol));
}

double radiation_resistance(const ArraySpec& spec, const std::vector<ElementFrame>& frames) {
  if (frames.size() != spec.element_count())
    throw std::invalid_argument("power: frame count does not match the array spec");
  const double weighted = chi_weighted_sum(spec, frames);
  if (weighted <= 0.0)
    throw std::invalid_argument("invalid excitation: radiation resistance requires a nonzero "
                                "excitation current");
  const double e0 = spec.field_scale_volts();
  const double pi2 = constants::pi * constants::pi;
  return 60.0 * spec.rows * spec.cols * spec.port_voltage * spec.port_voltage *
         constants::free_space_impedance / (pi2 * e0 * e0 * weighted);
}

Complex input_impedance(double r_rad, double p_in, double p_tot, double x_ant) {
  if (p_tot <= 0.0)
    throw std::invalid_argument("input impedance: total radiated power must be positive");
  return {r_rad * p_in / p_tot, x_ant};
}

double calibrated_port_voltage(const ArraySpec& spec, double target_resistance) {
  const double chi0 = chi(0.0, 0.0, 0.0);  // 80
  return constants::pi * spec.field_scale_volts() *
         std::sqrt(target_resistance * chi0 / (60.0 * constants::free_space_impedance));
}

PowerReport power_report(const ArraySpec& spec, const std::vector<ElementFrame>& frames,
                         const QuadratureOptions& options, unsigned threads) {
  PowerReport report;
  report.p_closed = radiated_power_closed(spec, frames);
  report.p_quadrature = radiated_power_quadrature(spec, frames, options, threads);
  report.chi_per_element.resize(spec.rows, spec.cols);
  for (int i = 0; i < spec.rows; ++i)
    for (int j = 0; j < spec.cols; ++j) {
      const ElementFrame& f = frames[static_cast<std::size_t>(i) * spec.cols + j];
      report.chi_per_element(i, j) = chi(f.alpha_x, f.alpha_y, f.alpha_z);
    }
  return report;
}

ImpedanceReport impedance_report(const ArraySpec& spec, const std::vector<ElementFrame>& frames,
                                 double x_ant, double p_in_over_p_tot) {
  ImpedanceReport report;
  report.r_rad = radiation_resistance(spec, frames);
  report.p_tot = radiated_power_closed(spec, frames);
  report.p_in = p_in_over_p_tot * report.p_tot;
  report.x_ant = x_ant;
  report.z_ant = input_impedance(report.r_rad, report.p_in, report.p_tot, x_ant);
  return report;
}

}  // namespace flexarray
