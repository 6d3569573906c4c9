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

#include <vector>

#include "flexarray/fields.hpp"

namespace flexarray {

/// Bend parameter of the closed-form radiated power:
///   chi = 64*chi1^2 + 24*chi2 + 64*chi3 + 16*chi4 + 32*chi5^2
///       + 16*chi1*cy*cz + 16*chi5*cy*sz
/// with chi1 = cx*cz - sx*sy*sz, chi2 = cy^2*sz^2, chi3 = sx^2*cy^2,
/// chi4 = sy^2, chi5 = cx*sz + sx*sy*cz. chi(0,0,0) = 80.
double chi(double alpha_x, double alpha_y, double alpha_z);

/// Closed-form total radiated power,
///   P = sum_ij pi^2 * E0^2 * |I_ij|^2 * chi(alpha_ij) / (60 * eta),
/// with E0 the field scale referred to unit distance (volts).
double radiated_power_closed(const ArraySpec& spec, const std::vector<ElementFrame>& frames);

struct QuadratureOptions {
  int theta_order = 64;     // Gauss-Legendre order in theta
  int phi_points = 128;     // uniform points in phi
  bool paper_approximations = false;  // replace sinc(gamma)*cos(rho) by 1
  double rel_tol = 1e-6;    // convergence threshold between doublings
  int max_doublings = 4;
};

/// Full-sphere quadrature of the radiated power flux,
///   P = (E0^2 / 2 eta) * integral sum_ij |I_ij|^2 sinc^2(gamma) cos^2(rho)
///       * (kappa1^2 + kappa2^2) sin(theta) dtheta dphi,
/// where kappa1/kappa2 are the transverse projections of the element's mu
/// vector. Gauss-Legendre in theta, uniform in phi, with resolution doubling
/// until the relative change falls below rel_tol.
///
/// Throws numeric_error when the doubling sequence does not converge.
double radiated_power_quadrature(const ArraySpec& spec, const std::vector<ElementFrame>& frames,
                                 const QuadratureOptions& options = {}, unsigned threads = 1);

/// Radiation resistance,
///   R_rad = 60 * m * n * V0^2 * eta / (sum_ij |I_ij|^2 pi^2 E0^2 chi_ij).
/// Throws std::invalid_argument when every excitation is zero.
double radiation_resistance(const ArraySpec& spec, const std::vector<ElementFrame>& frames);

/// Z_ant = R_rad * P_in / P_tot + j*X_ant. Throws std::invalid_argument for
/// p_tot <= 0.
Complex input_impedance(double r_rad, double p_in, double p_tot, double x_ant = 0.0);

/// Port voltage that makes the unfolded array with uniform unit currents
/// present target_resistance. Independent of the array size:
///   V0 = pi * E0 * sqrt(target * chi(0,0,0) / (60 * eta)).
double calibrated_port_voltage(const ArraySpec& spec, double target_resistance = 50.0);

struct PowerReport {
  double p_quadrature = 0.0;  // watts
  double p_closed = 0.0;      // watts
  Eigen::MatrixXd chi_per_element;
  double eta = constants::free_space_impedance;
};

PowerReport power_report(const ArraySpec& spec, const std::vector<ElementFrame>& frames,
                         const QuadratureOptions& options = {}, unsigned threads = 1);

struct ImpedanceReport {
  double r_rad = 0.0;        // ohms
  Complex z_ant = {0.0, 0.0};
  double x_ant = 0.0;        // ohms
  double p_in = 0.0;         // watts
  double p_tot = 0.0;        // watts, closed form
};

/// Radiation resistance and input impedance for one fold state.
/// p_in = p_in_over_p_tot * p_tot with p_tot from the closed form.
ImpedanceReport impedance_report(const ArraySpec& spec, const std::vector<ElementFrame>& frames,
                                 double x_ant = 0.0, double p_in_over_p_tot = 1.0);

/// Nodes and weights of the n-point Gauss-Legendre rule on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace flexarray
