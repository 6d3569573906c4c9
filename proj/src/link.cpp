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

#include "flexarray/link.hpp"

#include <cmath>
#include <stdexcept>

namespace flexarray {

void LinkBudget::validate() const {
  if (tx_power < 0.0 || noise_rx_in < 0.0 || noise_out < 0.0)
    throw std::invalid_argument("link: powers must be non-negative");
  if (distance <= 0.0) throw std::invalid_argument("link: distance must be positive");
  if (wavelength <= 0.0) throw std::invalid_argument("link: wavelength must be positive");
  if (tx_gain < 0.0 || rx_gain < 0.0)
    throw std::invalid_argument("link: linear gains must be non-negative");
}

int Modulation::bits_per_symbol() const { return static_cast<int>(std::lround(std::log2(order))); }

Modulation Modulation::qam(int order) {
  if (order != 4 && order != 16 && order != 64)
    throw std::invalid_argument("modulation: order must be 4, 16 or 64");
  Modulation m;
  m.order = order;
  m.levels = static_cast<int>(std::lround(std::sqrt(order)));
  return m;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double mismatch_factor(Complex z_pa, Complex z_ant) {
  const double a = std::abs(z_pa);
  const double b = std::abs(z_ant);
  const double sum = a + b;
  if (sum <= 0.0) throw std::invalid_argument("mismatch: degenerate impedance sum");
  const double num = 16.0 * a * a * b * b;
  const double den = sum * sum * sum * sum;
  return num / den;
}

double received_power(const LinkBudget& budget) {
  budget.validate();
  const double spread = budget.strict_paper_friis
                            ? budget.wavelength / std::pow(4.0 * constants::pi * budget.distance, 2)
                            : std::pow(budget.wavelength / (4.0 * constants::pi * budget.distance), 2);
  return budget.tx_power * budget.tx_gain * budget.rx_gain * spread *
         mismatch_factor(budget.z_pa, budget.z_ant);
}

double snr(double p_r, double p_noise_rx_in, double p_noise_out) {
  const double noise = p_noise_rx_in + p_noise_out;
  if (noise <= 0.0) throw std::invalid_argument("snr: total noise power must be positive");
  if (p_r < 0.0) throw std::invalid_argument("snr: received power must be non-negative");
  return p_r / noise;
}

double evm_from_snr(double snr_linear) {
  if (snr_linear <= 0.0) throw std::invalid_argument("evm: SNR must be positive");
  return 1.0 / std::sqrt(snr_linear);
}

double ber_analytic(const Modulation& modulation, double evm) {
  if (evm <= 0.0) throw std::invalid_argument("ber: EVM must be positive");
  const double levels = modulation.levels;
  const double log2l = std::log2(levels);
  const double log2m = std::log2(static_cast<double>(modulation.order));
  const double prefactor = 2.0 * (1.0 - 1.0 / levels) / log2l;
  const double argument =
      std::sqrt(3.0 * log2l / (levels * levels - 1.0) * 2.0 / (evm * evm * log2m));
  return prefactor * q_function(argument);
}

double ber_from_snr(const Modulation& modulation, double snr_linear) {
  return ber_analytic(modulation, evm_from_snr(snr_linear));
}

double thermal_noise_watts(double bandwidth_hz, double noise_figure_db, double gain_db,
                           double temperature_k) {
  return constants::boltzmann * temperature_k * bandwidth_hz * power_from_db(noise_figure_db) *
         power_from_db(gain_db);
}

}  // namespace flexarray
