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

#include "flexarray/common.hpp"

namespace flexarray {

/// Analytic link chain inputs. Gains are linear, powers in watts.
struct LinkBudget {
  double tx_power = 0.01;                // P_t,max
  double tx_gain = 15.849;               // folded transmit array gain (12 dB)
  double rx_gain = 15.849;               // unfolded receive gain (12 dB)
  double wavelength = 0.00299792458;     // meters (100 GHz)
  double distance = 1.0;                 // meters
  Complex z_pa = {50.0, 0.0};            // power amplifier impedance
  Complex z_ant = {50.0, 0.0};           // antenna input impedance
  double noise_rx_in = 2.5e-10;          // received transmitter noise power
  double noise_out = 6.5e-10;            // output noise power
  double bandwidth = 5e9;                // hertz, informational
  // Reproduces the printed link expression with the wavelength unsquared,
  // lambda / (4 pi d)^2. Dimensionally inconsistent; kept for documentation
  // runs only.
  bool strict_paper_friis = false;

  void validate() const;
};

/// Square-QAM modulation descriptor, order = levels^2, order in {4, 16, 64}.
struct Modulation {
  int order = 4;   // M
  int levels = 2;  // L per dimension

  int bits_per_symbol() const;
  static Modulation qam(int order);
};

/// Gaussian tail probability Q(x) = erfc(x / sqrt(2)) / 2.
double q_function(double x);

/// Impedance mismatch transmission factor,
///   16 |Z_pa|^2 |Z_ant|^2 / (|Z_pa| + |Z_ant|)^4,
/// in [0, 1], equal to 1 only for |Z_pa| = |Z_ant|. Magnitudes are used for
/// complex impedances. Throws std::invalid_argument when both magnitudes
/// vanish.
double mismatch_factor(Complex z_pa, Complex z_ant);

/// Free-space received power with the mismatch factor applied:
///   P_r = P_t * G_t * G_r * (lambda / (4 pi d))^2 * mismatch.
double received_power(const LinkBudget& budget);

/// SNR_rec = P_r / (P_noise_rx_in + P_noise_out).
double snr(double p_r, double p_noise_rx_in, double p_noise_out);

/// RMS error vector magnitude, 1 / sqrt(SNR). Valid for long symbol streams.
double evm_from_snr(double snr_linear);

/// Analytic square-QAM bit error probability,
///   P_b = (2 (1 - 1/L) / log2 L) *
///         Q( sqrt( 3 log2(L) / (L^2 - 1) * 2 / (EVM^2 log2 M) ) ).
double ber_analytic(const Modulation& modulation, double evm);

/// Convenience: SNR -> EVM -> analytic BER.
double ber_from_snr(const Modulation& modulation, double snr_linear);

/// Thermal output-noise helper, k * T * B * NF * G (not part of the link
/// equations; a documented default source for the noise power inputs).
double thermal_noise_watts(double bandwidth_hz, double noise_figure_db, double gain_db,
                           double temperature_k = 290.0);

}  // namespace flexarray
