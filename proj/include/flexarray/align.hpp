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

#include "flexarray/link.hpp"
#include "flexarray/power.hpp"

namespace flexarray {

/// Great-circle separation between two directions, radians.
double angular_separation(double theta_a, double phi_a, double theta_b, double phi_b);

/// Two-stage hemisphere search for the largest |E|: a coarse grid over
/// theta in [0, 89] deg x phi in [0, 358) deg followed by a fine local grid
/// and quadratic interpolation.
BeamPeak find_beam_peak(const std::vector<ElementFrame>& frames, const ArraySpec& spec,
                        double radius, SynthesisMode mode, unsigned threads = 1);

struct AlignmentOptions {
  double bound = deg2rad(120.0);             // search box |xi| <= bound
  double coarse_step = deg2rad(5.0);         // grid-search resolution
  double refine_resolution = deg2rad(0.1);   // coordinate-descent resolution
  // Steering mount: the board's flat tangent point sits half an array
  // extent inboard of the first element, so curvature tilts the whole
  // aperture. The symmetric placement (0.5) cannot tilt the beam.
  double pivot_x = -0.5;
  double pivot_y = -0.5;
  SynthesisMode mode = SynthesisMode::Physical;
  double radius = 1000.0;                    // evaluation radius, meters
  bool penalize_mismatch = false;            // multiply objective by the mismatch factor
  unsigned threads = 1;
};

struct AlignmentResult {
  FoldSpec best_fold;
  double peak_theta = 0.0;          // beam peak of the aligned pattern
  double peak_phi = 0.0;
  double target_magnitude = 0.0;    // |E| toward the target at the optimum
  double gain_at_target_db = 0.0;   // relative to the unfolded broadside peak
  Complex z_ant = {0.0, 0.0};
  double snr_linear = 0.0;
  std::vector<double> ber;          // analytic, one entry per requested modulation
  /// False when the best achievable beam peak is more than 5 degrees away
  /// from the target; the result still carries the best effort.
  bool reachable = true;
};

/// Points the beam at (target_theta, target_phi) by searching fold space:
/// full coarse grid over (xi1, xi2), then coordinate descent with
/// golden-section line searches. The objective is |E| toward the target
/// (times the mismatch factor when penalize_mismatch is set). Deterministic.
AlignmentResult align_beam(const ArraySpec& spec, double target_theta, double target_phi,
                           const AlignmentOptions& options, const LinkBudget& budget,
                           const std::vector<Modulation>& modulations = {
                               Modulation::qam(4), Modulation::qam(16), Modulation::qam(64)});

struct SweepRow {
  double xi1 = 0.0;
  double xi2 = 0.0;
  double e_peak = 0.0;
  double peak_theta = 0.0;
  double peak_phi = 0.0;
  double r_ant = 0.0;
  double snr_linear = 0.0;
  std::vector<double> ber;  // analytic, per requested modulation
};

struct SweepOptions {
  double pivot_x = 0.5;
  double pivot_y = 0.5;
  SynthesisMode mode = SynthesisMode::Physical;
  double radius = 1000.0;
  unsigned threads = 1;
};

/// Full factorial fold sweep; rows ordered xi1 outer, xi2 inner. The SNR
/// column rescales the budget's transmit gain by the folded-to-unfolded
/// peak field ratio squared and applies the fold's input impedance to the
/// mismatch factor.
std::vector<SweepRow> sweep(const ArraySpec& spec, const std::vector<double>& xi1_grid,
                            const std::vector<double>& xi2_grid, const LinkBudget& budget,
                            const std::vector<Modulation>& modulations,
                            const SweepOptions& options = {});

}  // namespace flexarray
