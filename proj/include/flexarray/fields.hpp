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

#include <string>
#include <vector>

#include "flexarray/geometry.hpp"

namespace flexarray {

/// How the per-element contributions are combined.
///
/// PaperLiteral sums the element vectors with all angles measured from the
/// common origin and no inter-element phase; it reproduces the printed
/// folded-array field expression term by term. Physical applies the same
/// per-element vectors but weights each one by the exact spherical-wave
/// factor exp(-j*beta*(d_ij - r)) * (r / d_ij) of the displaced element, so
/// path-length phase (and therefore beam steering) is modeled. The leading
/// exp(-j*beta*r) common to every element is dropped; it cancels in every
/// magnitude, power and link quantity.
enum class SynthesisMode { PaperLiteral, Physical };

SynthesisMode synthesis_mode_from_string(const std::string& name);
std::string to_string(SynthesisMode mode);

struct FieldSample {
  double theta = 0.0;   // radians, global frame
  double phi = 0.0;     // radians, global frame
  double radius = 0.0;  // meters
  CVec3 e_field = CVec3::Zero();  // V/m

  double magnitude() const { return e_field.norm(); }
};

/// Bending coefficients of the folded-array field: the vector multiplying
/// E0 * I * sinc(gamma) * cos(rho) for one element, expressed through the
/// rows of the element's inverse total rotation. At identity rotation this
/// reduces to (2*cos(theta), 0, -cos(phi)*sin(theta)).
Vec3 mu_coefficients(double theta, double phi, const Mat3& rotation_inv);

/// Local-frame patch element pattern: returns (E_theta, E_phi) at the
/// reference radius, with
///   E_theta = E0 *  cos(phi)              * sinc(gamma) * cos(rho)
///   E_phi   = E0 * -cos(theta) * sin(phi) * sinc(gamma) * cos(rho)
/// where gamma = beta*W/2 * sin(theta) * sin(phi) and
///       rho   = beta*L/2 * sin(theta) * cos(phi).
std::pair<double, double> element_field_local(double theta, double phi, const ArraySpec& spec);

/// Single-element field in global Cartesian components:
/// rotation_inv * T_CB * (0, E_theta, E_phi)^T with the angles measured
/// from the common origin. A rotation, so the vector norm equals the norm
/// of (0, E_theta, E_phi).
CVec3 element_field_global(const ElementFrame& frame, double theta, double phi,
                           const ArraySpec& spec);

/// Coherent sum of the per-element contributions at radius r in direction
/// (theta, phi). theta may be signed: negative theta means (-theta, phi+pi),
/// the usual pattern-cut convention.
///
/// Throws numeric_error when r is not beyond the bent array's diagonal
/// (far-field violation).
FieldSample total_field(const std::vector<ElementFrame>& frames, const ArraySpec& spec,
                        double theta, double phi, double radius, SynthesisMode mode);

/// Sampled field over a (theta, phi) grid at fixed radius. Grids must be
/// strictly increasing. Stored row-major, theta outer.
class RadiationPattern {
 public:
  RadiationPattern(std::vector<double> theta_grid, std::vector<double> phi_grid, double radius,
                   double freq_hz, FoldSpec fold, SynthesisMode mode);

  const std::vector<double>& theta_grid() const { return theta_; }
  const std::vector<double>& phi_grid() const { return phi_; }
  double radius() const { return radius_; }
  double freq_hz() const { return freq_hz_; }
  const FoldSpec& fold() const { return fold_; }
  SynthesisMode mode() const { return mode_; }

  std::size_t index(std::size_t it, std::size_t ip) const { return it * phi_.size() + ip; }
  const CVec3& field(std::size_t it, std::size_t ip) const { return field_[index(it, ip)]; }
  double magnitude(std::size_t it, std::size_t ip) const { return magnitude_[index(it, ip)]; }

  void set_sample(std::size_t it, std::size_t ip, const CVec3& e);

 private:
  std::vector<double> theta_;
  std::vector<double> phi_;
  double radius_;
  double freq_hz_;
  FoldSpec fold_;
  SynthesisMode mode_;
  std::vector<CVec3> field_;
  std::vector<double> magnitude_;
};

/// Evaluates total_field on every grid node. Deterministic for any thread
/// count. fold is carried as pattern metadata only; the geometry comes from
/// frames.
RadiationPattern pattern(const std::vector<ElementFrame>& frames, const ArraySpec& spec,
                         const std::vector<double>& theta_grid,
                         const std::vector<double>& phi_grid, double radius, SynthesisMode mode,
                         unsigned threads = 1, const FoldSpec& fold = FoldSpec{});

struct BeamPeak {
  double theta = 0.0;
  double phi = 0.0;
  double magnitude = 0.0;
};

/// Grid argmax of |E| refined by per-axis quadratic interpolation. Exact
/// ties resolve toward the smallest theta, then the smallest phi.
BeamPeak beam_peak(const RadiationPattern& pattern);

struct SquintPoint {
  double freq_hz = 0.0;
  double peak_theta = 0.0;
  double peak_phi = 0.0;
};

/// Beam peak direction per frequency over the upper hemisphere
/// (1 degree in theta, 2 degrees in phi).
std::vector<SquintPoint> beam_squint(const ArraySpec& spec, const FoldSpec& fold,
                                     const std::vector<double>& freq_list, SynthesisMode mode,
                                     unsigned threads = 1);

/// Largest pairwise great-circle separation between the peaks, radians.
double squint_metric(const std::vector<SquintPoint>& points);

/// Uniformly spaced grid helper, inclusive of both ends (deg converted by
/// the caller). step must be positive and stop >= start.
std::vector<double> linspace_grid(double start, double stop, double step);

}  // namespace flexarray
