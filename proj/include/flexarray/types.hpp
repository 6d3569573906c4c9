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

#include <Eigen/Dense>

#include "flexarray/common.hpp"

namespace flexarray {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using CVec3 = Eigen::Vector3cd;

/// Physical description of the rectangular patch array.
///
/// field_scale is the single-element broadside field strength (V/m) at
/// reference_radius; the far field scales as field_scale * reference_radius / r.
/// The wavenumber is always derived from freq_hz, never stored.
struct ArraySpec {
  int rows = 4;                   // m
  int cols = 4;                   // n
  double patch_width = 0.0;       // W, meters
  double patch_length = 0.0;      // L, meters
  double pitch_x = 0.0;           // element center spacing along x, meters
  double pitch_y = 0.0;           // element center spacing along y, meters
  double freq_hz = 100e9;         // operating frequency
  double field_scale = 1.0;       // E0 in V/m at reference_radius
  double reference_radius = 1.0;  // meters
  double port_voltage = 1.0;      // V0 at the input port edge, volts
  Eigen::MatrixXcd excitations;   // I_ij, amperes, rows x cols

  double wavelength() const { return constants::speed_of_light / freq_hz; }
  double wavenumber() const { return 2.0 * constants::pi / wavelength(); }

  /// field_scale referred to unit distance; the quantity entering the power
  /// and impedance expressions (volts).
  double field_scale_volts() const { return field_scale * reference_radius; }

  std::size_t element_count() const {
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;

  /// 4x4 half-wavelength array at 100 GHz with patch dimensions from
  /// standard patch synthesis on an eps_r = 3.1 substrate, uniform unit
  /// currents and a port voltage calibrated to a 50 ohm unfolded array.
  static ArraySpec with_defaults();
};

/// Textbook rectangular-patch synthesis: width from the half-wavelength
/// design rule, length from the effective permittivity and fringing-length
/// correction. Returns {width, length} in meters.
std::pair<double, double> default_patch_dimensions(double freq_hz,
                                                   double substrate_eps_r = 3.1,
                                                   double substrate_height = 100e-6);

/// Bend description. xi1/xi2 are the total angles subtended between the
/// first and last element along x and y. Positive angles bow the surface
/// convex toward +z, negative concave.
///
/// pivot_x/pivot_y locate the point (as a fraction of the array extent along
/// that axis) where the bent surface stays tangent to the flat reference
/// plane: 0.5 bends symmetrically about the array center, 0 holds the first
/// element flat, values outside [0,1] model an array occupying a section of
/// a longer folded board. The tangent fraction does not change the bent
/// shape, only its placement, so arc lengths are preserved for any value.
struct FoldSpec {
  double xi1 = 0.0;  // radians, bend along x
  double xi2 = 0.0;  // radians, bend along y
  double pivot_x = 0.5;
  double pivot_y = 0.5;

  static constexpr double max_fold = deg2rad(330.0);  // technology bound

  void validate() const;
};

/// Pose of one element on the bent surface: global position plus the three
/// rotation angles whose rotation_matrix_inv() maps local element
/// coordinates back to global coordinates.
struct ElementFrame {
  Vec3 position = Vec3::Zero();
  double alpha_x = 0.0;
  double alpha_y = 0.0;
  double alpha_z = 0.0;
  Mat3 rotation = Mat3::Identity();  // local -> global, equals rotation_matrix_inv(alphas)
};

}  // namespace flexarray
