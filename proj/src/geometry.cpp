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

#include "flexarray/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flexarray {

void ArraySpec::validate() const {
  if (rows < 1 || cols < 1) throw std::invalid_argument("array: rows and cols must be >= 1");
  if (patch_width <= 0.0 || patch_length <= 0.0)
    throw std::invalid_argument("array: patch dimensions must be positive");
  if (pitch_x <= 0.0 || pitch_y <= 0.0)
    throw std::invalid_argument("array: element pitch must be positive");
  if (freq_hz <= 0.0) throw std::invalid_argument("array: frequency must be positive");
  if (reference_radius <= 0.0)
    throw std::invalid_argument("array: reference radius must be positive");
  if (excitations.rows() != rows || excitations.cols() != cols)
    throw std::invalid_argument("array: excitation matrix dimensions must equal (rows, cols)");
}

std::pair<double, double> default_patch_dimensions(double freq_hz, double substrate_eps_r,
                                                   double substrate_height) {
  const double c = constants::speed_of_light;
  const double width = c / (2.0 * freq_hz) * std::sqrt(2.0 / (substrate_eps_r + 1.0));
  const double w_over_h = width / substrate_height;
  const double eps_eff = (substrate_eps_r + 1.0) / 2.0 +
                         (substrate_eps_r - 1.0) / 2.0 / std::sqrt(1.0 + 12.0 / w_over_h);
  const double delta_l = 0.412 * substrate_height * (eps_eff + 0.3) * (w_over_h + 0.264) /
                         ((eps_eff - 0.258) * (w_over_h + 0.8));
  const double length = c / (2.0 * freq_hz * std::sqrt(eps_eff)) - 2.0 * delta_l;
  return {width, length};
}

ArraySpec ArraySpec::with_defaults() {
  ArraySpec spec;
  spec.rows = 4;
  spec.cols = 4;
  spec.freq_hz = 100e9;
  const auto [w, l] = default_patch_dimensions(spec.freq_hz);
  spec.patch_width = w;
  spec.patch_length = l;
  spec.pitch_x = spec.wavelength() / 2.0;
  spec.pitch_y = spec.wavelength() / 2.0;
  spec.field_scale = 1.0;
  spec.reference_radius = 1.0;
  // 50 ohm unfolded radiation resistance with uniform unit currents; see
  // power::calibrated_port_voltage.
  spec.port_voltage = constants::pi * spec.field_scale_volts() *
                      std::sqrt(50.0 * 80.0 / (60.0 * constants::free_space_impedance));
  spec.excitations = Eigen::MatrixXcd::Ones(spec.rows, spec.cols);
  return spec;
}

void FoldSpec::validate() const {
  if (std::abs(xi1) > max_fold || std::abs(xi2) > max_fold)
    throw std::invalid_argument("fold: bend angle beyond the +/-330 degree technology bound");
  if (!std::isfinite(xi1) || !std::isfinite(xi2) || !std::isfinite(pivot_x) ||
      !std::isfinite(pivot_y))
    throw std::invalid_argument("fold: non-finite fold parameter");
}

Mat3 rotation_matrix_inv(double alpha_x, double alpha_y, double alpha_z) {
  const double sx = std::sin(alpha_x), cx = std::cos(alpha_x);
  const double sy = std::sin(alpha_y), cy = std::cos(alpha_y);
  const double sz = std::sin(alpha_z), cz = std::cos(alpha_z);
  Mat3 m;
  m << cx * cz - sx * sy * sz, -sx * cy, cx * sz + sx * sy * cz,
       sx * cz + cx * sy * sz,  cx * cy, sx * sz - cx * sy * cz,
       -cy * sz,                sy,      cy * cz;
  return m;
}

Mat3 change_of_basis(double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  Mat3 m;
  // columns: r_hat, theta_hat, phi_hat
  m << st * cp, ct * cp, -sp,
       st * sp, ct * sp,  cp,
       ct,     -st,       0.0;
  return m;
}

std::array<double, 3> rotation_angles(const Mat3& m) {
  const double sy = std::clamp(m(2, 1), -1.0, 1.0);
  const double ay = std::asin(sy);
  if (std::abs(std::cos(ay)) > 1e-9) {
    const double ax = std::atan2(-m(0, 1), m(1, 1));
    const double az = std::atan2(-m(2, 0), m(2, 2));
    return {ax, ay, az};
  }
  // cos(alpha_y) = 0: alpha_x and alpha_z act about the same axis, keep
  // alpha_z = 0 by convention.
  const double ax = std::atan2(sy * m(0, 2), m(0, 0));
  return {ax, ay, 0.0};
}

namespace {

// Bent-axis sample for a flat offset s from the tangent point, with total
// tangent angle t = s / R. x runs along the flat axis, z toward +z.
// Stable for t -> 0 (flat limit: x = s, z = 0).
struct ArcPoint {
  double x;
  double z;
};

ArcPoint arc_point(double s, double t) {
  // R*sin(t) = s*sinc(t);  R*(cos(t)-1) = -(s*t/2)*sinc^2(t/2)
  const double half = sinc(t / 2.0);
  return {s * sinc(t), -0.5 * s * t * half * half};
}

Mat3 rot_x(double a) {
  Mat3 m;
  m << 1, 0, 0,
       0, std::cos(a), -std::sin(a),
       0, std::sin(a),  std::cos(a);
  return m;
}

Mat3 rot_y(double a) {
  Mat3 m;
  m << std::cos(a), 0, std::sin(a),
       0, 1, 0,
       -std::sin(a), 0, std::cos(a);
  return m;
}

}  // namespace

std::vector<ElementFrame> fold_layout(const ArraySpec& spec, const FoldSpec& fold) {
  spec.validate();
  fold.validate();

  const int m = spec.rows;
  const int n = spec.cols;
  const double extent_x = (m - 1) * spec.pitch_x;
  const double extent_y = (n - 1) * spec.pitch_y;

  // Flat grid centered on the origin; tangent points as a fraction of each extent.
  const double pivot_x = -extent_x / 2.0 + fold.pivot_x * extent_x;
  const double pivot_y = -extent_y / 2.0 + fold.pivot_y * extent_y;

  std::vector<ElementFrame> frames(spec.element_count());
  Vec3 centroid = Vec3::Zero();

  for (int i = 0; i < m; ++i) {
    const double x_flat = -extent_x / 2.0 + i * spec.pitch_x;
    const double sx = x_flat - pivot_x;
    const double ti = (m > 1) ? fold.xi1 * (static_cast<double>(i) / (m - 1) - fold.pivot_x) : 0.0;
    const ArcPoint ax = arc_point(sx, ti);
    const double x_arc = pivot_x + ax.x;
    const double z_arc = ax.z;

    for (int j = 0; j < n; ++j) {
      const double y_flat = -extent_y / 2.0 + j * spec.pitch_y;
      const double sy = y_flat - pivot_y;
      const double uj = (n > 1) ? fold.xi2 * (static_cast<double>(j) / (n - 1) - fold.pivot_y) : 0.0;
      const ArcPoint ay = arc_point(sy, uj);

      const Mat3 bend_y = rot_x(-uj);
      Vec3 pos = Vec3(0.0, pivot_y + ay.x, ay.z) + bend_y * Vec3(x_arc, 0.0, z_arc);
      const Mat3 orientation = bend_y * rot_y(ti);

      ElementFrame& f = frames[static_cast<std::size_t>(i) * n + j];
      f.position = pos;
      const auto angles = rotation_angles(orientation);
      f.alpha_x = angles[0];
      f.alpha_y = angles[1];
      f.alpha_z = angles[2];
      f.rotation = rotation_matrix_inv(f.alpha_x, f.alpha_y, f.alpha_z);
      centroid += pos;
    }
  }

  centroid /= static_cast<double>(frames.size());
  for (auto& f : frames) f.position -= centroid;
  return frames;
}

}  // namespace flexarray
