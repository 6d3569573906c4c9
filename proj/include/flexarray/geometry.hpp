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

#include "flexarray/types.hpp"

namespace flexarray {

/// Inverse of the total element rotation, written out entry by entry:
///
///   [ cx*cz - sx*sy*sz   -sx*cy   cx*sz + sx*sy*cz ]
///   [ sx*cz + cx*sy*sz    cx*cy   sx*sz - cx*sy*cz ]
///   [       -cy*sz          sy          cy*cz      ]
///
/// with sw = sin(alpha_w), cw = cos(alpha_w). Equals Rz(ax)*Rx(ay)*Ry(az)
/// and maps local element coordinates to global coordinates.
Mat3 rotation_matrix_inv(double alpha_x, double alpha_y, double alpha_z);

/// Spherical-to-Cartesian basis change at (theta, phi): columns are the
/// Cartesian components of the unit vectors (r_hat, theta_hat, phi_hat).
Mat3 change_of_basis(double theta, double phi);

/// Recovers (alpha_x, alpha_y, alpha_z) such that
/// rotation_matrix_inv(ax, ay, az) reproduces the given rotation matrix.
/// Returns one valid triple; near the |cos(alpha_y)| = 0 degeneracy the
/// convention alpha_z = 0 is used.
std::array<double, 3> rotation_angles(const Mat3& local_to_global);

/// Places every element of the array on the bent surface.
///
/// Each axis bends into a circular arc of uniform curvature; arc length
/// along the surface equals the flat pitch, so the substrate is
/// inextensible. The x-direction arc is applied first, then each column is
/// carried onto the y-direction arc (composition order fixed; see
/// kFoldCompositionOrder). Element orientations follow the local surface
/// tangent. The array centroid is returned to the global origin.
///
/// Result is row-major: frame of element (i, j) at index i*cols + j.
/// Throws std::invalid_argument when the fold exceeds the technology bound.
std::vector<ElementFrame> fold_layout(const ArraySpec& spec, const FoldSpec& fold);

/// Fixed composition order used by fold_layout.
inline constexpr const char* kFoldCompositionOrder = "x-arc then y-arc";

}  // namespace flexarray
