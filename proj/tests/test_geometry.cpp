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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "flexarray/geometry.hpp"

using namespace flexarray;

namespace {

ArraySpec spec_mn(int rows, int cols) {
  ArraySpec s = ArraySpec::with_defaults();
  s.rows = rows;
  s.cols = cols;
  s.excitations = Eigen::MatrixXcd::Ones(rows, cols);
  return s;
}

// Independent oracle: compose the three axis rotations numerically. The
// production path writes the matrix entries directly, so agreement checks
// the factorization identity.
Mat3 axis_rotation(int axis, double a) {
  Mat3 m = Mat3::Identity();
  const double c = std::cos(a), s = std::sin(a);
  if (axis == 0) m << 1, 0, 0, 0, c, -s, 0, s, c;
  if (axis == 1) m << c, 0, s, 0, 1, 0, -s, 0, c;
  if (axis == 2) m << c, -s, 0, s, c, 0, 0, 0, 1;
  return m;
}

Mat3 rotation_oracle(double ax, double ay, double az) {
  return axis_rotation(2, ax) * axis_rotation(0, ay) * axis_rotation(1, az);
}

}  // namespace

TEST_CASE("rotation_matrix_inv at zero angles is the identity") {
  CHECK((rotation_matrix_inv(0, 0, 0) - Mat3::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("rotation_matrix_inv at (pi/2, 0, 0)") {
  const Mat3 m = rotation_matrix_inv(constants::pi / 2, 0, 0);
  Mat3 expected;
  expected << 0, -1, 0,
              1,  0, 0,
              0,  0, 1;
  CHECK((m - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("rotation_matrix_inv is orthonormal with unit determinant") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> angle(-constants::pi, constants::pi);
  for (int k = 0; k < 1000; ++k) {
    const double ax = angle(rng), ay = angle(rng), az = angle(rng);
    const Mat3 m = rotation_matrix_inv(ax, ay, az);
    CHECK((m * m.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(m.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((m - rotation_oracle(ax, ay, az)).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("rotation_angles inverts rotation_matrix_inv") {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> angle(-2.0, 2.0);
  for (int k = 0; k < 500; ++k) {
    const Mat3 m = rotation_matrix_inv(angle(rng), angle(rng), angle(rng));
    const auto a = rotation_angles(m);
    CHECK((rotation_matrix_inv(a[0], a[1], a[2]) - m).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("change_of_basis at the pole and the equator") {
  const Mat3 pole = change_of_basis(0.0, 0.0);
  CHECK((pole.col(0) - Vec3::UnitZ()).norm() < 1e-15);  // r_hat = +z
  CHECK((pole.col(1) - Vec3::UnitX()).norm() < 1e-15);  // theta_hat = +x
  CHECK((pole.col(2) - Vec3::UnitY()).norm() < 1e-15);  // phi_hat = +y

  const Mat3 equator = change_of_basis(constants::pi / 2, 0.0);
  CHECK((equator.col(0) - Vec3::UnitX()).norm() < 1e-15);
  CHECK((equator.col(1) + Vec3::UnitZ()).norm() < 1e-15);
  CHECK((equator.col(2) - Vec3::UnitY()).norm() < 1e-15);
}

TEST_CASE("change_of_basis is orthonormal with unit determinant") {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> theta(0.0, constants::pi);
  std::uniform_real_distribution<double> phi(0.0, 2 * constants::pi);
  for (int k = 0; k < 1000; ++k) {
    const Mat3 m = change_of_basis(theta(rng), phi(rng));
    CHECK((m * m.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(m.determinant() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("fold_layout with zero fold reproduces the flat grid") {
  const ArraySpec spec = spec_mn(4, 4);
  const auto frames = fold_layout(spec, FoldSpec{});
  REQUIRE(frames.size() == 16);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const auto& f = frames[i * 4 + j];
      CHECK(f.alpha_x == 0.0);
      CHECK(f.alpha_y == 0.0);
      CHECK(f.alpha_z == 0.0);
      const Vec3 flat((i - 1.5) * spec.pitch_x, (j - 1.5) * spec.pitch_y, 0.0);
      CHECK((f.position - flat).norm() <= 1e-12);
    }
  }
}

TEST_CASE("two-element 90 degree fold: tangent frames and chord") {
  // Independent trigonometric oracle: a 90 degree arc over one pitch d has
  // radius R = d / (pi/2); symmetric placement puts the tangent frames at
  // -45 and +45 degrees and the elements 2 R sin(45 deg) apart.
  const double d = 1.5e-3;
  ArraySpec spec = spec_mn(1, 2);
  spec.pitch_x = d;
  spec.pitch_y = d;
  FoldSpec fold;
  fold.xi2 = deg2rad(90.0);

  const auto frames = fold_layout(spec, fold);
  REQUIRE(frames.size() == 2);

  const double a0 = frames[0].alpha_y;
  const double a1 = frames[1].alpha_y;
  CHECK(std::abs(a0) == doctest::Approx(deg2rad(45.0)).epsilon(1e-12));
  CHECK(std::abs(a1) == doctest::Approx(deg2rad(45.0)).epsilon(1e-12));
  CHECK(a0 == doctest::Approx(-a1).epsilon(1e-12));
  CHECK(frames[0].alpha_x == doctest::Approx(0.0));
  CHECK(frames[0].alpha_z == doctest::Approx(0.0));

  // relative rotation between the two tangent frames is 90 degrees
  const Mat3 rel = frames[0].rotation.transpose() * frames[1].rotation;
  const double angle = std::acos(std::clamp((rel.trace() - 1.0) / 2.0, -1.0, 1.0));
  CHECK(angle == doctest::Approx(deg2rad(90.0)).epsilon(1e-12));

  const double radius = d / (constants::pi / 2.0);
  const double chord = 2.0 * radius * std::sin(deg2rad(45.0));
  CHECK((frames[0].position - frames[1].position).norm() ==
        doctest::Approx(chord).epsilon(1e-12));
}

TEST_CASE("45/45 fold: 15 degree monotone per-step increments on both axes") {
  const ArraySpec spec = spec_mn(4, 4);
  FoldSpec fold;
  fold.xi1 = deg2rad(45.0);
  fold.xi2 = deg2rad(45.0);
  const auto frames = fold_layout(spec, fold);

  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i + 1 < 4; ++i) {
      const double step = frames[(i + 1) * 4 + j].alpha_z - frames[i * 4 + j].alpha_z;
      CHECK(step == doctest::Approx(deg2rad(15.0)).epsilon(1e-12));
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j + 1 < 4; ++j) {
      const double step = frames[i * 4 + j + 1].alpha_y - frames[i * 4 + j].alpha_y;
      CHECK(std::abs(step) == doctest::Approx(deg2rad(15.0)).epsilon(1e-12));
      CHECK(step < 0.0);  // monotone along the column
    }
  }
}

TEST_CASE("fold_layout centers the array at the origin") {
  const ArraySpec spec = spec_mn(4, 4);
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> xi(-FoldSpec::max_fold, FoldSpec::max_fold);
  for (int k = 0; k < 50; ++k) {
    FoldSpec fold;
    fold.xi1 = xi(rng);
    fold.xi2 = xi(rng);
    const auto frames = fold_layout(spec, fold);
    Vec3 centroid = Vec3::Zero();
    for (const auto& f : frames) centroid += f.position;
    CHECK(centroid.norm() / frames.size() <= 1e-12);
  }
}

TEST_CASE("fold_layout is odd in the fold angles") {
  const ArraySpec spec = spec_mn(4, 4);
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> xi(-FoldSpec::max_fold, FoldSpec::max_fold);
  for (double pivot : {0.5, 0.0, -0.5}) {
    for (int k = 0; k < 30; ++k) {
      FoldSpec plus;
      plus.xi1 = xi(rng);
      plus.xi2 = xi(rng);
      plus.pivot_x = pivot;
      plus.pivot_y = pivot;
      FoldSpec minus = plus;
      minus.xi1 = -plus.xi1;
      minus.xi2 = -plus.xi2;

      const auto fp = fold_layout(spec, plus);
      const auto fm = fold_layout(spec, minus);
      for (std::size_t e = 0; e < fp.size(); ++e) {
        CHECK(fp[e].position.x() ==
              doctest::Approx(fm[e].position.x()).epsilon(1e-12).scale(1e-3));
        CHECK(fp[e].position.y() ==
              doctest::Approx(fm[e].position.y()).epsilon(1e-12).scale(1e-3));
        CHECK(fp[e].position.z() ==
              doctest::Approx(-fm[e].position.z()).epsilon(1e-12).scale(1e-3));
        CHECK(fp[e].alpha_x == doctest::Approx(-fm[e].alpha_x).scale(1.0));
        CHECK(fp[e].alpha_y == doctest::Approx(-fm[e].alpha_y).scale(1.0));
        CHECK(fp[e].alpha_z == doctest::Approx(-fm[e].alpha_z).scale(1.0));
      }
    }
  }
}

TEST_CASE("consecutive-element spacing along each bend equals the flat pitch") {
  const ArraySpec spec = spec_mn(4, 4);
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> xi(-FoldSpec::max_fold, FoldSpec::max_fold);
  for (int k = 0; k < 100; ++k) {
    FoldSpec fold;
    fold.xi1 = xi(rng);
    fold.xi2 = xi(rng);
    const auto frames = fold_layout(spec, fold);

    // Arc length between neighbors: a chord c subtending a tangent step dt
    // lies on an arc of length c * (dt/2) / sin(dt/2).
    auto arc_between = [&](const ElementFrame& a, const ElementFrame& b) {
      const Mat3 rel = a.rotation.transpose() * b.rotation;
      const double dt = std::acos(std::clamp((rel.trace() - 1.0) / 2.0, -1.0, 1.0));
      const double chord = (a.position - b.position).norm();
      if (dt < 1e-9) return chord;
      return chord * (dt / 2.0) / std::sin(dt / 2.0);
    };

    for (int j = 0; j < 4; ++j)
      for (int i = 0; i + 1 < 4; ++i)
        CHECK(arc_between(frames[i * 4 + j], frames[(i + 1) * 4 + j]) ==
              doctest::Approx(spec.pitch_x).epsilon(1e-9));

    FoldSpec ybend;
    ybend.xi2 = fold.xi2;
    const auto yframes = fold_layout(spec, ybend);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j + 1 < 4; ++j)
        CHECK(arc_between(yframes[i * 4 + j], yframes[i * 4 + j + 1]) ==
              doctest::Approx(spec.pitch_y).epsilon(1e-9));
  }
}

TEST_CASE("fold angles beyond the technology bound are rejected") {
  const ArraySpec spec = spec_mn(4, 4);
  FoldSpec fold;
  fold.xi1 = deg2rad(331.0);
  CHECK_THROWS_AS(fold_layout(spec, fold), std::invalid_argument);
  fold.xi1 = 0.0;
  fold.xi2 = -deg2rad(331.0);
  CHECK_THROWS_AS(fold_layout(spec, fold), std::invalid_argument);
  fold.xi2 = deg2rad(330.0);
  CHECK_NOTHROW(fold_layout(spec, fold));
}

TEST_CASE("array spec invariants are enforced") {
  ArraySpec bad = ArraySpec::with_defaults();
  bad.rows = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ArraySpec::with_defaults();
  bad.patch_width = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ArraySpec::with_defaults();
  bad.excitations = Eigen::MatrixXcd::Ones(3, 4);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("default patch dimensions match the synthesis formulas") {
  // Frozen from a 40-digit evaluation of the same design rules.
  const auto [w, l] = default_patch_dimensions(100e9, 3.1, 100e-6);
  CHECK(w == doctest::Approx(1.04692067555e-3).epsilon(1e-9));
  CHECK(l == doctest::Approx(0.805235323961e-3).epsilon(1e-9));
  CHECK(l < w);
}
