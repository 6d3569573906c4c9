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

#include "flexarray/fields.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flexarray {

SynthesisMode synthesis_mode_from_string(const std::string& name) {
  if (name == "paper") return SynthesisMode::PaperLiteral;
  if (name == "physical") return SynthesisMode::Physical;
  throw std::invalid_argument("synthesis mode must be 'paper' or 'physical', got '" + name + "'");
}

std::string to_string(SynthesisMode mode) {
  return mode == SynthesisMode::PaperLiteral ? "paper" : "physical";
}

Vec3 mu_coefficients(double theta, double phi, const Mat3& r) {
  const double a = 2.0 * std::cos(theta);
  const double b = std::cos(phi) * std::sin(theta);
  return Vec3(a * r(0, 0) - b * r(2, 0),
              a * r(0, 1) - b * r(2, 1),
              a * r(0, 2) - b * r(2, 2));
}

namespace {

// sinc(gamma) * cos(rho) taper common to every element at common-origin angles.
double element_taper(double theta, double phi, const ArraySpec& spec) {
  const double beta = spec.wavenumber();
  const double gamma = beta * spec.patch_width / 2.0 * std::sin(theta) * std::sin(phi);
  const double rho = beta * spec.patch_length / 2.0 * std::sin(theta) * std::cos(phi);
  return sinc(gamma) * std::cos(rho);
}

// Signed-theta cut convention: negative theta looks into the phi+pi half plane.
void normalize_direction(double& theta, double& phi) {
  if (theta < 0.0) {
    theta = -theta;
    phi += constants::pi;
  }
}

double bent_diagonal(const std::vector<ElementFrame>& frames) {
  double d2 = 0.0;
  for (std::size_t a = 0; a < frames.size(); ++a)
    for (std::size_t b = a + 1; b < frames.size(); ++b)
      d2 = std::max(d2, (frames[a].position - frames[b].position).squaredNorm());
  return std::sqrt(d2);
}

}  // namespace

std::pair<double, double> element_field_local(double theta, double phi, const ArraySpec& spec) {
  const double taper = spec.field_scale * element_taper(theta, phi, spec);
  return {taper * std::cos(phi), -taper * std::cos(theta) * std::sin(phi)};
}

CVec3 element_field_global(const ElementFrame& frame, double theta, double phi,
                           const ArraySpec& spec) {
  const auto [e_theta, e_phi] = element_field_local(theta, phi, spec);
  const Vec3 local_cartesian = change_of_basis(theta, phi) * Vec3(0.0, e_theta, e_phi);
  return (frame.rotation * local_cartesian).cast<Complex>();
}

FieldSample total_field(const std::vector<ElementFrame>& frames, const ArraySpec& spec,
                        double theta, double phi, double radius, SynthesisMode mode) {
  if (frames.size() != spec.element_count())
    throw std::invalid_argument("total_field: frame count does not match the array spec");
  normalize_direction(theta, phi);

  const double diagonal = bent_diagonal(frames);
  if (radius <= diagonal)
    throw numeric_error("far-field violation: radius " + std::to_string(radius) +
                        " m is not beyond the array diagonal " + std::to_string(diagonal) + " m");

  const double taper = element_taper(theta, phi, spec);
  const double beta = spec.wavenumber();
  const Vec3 target = radius * Vec3(std::sin(theta) * std::cos(phi),
                                    std::sin(theta) * std::sin(phi), std::cos(theta));

  CVec3 sum = CVec3::Zero();
  for (int i = 0; i < spec.rows; ++i) {
    for (int j = 0; j < spec.cols; ++j) {
      const ElementFrame& f = frames[static_cast<std::size_t>(i) * spec.cols + j];
      const Vec3 mu = mu_coefficients(theta, phi, f.rotation);
      Complex weight = spec.excitations(i, j);
      if (mode == SynthesisMode::Physical) {
        const double d = (target - f.position).norm();
        weight *= std::polar(radius / d, -beta * (d - radius));
      }
      sum += weight * mu.cast<Complex>();
    }
  }

  FieldSample out;
  out.theta = theta;
  out.phi = phi;
  out.radius = radius;
  out.e_field = (spec.field_scale_volts() / radius) * taper * sum;
  return out;
}

RadiationPattern::RadiationPattern(std::vector<double> theta_grid, std::vector<double> phi_grid,
                                   double radius, double freq_hz, FoldSpec fold,
                                   SynthesisMode mode)
    : theta_(std::move(theta_grid)),
      phi_(std::move(phi_grid)),
      radius_(radius),
      freq_hz_(freq_hz),
      fold_(fold),
      mode_(mode) {
  if (theta_.empty() || phi_.empty())
    throw std::invalid_argument("pattern: grids must be non-empty");
  for (std::size_t k = 1; k < theta_.size(); ++k)
    if (theta_[k] <= theta_[k - 1])
      throw std::invalid_argument("pattern: theta grid must be strictly increasing");
  for (std::size_t k = 1; k < phi_.size(); ++k)
    if (phi_[k] <= phi_[k - 1])
      throw std::invalid_argument("pattern: phi grid must be strictly increasing");
  field_.assign(theta_.size() * phi_.size(), CVec3::Zero());
  magnitude_.assign(theta_.size() * phi_.size(), 0.0);
}

void RadiationPattern::set_sample(std::size_t it, std::size_t ip, const CVec3& e) {
  field_[index(it, ip)] = e;
  magnitude_[index(it, ip)] = e.norm();
}

RadiationPattern pattern(const std::vector<ElementFrame>& frames, const ArraySpec& spec,
                         const std::vector<double>& theta_grid,
                         const std::vector<double>& phi_grid, double radius, SynthesisMode mode,
                         unsigned threads, const FoldSpec& fold) {
  RadiationPattern out(theta_grid, phi_grid, radius, spec.freq_hz, fold, mode);
  parallel_for(theta_grid.size(), threads, [&](std::size_t it) {
    for (std::size_t ip = 0; ip < phi_grid.size(); ++ip) {
      const FieldSample s =
          total_field(frames, spec, theta_grid[it], phi_grid[ip], radius, mode);
      out.set_sample(it, ip, s.e_field);
    }
  });
  return out;
}

namespace {

// Parabolic refinement around a grid argmax; offset clamped to half a cell.
double parabolic_offset(double m_lo, double m_mid, double m_hi) {
  const double denom = m_lo - 2.0 * m_mid + m_hi;
  if (denom >= 0.0) return 0.0;  // not a strict local max
  return std::clamp(0.5 * (m_lo - m_hi) / denom, -0.5, 0.5);
}

}  // namespace

BeamPeak beam_peak(const RadiationPattern& p) {
  const auto& th = p.theta_grid();
  const auto& ph = p.phi_grid();

  std::size_t bt = 0, bp = 0;
  double best = -1.0;
  for (std::size_t it = 0; it < th.size(); ++it) {
    for (std::size_t ip = 0; ip < ph.size(); ++ip) {
      const double v = p.magnitude(it, ip);
      if (v > best) {  // strict: the first (smallest theta, then phi) max wins
        best = v;
        bt = it;
        bp = ip;
      }
    }
  }

  BeamPeak peak{th[bt], ph[bp], best};
  if (bt > 0 && bt + 1 < th.size()) {
    const double off =
        parabolic_offset(p.magnitude(bt - 1, bp), best, p.magnitude(bt + 1, bp));
    const double step = (off >= 0.0) ? th[bt + 1] - th[bt] : th[bt] - th[bt - 1];
    peak.theta = th[bt] + off * step;
  }
  if (bp > 0 && bp + 1 < ph.size()) {
    const double off =
        parabolic_offset(p.magnitude(bt, bp - 1), best, p.magnitude(bt, bp + 1));
    const double step = (off >= 0.0) ? ph[bp + 1] - ph[bp] : ph[bp] - ph[bp - 1];
    peak.phi = ph[bp] + off * step;
  }
  return peak;
}

std::vector<double> linspace_grid(double start, double stop, double step) {
  if (step <= 0.0) throw std::invalid_argument("grid: step must be positive");
  if (stop < start) throw std::invalid_argument("grid: stop must be >= start");
  std::vector<double> g;
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
  g.reserve(count);
  for (std::size_t k = 0; k < count; ++k) g.push_back(start + static_cast<double>(k) * step);
  return g;
}

std::vector<SquintPoint> beam_squint(const ArraySpec& spec, const FoldSpec& fold,
                                     const std::vector<double>& freq_list, SynthesisMode mode,
                                     unsigned threads) {
  const auto theta_grid = linspace_grid(0.0, deg2rad(89.0), deg2rad(1.0));
  const auto phi_grid = linspace_grid(0.0, deg2rad(358.0), deg2rad(2.0));

  std::vector<SquintPoint> out;
  out.reserve(freq_list.size());
  for (double f : freq_list) {
    ArraySpec s = spec;
    s.freq_hz = f;
    const auto frames = fold_layout(s, fold);
    const auto pat = pattern(frames, s, theta_grid, phi_grid, 1000.0, mode, threads, fold);
    const BeamPeak peak = beam_peak(pat);
    out.push_back({f, peak.theta, peak.phi});
  }
  return out;
}

double squint_metric(const std::vector<SquintPoint>& points) {
  double worst = 0.0;
  for (std::size_t a = 0; a < points.size(); ++a) {
    const Vec3 da(std::sin(points[a].peak_theta) * std::cos(points[a].peak_phi),
                  std::sin(points[a].peak_theta) * std::sin(points[a].peak_phi),
                  std::cos(points[a].peak_theta));
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      const Vec3 db(std::sin(points[b].peak_theta) * std::cos(points[b].peak_phi),
                    std::sin(points[b].peak_theta) * std::sin(points[b].peak_phi),
                    std::cos(points[b].peak_theta));
      worst = std::max(worst, std::acos(std::clamp(da.dot(db), -1.0, 1.0)));
    }
  }
  return worst;
}

}  // namespace flexarray
