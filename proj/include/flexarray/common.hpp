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

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace flexarray {

using Complex = std::complex<double>;

namespace constants {
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double speed_of_light = 299792458.0;      // m/s
inline constexpr double free_space_impedance = 376.730313668;  // ohm
inline constexpr double boltzmann = 1.380649e-23;          // J/K
}  // namespace constants

/// Raised when a numerical procedure cannot produce a trustworthy result
/// (non-convergent quadrature, far-field violation, ...). The CLI maps this
/// to exit code 2; configuration problems map to std::invalid_argument and
/// exit code 1.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double deg2rad(double deg) { return deg * constants::pi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / constants::pi; }

inline double power_db(double linear) { return 10.0 * std::log10(linear); }
inline double power_from_db(double db) { return std::pow(10.0, db / 10.0); }
inline double field_db(double linear) { return 20.0 * std::log10(linear); }

/// sin(x)/x with a series branch below |x| = 1e-6 so the removable
/// singularity at 0 stays smooth to machine precision.
inline double sinc(double x) {
  if (std::abs(x) < 1e-6) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

/// SplitMix64 mix step. Used to derive independent, documented substream
/// seeds from (master seed, stream index) pairs.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t s = master;
  (void)splitmix64(s);
  s ^= stream * 0xD1B54A32D192ED03ull;
  return splitmix64(s);
}

/// Runs fn(i) for i in [0, n). Work items must be independent; results are
/// identical for any thread count. threads <= 1 runs inline.
inline void parallel_for(std::size_t n, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace flexarray
