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

#include <cstdint>
#include <vector>

#include "flexarray/link.hpp"

namespace flexarray {

/// Gray-coded square-QAM map with unit average symbol energy.
///
/// A symbol word of log2(M) bits splits into an in-phase word (high bits)
/// and a quadrature word (low bits). Each word selects a per-dimension
/// amplitude level through a binary-reflected Gray decode; word 0 maps to
/// the most positive level, so 4-QAM bits 00 -> (+1+j)/sqrt(2).
class QamConstellation {
 public:
  static QamConstellation make(int order);

  int order() const { return modulation_.order; }
  int levels() const { return modulation_.levels; }
  int bits_per_symbol() const { return modulation_.bits_per_symbol(); }
  const Modulation& modulation() const { return modulation_; }

  /// Constellation point for a symbol word (bit pattern as an integer,
  /// first transmitted bit in the most significant position).
  Complex point(unsigned word) const { return points_[word]; }
  const std::vector<Complex>& points() const { return points_; }

 private:
  Modulation modulation_;
  std::vector<Complex> points_;
};

/// Maps a 0/1 bit stream onto constellation symbols. The bit count must be
/// divisible by bits_per_symbol (framing error otherwise).
std::vector<Complex> modulate(const std::vector<std::uint8_t>& bits,
                              const QamConstellation& constellation);

/// Adds circularly symmetric complex Gaussian noise with total variance
/// 1/snr per symbol. Deterministic for a given seed on every platform: the
/// generator is mt19937_64 with SplitMix64-derived per-batch substreams and
/// an explicit Box-Muller transform. snr = infinity returns the input
/// unchanged.
std::vector<Complex> awgn(const std::vector<Complex>& symbols, double snr_linear,
                          std::uint64_t seed);

/// Minimum-distance decision over the full constellation; distance ties
/// resolve toward the smallest symbol word (lexicographically smallest bit
/// pattern).
std::vector<std::uint8_t> demodulate(const std::vector<Complex>& symbols,
                                     const QamConstellation& constellation);

struct BerResult {
  Modulation modulation;
  double snr_linear = 0.0;
  std::uint64_t bits_sent = 0;
  std::uint64_t bit_errors = 0;
  double ber_estimate = 0.0;
  /// Normal-approximation 95% half width; for zero observed errors the
  /// one-sided rule-of-three bound 3/n.
  double ci95_halfwidth = 0.0;
  std::uint64_t seed = 0;
};

/// End-to-end modulate -> AWGN -> demodulate bit error count. Random bits
/// come from the same seeded substream family as the noise, so results are
/// a pure function of (modulation, snr, n_bits, seed). n_bits is rounded up
/// to a whole number of symbols; requires n_bits >= 10^4.
BerResult ber_monte_carlo(const Modulation& modulation, double snr_linear, std::uint64_t n_bits,
                          std::uint64_t seed);

}  // namespace flexarray
