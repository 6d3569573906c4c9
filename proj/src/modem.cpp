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

#include "flexarray/modem.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace flexarray {

namespace {

constexpr std::size_t kSymbolsPerBatch = 1 << 16;

unsigned gray_decode(unsigned g) {
  unsigned b = g;
  b ^= b >> 1;
  b ^= b >> 2;
  b ^= b >> 4;
  return b;
}

// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
double uniform53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller pair of standard normals; written out so the bit stream ->
// sample mapping is fixed across platforms.
std::pair<double, double> normal_pair(std::mt19937_64& rng) {
  const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
  const double u2 = uniform53(rng);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * constants::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace

QamConstellation QamConstellation::make(int order) {
  QamConstellation c;
  c.modulation_ = Modulation::qam(order);
  const int levels = c.modulation_.levels;
  const int bits_per_dim = c.modulation_.bits_per_symbol() / 2;
  // Unit average symbol energy: per-dimension level variance (L^2-1)/3.
  const double delta = std::sqrt(3.0 / (2.0 * (levels * levels - 1.0)));

  c.points_.resize(static_cast<std::size_t>(order));
  for (unsigned word = 0; word < static_cast<unsigned>(order); ++word) {
    const unsigned wi = word >> bits_per_dim;
    const unsigned wq = word & ((1u << bits_per_dim) - 1u);
    const double li = (levels - 1.0 - 2.0 * gray_decode(wi)) * delta;
    const double lq = (levels - 1.0 - 2.0 * gray_decode(wq)) * delta;
    c.points_[word] = Complex(li, lq);
  }
  return c;
}

std::vector<Complex> modulate(const std::vector<std::uint8_t>& bits,
                              const QamConstellation& constellation) {
  const int k = constellation.bits_per_symbol();
  if (bits.size() % static_cast<std::size_t>(k) != 0)
    throw std::invalid_argument("modulate: bit count not divisible by bits per symbol");
  std::vector<Complex> symbols;
  symbols.reserve(bits.size() / k);
  for (std::size_t pos = 0; pos < bits.size(); pos += k) {
    unsigned word = 0;
    for (int b = 0; b < k; ++b) word = (word << 1) | (bits[pos + b] & 1u);
    symbols.push_back(constellation.point(word));
  }
  return symbols;
}

std::vector<Complex> awgn(const std::vector<Complex>& symbols, double snr_linear,
                          std::uint64_t seed) {
  if (!(snr_linear > 0.0)) throw std::invalid_argument("awgn: SNR must be positive");
  if (std::isinf(snr_linear)) return symbols;

  const double sigma = std::sqrt(0.5 / snr_linear);  // per real component
  std::vector<Complex> out(symbols.size());
  const std::size_t batches = (symbols.size() + kSymbolsPerBatch - 1) / kSymbolsPerBatch;
  for (std::size_t b = 0; b < batches; ++b) {
    std::mt19937_64 rng(substream_seed(seed, b));
    const std::size_t begin = b * kSymbolsPerBatch;
    const std::size_t end = std::min(begin + kSymbolsPerBatch, symbols.size());
    for (std::size_t s = begin; s < end; ++s) {
      const auto [nr, ni] = normal_pair(rng);
      out[s] = symbols[s] + Complex(sigma * nr, sigma * ni);
    }
  }
  return out;
}

std::vector<std::uint8_t> demodulate(const std::vector<Complex>& symbols,
                                     const QamConstellation& constellation) {
  const int k = constellation.bits_per_symbol();
  const auto& points = constellation.points();
  std::vector<std::uint8_t> bits;
  bits.reserve(symbols.size() * k);
  for (const Complex& s : symbols) {
    unsigned best_word = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (unsigned w = 0; w < points.size(); ++w) {
      const double d = std::norm(s - points[w]);
      if (d < best_dist) {  // strict: ties keep the smaller word
        best_dist = d;
        best_word = w;
      }
    }
    for (int b = k - 1; b >= 0; --b) bits.push_back((best_word >> b) & 1u);
  }
  return bits;
}

BerResult ber_monte_carlo(const Modulation& modulation, double snr_linear, std::uint64_t n_bits,
                          std::uint64_t seed) {
  if (n_bits < 10000) throw std::invalid_argument("ber_monte_carlo: need at least 10^4 bits");
  if (!(snr_linear > 0.0)) throw std::invalid_argument("ber_monte_carlo: SNR must be positive");

  const QamConstellation constellation = QamConstellation::make(modulation.order);
  const int k = constellation.bits_per_symbol();
  const std::uint64_t n_symbols = (n_bits + k - 1) / k;

  std::uint64_t errors = 0;
  std::uint64_t sent = 0;
  const std::uint64_t batches = (n_symbols + kSymbolsPerBatch - 1) / kSymbolsPerBatch;
  for (std::uint64_t b = 0; b < batches; ++b) {
    const std::size_t count = static_cast<std::size_t>(
        std::min<std::uint64_t>(kSymbolsPerBatch, n_symbols - b * kSymbolsPerBatch));

    std::mt19937_64 bit_rng(substream_seed(seed, 2 * b));
    std::vector<std::uint8_t> bits(count * k);
    std::uint64_t word = 0;
    int available = 0;
    for (auto& bit : bits) {
      if (available == 0) {
        word = bit_rng();
        available = 64;
      }
      bit = static_cast<std::uint8_t>(word & 1u);
      word >>= 1;
      --available;
    }

    const auto tx = modulate(bits, constellation);
    const auto rx = awgn(tx, snr_linear, substream_seed(seed, 2 * b + 1));
    const auto decided = demodulate(rx, constellation);
    for (std::size_t i = 0; i < bits.size(); ++i) errors += (bits[i] != decided[i]);
    sent += bits.size();
  }

  BerResult result;
  result.modulation = modulation;
  result.snr_linear = snr_linear;
  result.bits_sent = sent;
  result.bit_errors = errors;
  result.ber_estimate = static_cast<double>(errors) / static_cast<double>(sent);
  if (errors == 0) {
    result.ci95_halfwidth = 3.0 / static_cast<double>(sent);
  } else {
    const double p = result.ber_estimate;
    result.ci95_halfwidth = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(sent));
  }
  result.seed = seed;
  return result;
}

}  // namespace flexarray
