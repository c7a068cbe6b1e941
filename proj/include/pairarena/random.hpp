// Copyright 2026 The PairArena Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

// Seeded sampling helpers. Everything here is fully specified by the
// standard (mt19937_64) or hand-rolled, so identical seeds reproduce
// identical streams bit-for-bit on any platform; std::*_distribution is
// deliberately avoided because its algorithm is implementation-defined.

namespace pairarena {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent child seed from a base seed and a stream path.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = splitmix64(base);
  s = splitmix64(s ^ a);
  s = splitmix64(s ^ b);
  return splitmix64(s ^ c);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). Multiply-shift; bias is O(n / 2^64).
inline std::int64_t uniform_index(Rng& rng, std::int64_t n) {
  return static_cast<std::int64_t>(
      (static_cast<unsigned __int128>(rng()) * static_cast<std::uint64_t>(n)) >>
      64);
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

// Standard normal via Box-Muller (two uniforms per draw, no cached state).
inline double standard_normal(Rng& rng) {
  double u1 = 1.0 - uniform01(rng);  // (0, 1]
  double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
}

// Draws an index proportionally to nonnegative weights. A zero total
// weight falls back to a uniform draw.
inline int sample_weighted(Rng& rng, const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) {
    return static_cast<int>(
        uniform_index(rng, static_cast<std::int64_t>(weights.size())));
  }
  double r = uniform01(rng) * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (r < acc) return static_cast<int>(i);
  }
  return static_cast<int>(weights.size()) - 1;
}

}  // namespace pairarena
