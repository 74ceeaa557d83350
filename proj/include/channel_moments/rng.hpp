// Copyright 2026 The channel_moments Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
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
#include <string_view>

#include "channel_moments/matrix.hpp"

namespace chm {

using Rng = std::mt19937_64;

/// FNV-1a; stable across platforms, unlike std::hash.
constexpr std::uint64_t stream_tag(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Named RNG stream. Every random quantity in the library is drawn from a
/// stream identified by (seed, name, index), so results never depend on
/// evaluation order or on how work is split across threads.
inline Rng make_stream(std::uint64_t seed, std::string_view name,
                       std::uint64_t index = 0) {
  const std::uint64_t tag = stream_tag(name);
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(tag), hi(tag), lo(index), hi(index)};
  return Rng(seq);
}

/// An RNG stream plus a normal distribution. The distribution caches one
/// spare variate, so the pair must travel together.
struct RandomSource {
  Rng engine;
  std::normal_distribution<double> normal{0.0, 1.0};

  explicit RandomSource(Rng e) : engine(std::move(e)) {}
  RandomSource(std::uint64_t seed, std::string_view name,
               std::uint64_t index = 0)
      : engine(make_stream(seed, name, index)) {}

  /// Standard complex Gaussian, E|z|^2 = 1.
  Complex gaussian() {
    constexpr double kScale = 0.70710678118654752440;
    const double re = normal(engine);
    const double im = normal(engine);
    return {kScale * re, kScale * im};
  }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine); }

  std::uint64_t next_u64() { return engine(); }
};

/// Matrix of i.i.d. standard complex Gaussians.
inline ComplexMatrix ginibre(Index rows, Index cols, RandomSource& rs) {
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = rs.gaussian();
  return g;
}

}  // namespace chm
