// SPDX-License-Identifier: Apache-2.0
//
// csi-prism — massive-MIMO air-to-ground channel analysis toolkit
// Copyright (C) 2026 The csi-prism authors
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
#include <numbers>

namespace csiprism {

// Counter-based generator: output is a pure function of (seed, stream,
// counter), so any sample can be drawn from any thread in any order and the
// result stays byte-identical. Streams keyed by (seed, stream) are
// independent for all practical purposes.
class counter_rng {
  public:
    counter_rng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(mix(seed) ^ (0x9E3779B97F4A7C15ULL * (stream + 1)))) {}

    std::uint64_t bits(std::uint64_t counter) const { return mix(key_ ^ mix(counter + 1)); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    // Box-Muller pair of independent standard normals, consumes one counter.
    std::complex<double> normal_pair(std::uint64_t counter) const {
        const std::uint64_t b = bits(counter);
        const double u1 = static_cast<double>((b >> 11) | 1ULL) * 0x1.0p-53; // keep u1 > 0
        const double u2 = uniform(counter ^ 0x5851F42D4C957F2DULL);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

    // Circularly-symmetric complex normal, unit variance (0.5 per component).
    std::complex<double> cnormal(std::uint64_t counter) const {
        return normal_pair(counter) * std::numbers::sqrt2 / 2.0;
    }

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t key_;
};

} // namespace csiprism
