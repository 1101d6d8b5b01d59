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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "csiprism/errors.hpp"

namespace csiprism {

using cf32 = std::complex<float>;
using cf64 = std::complex<double>;

inline constexpr double speed_of_light = 299792458.0; // m/s

// Channel gains H(t, n, f), row-major with time outermost. Immutable after
// construction; safe to share across threads for read.
struct csi_tensor {
    std::vector<cf32> data;
    std::size_t n_time = 0;
    std::size_t n_ant = 0;
    std::size_t n_sub = 0;
    double dt = 0.0;  // sampling interval [s]
    double f_c = 0.0; // carrier frequency [Hz]
    double bw = 0.0;  // bandwidth [Hz]

    std::size_t index(std::size_t t, std::size_t n, std::size_t f) const {
        return (t * n_ant + n) * n_sub + f;
    }
    cf32 at(std::size_t t, std::size_t n, std::size_t f) const { return data[index(t, n, f)]; }

    // One (t, n) row over subcarriers.
    std::span<const cf32> row(std::size_t t, std::size_t n) const {
        return {data.data() + (t * n_ant + n) * n_sub, n_sub};
    }

    double dtau() const { return 1.0 / bw; } // delay bin width [s]

    // Throws on violated dimensional or physical invariants.
    void validate() const;
};

// Non-owning window [t0, t0 + n_time) over a tensor's time axis. Metadata is
// inherited from the source. All analysis operations consume this type.
struct tensor_view {
    const cf32* data = nullptr;
    std::size_t n_time = 0;
    std::size_t n_ant = 0;
    std::size_t n_sub = 0;
    double dt = 0.0;
    double f_c = 0.0;
    double bw = 0.0;

    tensor_view() = default;
    tensor_view(const csi_tensor& t)
        : data(t.data.data()), n_time(t.n_time), n_ant(t.n_ant), n_sub(t.n_sub), dt(t.dt),
          f_c(t.f_c), bw(t.bw) {}

    std::size_t index(std::size_t t, std::size_t n, std::size_t f) const {
        return (t * n_ant + n) * n_sub + f;
    }
    cf32 at(std::size_t t, std::size_t n, std::size_t f) const { return data[index(t, n, f)]; }
    std::span<const cf32> row(std::size_t t, std::size_t n) const {
        return {data + (t * n_ant + n) * n_sub, n_sub};
    }
    std::size_t size() const { return n_time * n_ant * n_sub; }
    double dtau() const { return 1.0 / bw; }
};

// One GPS fix with attitude. Angles in degrees, altitude above sea level.
struct trajectory_record {
    double t = 0.0;
    double lat = 0.0;
    double lon = 0.0;
    double alt_asl = 0.0;
    double pitch = 0.0;
    double roll = 0.0;
    double yaw = 0.0;
};

struct trajectory_log {
    std::vector<trajectory_record> records;

    // Throws order_error / range_error on violated invariants.
    void validate() const;
};

// Base-station site geometry. Defaults match the reference deployment:
// array phase center 1.2 m above a ~25 m ASL parking lot.
struct site_config {
    double bs_lat = 50.8620886583333;  // degrees
    double bs_lon = 4.68551302222222;  // degrees
    double bs_height_agl = 1.2;        // m above ground
    double ground_asl = 25.0;          // m above sea level

    double bs_alt_asl() const { return ground_asl + bs_height_agl; }
};

} // namespace csiprism
