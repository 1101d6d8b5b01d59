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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "csiprism/spatial.hpp"
#include "csiprism/types.hpp"

namespace csiprism {

// One multipath tap: delay must land inside the unambiguous delay span
// [0, n_sub / bw), power is linear and positive. Fading is either a fixed
// Doppler shift (doppler_hz, possibly zero for a static tap) or a Clarke
// sum-of-sinusoids process at the given speed.
struct tap {
    double delay_s = 0.0;
    double power = 1.0;
    double doppler_hz = 0.0;
    bool clarke = false;
    double speed = 0.0; // m/s, Clarke mode only
};

struct tap_spec {
    std::vector<tap> taps;
    std::uint64_t seed = 0;
};

struct tensor_dims {
    std::size_t n_time = 0;
    std::size_t n_ant = 0;
    std::size_t n_sub = 0;
};

// Tapped-delay-line channel, identical across antenna elements:
// H(t,n,f) = sum_k sqrt(p_k) a_k(t) exp(-j 2 pi f_f tau_k) on the baseband
// subcarrier grid f_f = f * bw / n_sub, so a delay of b / bw lands exactly
// in impulse-response bin b. Byte-deterministic under a fixed seed for any
// thread count (every sample is a pure function of its indices).
csi_tensor gen_tapped_delay(const tap_spec& spec, tensor_dims dims, double dt, double f_c,
                            double bw);

// Clarke flat-fading process by sum of sinusoids: n_rays equal-power rays
// at equally spaced azimuths with a random common rotation and i.i.d.
// phases. Unit mean power by construction; v = 0 degenerates to a constant.
std::vector<cf64> gen_clarke_fading(double v, double f_c, std::size_t n_time, double dt,
                                    std::uint64_t seed, std::size_t n_rays = 64);

// Spatial structure of the generated elements: independent draws, a single
// plane wave (rank-one, fully correlated), or circular-Gaussian draws
// colored to the isotropic-scattering covariance J0^2(2 pi d / lambda) on
// the given array layout.
enum class spatial_mode { iid, plane_wave, jakes_covariance };

struct spatial_spec {
    spatial_mode mode = spatial_mode::iid;
    ura_layout layout{};
    std::uint64_t seed = 0;
};

// Tensor whose every (snapshot, subcarrier) sample is an independent
// element vector with exactly the prescribed covariance in expectation
// (unit circular-Gaussian draws colored by the symmetric matrix root).
csi_tensor gen_spatially_correlated(const spatial_spec& spec, tensor_dims dims, double dt,
                                    double f_c, double bw);

// Abrupt statistics change: tapped-delay channel of spec_a for snapshots
// [0, switch_at), of spec_b from switch_at on, with no blending.
csi_tensor gen_nonstationary_switch(const tap_spec& spec_a, const tap_spec& spec_b,
                                    std::size_t switch_at, tensor_dims dims, double dt,
                                    double f_c, double bw);

} // namespace csiprism
