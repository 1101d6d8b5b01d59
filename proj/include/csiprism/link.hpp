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
#include <span>
#include <vector>

#include "csiprism/geo.hpp"
#include "csiprism/transforms.hpp"
#include "csiprism/types.hpp"

namespace csiprism {

// Post-combining signal power gain of maximum-ratio combining with weights
// w_n = conj(h_n): the matched-filter norm sum_n |h_n|^2.
double mrc_gain(std::span<const cf64> h);
double mrc_gain(std::span<const cf32> h);

// Where the per-subcarrier noise power comes from: a configured linear
// value, or the mean of the last 10% of delay bins of the record-averaged
// power-delay profile (the delay tail beyond the multipath support).
enum class noise_mode { fixed, pdp_tail };

struct noise_model {
    noise_mode mode = noise_mode::fixed;
    double noise_power = 1.0; // linear, > 0; used directly in fixed mode
};

// Resolve the model against measured profiles; pdp_tail averages the last
// 10% of delay bins (at least one) of the mean profile across all windows.
double resolve_noise_power(const noise_model& model, const pdp_matrix& pdps);

// Shannon spectral efficiency of one snapshot with per-subcarrier
// maximum-ratio combining: (1/F) sum_f log2(1 + sum_n |h_n(t,f)|^2 / N0).
double spectral_efficiency(tensor_view t, double noise_power, std::size_t snapshot);

struct se_point {
    double t = 0.0;                 // s
    double dist3d = 0.0;            // m
    double se = 0.0;                // bit/s/Hz
    double max_norm_power_db = 0.0; // dB, 0 at the trajectory maximum
};

struct se_series_result {
    std::vector<se_point> points;
    double noise_power = 0.0; // resolved linear value used for every point
    std::size_t decimation = 1;
};

// Spectral efficiency and total received power per decimated snapshot.
// Power is normalized so the strongest decimated snapshot sits at 0 dB.
// Snapshots are independent, so the computation parallelizes over them
// without affecting the result.
se_series_result se_series(tensor_view t, const relative_track* track, double noise_power,
                           std::size_t decimation = 100);

} // namespace csiprism
