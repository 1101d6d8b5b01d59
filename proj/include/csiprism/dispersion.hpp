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
#include <optional>
#include <span>
#include <vector>

#include "csiprism/geo.hpp"
#include "csiprism/transforms.hpp"
#include "csiprism/types.hpp"

namespace csiprism {

struct delay_moments {
    double mean_delay = 0.0;       // T_m [s]
    double integrated_power = 0.0; // P_m, linear
    double rms_delay_spread = 0.0; // S_tau [s]
    bool clipped = false;          // radicand fell below -1e-15 and was clipped
};

// Zeroth/first/second moments of a PDP with delays at bin centers k*dtau.
// Throws null_profile_error when no bin is positive.
delay_moments rms_delay_spread(std::span<const double> pdp, double dtau);

// Zeroes bins more than gate_db below the peak. gate_db <= 0 disables.
std::vector<double> apply_noise_gate(std::span<const double> pdp, double gate_db);

struct ds_point {
    double t = 0.0;          // window center [s]
    double dist3d = 0.0;     // m, from the track at the window center
    double mean_delay = 0.0; // s
    double integrated_power = 0.0;
    double rms_ds = 0.0; // s
};

struct delay_spread_series {
    std::vector<ds_point> points;
    double gate_db = 0.0;
    std::size_t window = 0;
    std::size_t stride = 0;
    bool any_clipped = false;
};

// One entry per window of the PDP series, gated before the moment
// computation. track may be null (dist3d then stays 0).
delay_spread_series compute_delay_spread_series(const pdp_matrix& pdps,
                                                const relative_track* track, double gate_db);

// Convenience path from a raw tensor (non-overlapping windows, stride = w).
delay_spread_series compute_delay_spread_series(tensor_view t, const relative_track* track,
                                                std::size_t w, double gate_db);

struct cdf_summary {
    std::vector<double> values;    // sorted ascending
    std::vector<double> ordinates; // (k - 0.5) / n
    double mu = 0.0;
    double sigma = 0.0; // MLE (1/N)
    gaussian_fit fit;   // same moments, kept for symmetry with wobble output
};

// Empirical CDF with midpoint plotting positions. Needs >= 2 finite values.
cdf_summary summarize_cdf(std::span<const double> values);

} // namespace csiprism
