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
#include <vector>

#include "csiprism/geo.hpp"
#include "csiprism/transforms.hpp"

namespace csiprism {

// Pairwise spectral divergence gamma(i, j) between window-averaged PDPs:
// log( (1/N^2) * sum_p P_i(p)/P_j(p) * sum_p P_j(p)/P_i(p) ), which is zero
// iff the profiles are proportional and non-negative by Cauchy-Schwarz.
struct divergence_matrix {
    std::vector<double> g; // row-major (i, j), symmetric, zero diagonal
    std::size_t n = 0;
    std::size_t window = 0;
    std::size_t stride = 0;
    double dt = 0.0;
    double floor_rel = 1e-12; // bin floor relative to the window peak

    double at(std::size_t i, std::size_t j) const { return g[i * n + j]; }
    double t_start(std::size_t i) const { return static_cast<double>(i * stride) * dt; }
    double t_center(std::size_t i) const {
        return (static_cast<double>(i * stride) + static_cast<double>(window) / 2.0) * dt;
    }
    double t_end(std::size_t i) const { return static_cast<double>(i * stride + window) * dt; }
};

// floor_rel regularizes zero bins at floor_rel * row peak before the ratio
// sums; a bin still at zero afterwards raises null_bin_error.
divergence_matrix compute_divergence(const pdp_matrix& pdps, double floor_rel = 1e-12);

// How the sub-threshold region around a reference window is read off a
// gamma row: the maximal contiguous run (default), or the farthest
// sub-threshold window in each direction regardless of excursions.
enum class span_rule { contiguous, farthest };

struct stationary_span {
    double t = 0.0;      // reference window center [s]
    double dist3d = 0.0; // filled by the pipeline when a track is present
    double t_min = 0.0;  // s
    double t_max = 0.0;  // s
    double d_sd = 0.0;   // m
};

// d_SD = v * (t_max - t_min) per reference window. Span times run from the
// start of the earliest in-run window to the end of the latest; a run that
// contains only the reference window itself collapses to d_SD = 0.
std::vector<stationary_span> stationary_spans(const divergence_matrix& gamma, double v,
                                              double c_th, span_rule rule = span_rule::contiguous);

// Same spans, but distance integrates the track's instantaneous speed over
// [t_min, t_max] instead of assuming a constant v.
std::vector<stationary_span> per_sample_speed_spans(const divergence_matrix& gamma,
                                                    const relative_track& track, double c_th,
                                                    span_rule rule = span_rule::contiguous);

} // namespace csiprism
