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

#include "csiprism/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "csiprism/errors.hpp"

namespace csiprism {

namespace {

// Regularized copy of one PDP row: bins below floor_rel * peak are raised to
// the floor so the ratio sums stay finite for gated (zeroed) tails.
std::vector<double> floored_row(std::span<const double> row, std::size_t n, double floor_rel,
                                std::size_t index) {
    double peak = 0.0;
    for (std::size_t p = 0; p < n; ++p) peak = std::max(peak, row[p]);
    if (!(peak > 0.0))
        throw null_bin_error("divergence: window " + std::to_string(index) +
                             " has an all-zero delay profile");
    const double floor = peak * floor_rel;
    std::vector<double> out(n);
    for (std::size_t p = 0; p < n; ++p) out[p] = std::max(row[p], floor);
    return out;
}

} // namespace

divergence_matrix compute_divergence(const pdp_matrix& pdps, double floor_rel) {
    if (pdps.n_windows == 0) throw degenerate_input_error("divergence: no windows");
    if (!(floor_rel > 0.0) || !std::isfinite(floor_rel))
        throw range_error("divergence: floor_rel must be positive and finite");

    const std::size_t n = pdps.n_windows;
    const std::size_t nd = pdps.n_delay;

    divergence_matrix out;
    out.g.assign(n * n, 0.0);
    out.n = n;
    out.window = pdps.window;
    out.stride = pdps.stride;
    out.dt = pdps.dt;
    out.floor_rel = floor_rel;

    std::vector<std::vector<double>> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = floored_row(pdps.row(i), nd, floor_rel, i);

    // Upper triangle only; gamma is symmetric with an exactly-zero diagonal.
    // The two ratio sums satisfy (s_ij/N)(s_ji/N) >= 1 (Cauchy-Schwarz), so
    // the log argument is clamped at 1 to keep round-off from going negative.
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<double>& pi = rows[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::vector<double>& pj = rows[j];
            double s_ij = 0.0;
            double s_ji = 0.0;
            for (std::size_t p = 0; p < nd; ++p) {
                s_ij += pi[p] / pj[p];
                s_ji += pj[p] / pi[p];
            }
            const double nn = static_cast<double>(nd);
            const double arg = std::max((s_ij / nn) * (s_ji / nn), 1.0);
            const double val = std::log(arg);
            out.g[i * n + j] = val;
            out.g[j * n + i] = val;
        }
    }
    return out;
}

namespace {

// Index range [lo, hi] of windows treated as quasi-stationary around
// reference window i under the chosen rule.
void span_bounds(const divergence_matrix& gamma, std::size_t i, double c_th, span_rule rule,
                 std::size_t& lo, std::size_t& hi) {
    const std::size_t n = gamma.n;
    lo = i;
    hi = i;
    if (rule == span_rule::contiguous) {
        while (lo > 0 && gamma.at(i, lo - 1) < c_th) --lo;
        while (hi + 1 < n && gamma.at(i, hi + 1) < c_th) ++hi;
    } else {
        for (std::size_t j = 0; j < i; ++j) {
            if (gamma.at(i, j) < c_th) {
                lo = j;
                break;
            }
        }
        for (std::size_t j = n; j-- > i + 1;) {
            if (gamma.at(i, j) < c_th) {
                hi = j;
                break;
            }
        }
    }
}

void check_threshold(double c_th) {
    if (!(c_th > 0.0) || !std::isfinite(c_th))
        throw range_error("stationary spans: threshold must be positive and finite");
}

} // namespace

std::vector<stationary_span> stationary_spans(const divergence_matrix& gamma, double v,
                                              double c_th, span_rule rule) {
    check_threshold(c_th);
    if (!(v >= 0.0) || !std::isfinite(v))
        throw range_error("stationary spans: speed must be non-negative and finite");

    std::vector<stationary_span> out(gamma.n);
    for (std::size_t i = 0; i < gamma.n; ++i) {
        std::size_t lo = i, hi = i;
        span_bounds(gamma, i, c_th, rule, lo, hi);
        stationary_span s;
        s.t = gamma.t_center(i);
        if (lo == hi) {
            // Degenerate run: only the reference window itself qualifies.
            s.t_min = s.t_max = s.t;
            s.d_sd = 0.0;
        } else {
            s.t_min = gamma.t_start(lo);
            s.t_max = gamma.t_end(hi);
            s.d_sd = v * (s.t_max - s.t_min);
        }
        out[i] = s;
    }
    return out;
}

std::vector<stationary_span> per_sample_speed_spans(const divergence_matrix& gamma,
                                                    const relative_track& track, double c_th,
                                                    span_rule rule) {
    check_threshold(c_th);
    if (track.samples.empty()) throw degenerate_input_error("stationary spans: empty track");

    std::vector<stationary_span> out(gamma.n);
    for (std::size_t i = 0; i < gamma.n; ++i) {
        std::size_t lo = i, hi = i;
        span_bounds(gamma, i, c_th, rule, lo, hi);
        stationary_span s;
        s.t = gamma.t_center(i);
        s.dist3d = track.nearest(s.t).dist3d;
        if (lo == hi) {
            s.t_min = s.t_max = s.t;
            s.d_sd = 0.0;
        } else {
            s.t_min = gamma.t_start(lo);
            s.t_max = gamma.t_end(hi);
            s.d_sd = track.traveled_between(s.t_min, s.t_max);
        }
        out[i] = s;
    }
    return out;
}

} // namespace csiprism
