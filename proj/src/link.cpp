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

#include "csiprism/link.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csiprism/errors.hpp"

namespace csiprism {

double mrc_gain(std::span<const cf64> h) {
    double g = 0.0;
    for (const auto& v : h)
        g += std::norm(v);
    return g;
}

double mrc_gain(std::span<const cf32> h) {
    double g = 0.0;
    for (const auto& v : h)
        g += std::norm(cf64(v.real(), v.imag()));
    return g;
}

double resolve_noise_power(const noise_model& model, const pdp_matrix& pdps) {
    if (model.mode == noise_mode::fixed) {
        if (!(model.noise_power > 0.0) || !std::isfinite(model.noise_power))
            throw range_error("noise model: fixed noise power must be positive and finite");
        return model.noise_power;
    }
    if (pdps.n_windows == 0 || pdps.n_delay == 0)
        throw degenerate_input_error("noise model: no profiles to estimate from");
    const std::size_t tail = std::max<std::size_t>(pdps.n_delay / 10, 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < pdps.n_windows; ++i) {
        const auto row = pdps.row(i);
        for (std::size_t b = pdps.n_delay - tail; b < pdps.n_delay; ++b)
            acc += row[b];
    }
    const double est = acc / (static_cast<double>(pdps.n_windows) * static_cast<double>(tail));
    if (!(est > 0.0))
        throw degenerate_input_error(
            "noise model: delay-tail estimate is zero; configure a fixed noise power");
    return est;
}

namespace {

void check_noise(double noise_power) {
    if (!(noise_power > 0.0) || !std::isfinite(noise_power))
        throw range_error("spectral efficiency: noise power must be positive and finite");
}

// SE and total received power of one snapshot in a single pass.
void snapshot_se_power(tensor_view t, double noise_power, std::size_t k, double& se,
                       double& power) {
    const std::size_t M = t.n_ant;
    const std::size_t F = t.n_sub;
    se = 0.0;
    power = 0.0;
    for (std::size_t f = 0; f < F; ++f) {
        double gain = 0.0;
        for (std::size_t n = 0; n < M; ++n) {
            const cf32 v = t.at(k, n, f);
            gain += std::norm(cf64(v.real(), v.imag()));
        }
        se += std::log2(1.0 + gain / noise_power);
        power += gain;
    }
    se /= static_cast<double>(F);
}

} // namespace

double spectral_efficiency(tensor_view t, double noise_power, std::size_t snapshot) {
    check_noise(noise_power);
    if (snapshot >= t.n_time)
        throw index_error("spectral_efficiency: snapshot " + std::to_string(snapshot) +
                          " outside time axis of length " + std::to_string(t.n_time));
    double se = 0.0, power = 0.0;
    snapshot_se_power(t, noise_power, snapshot, se, power);
    return se;
}

se_series_result se_series(tensor_view t, const relative_track* track, double noise_power,
                           std::size_t decimation) {
    check_noise(noise_power);
    if (decimation < 1)
        throw range_error("se_series: decimation stride must be >= 1");
    if (t.n_time == 0)
        throw degenerate_input_error("se_series: empty tensor");

    const std::size_t count = 1 + (t.n_time - 1) / decimation;
    se_series_result out;
    out.noise_power = noise_power;
    out.decimation = decimation;
    out.points.resize(count);
    std::vector<double> power(count, 0.0);

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const std::size_t k = idx * decimation;
        auto& pt = out.points[idx];
        pt.t = static_cast<double>(k) * t.dt;
        pt.dist3d = (track != nullptr) ? track->nearest(pt.t).dist3d : 0.0;
        snapshot_se_power(t, noise_power, k, pt.se, power[idx]);
    }

    const double peak = *std::max_element(power.begin(), power.end());
    if (!(peak > 0.0))
        throw degenerate_input_error("se_series: record carries no power");
    for (std::size_t i = 0; i < count; ++i)
        out.points[i].max_norm_power_db = 10.0 * std::log10(power[i] / peak);
    return out;
}

} // namespace csiprism
