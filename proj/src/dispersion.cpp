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

#include "csiprism/dispersion.hpp"

#include <algorithm>
#include <cmath>

#include "csiprism/kernels.hpp"

namespace csiprism {

delay_moments rms_delay_spread(std::span<const double> pdp, double dtau) {
    delay_moments m;
    std::size_t positive = 0;
    std::size_t last_positive = 0;
    for (std::size_t k = 0; k < pdp.size(); ++k) {
        if (!std::isfinite(pdp[k]))
            throw data_error("rms_delay_spread: non-finite power in bin " + std::to_string(k));
        if (pdp[k] < 0.0)
            throw range_error("rms_delay_spread: negative power in bin " + std::to_string(k));
        if (pdp[k] > 0.0) {
            ++positive;
            last_positive = k;
        }
        m.integrated_power += pdp[k];
    }
    if (positive == 0 || !(m.integrated_power > 0.0))
        throw null_profile_error("rms_delay_spread: all-zero profile");

    if (positive == 1) {
        // Point mass: zero second central moment by definition.
        m.mean_delay = static_cast<double>(last_positive) * dtau;
        m.rms_delay_spread = 0.0;
        return m;
    }

    double first = 0.0;
    for (std::size_t k = 0; k < pdp.size(); ++k)
        first += pdp[k] * (static_cast<double>(k) * dtau);
    m.mean_delay = first / m.integrated_power;

    // Central-moment form of the spread; algebraically equal to
    // sqrt(sum P tau^2 / P_m - T_m^2) and free of the cancellation.
    double second_central = 0.0;
    for (std::size_t k = 0; k < pdp.size(); ++k) {
        const double d = static_cast<double>(k) * dtau - m.mean_delay;
        second_central += pdp[k] * d * d;
    }
    double radicand = second_central / m.integrated_power;
    if (radicand < -1e-15)
        m.clipped = true;
    m.rms_delay_spread = std::sqrt(std::max(radicand, 0.0));
    return m;
}

std::vector<double> apply_noise_gate(std::span<const double> pdp, double gate_db) {
    std::vector<double> out(pdp.begin(), pdp.end());
    if (!(gate_db > 0.0))
        return out;
    const double peak = *std::max_element(out.begin(), out.end());
    const double floor = peak * std::pow(10.0, -gate_db / 10.0);
    for (auto& v : out) {
        if (v < floor)
            v = 0.0;
    }
    return out;
}

delay_spread_series compute_delay_spread_series(const pdp_matrix& pdps,
                                                const relative_track* track, double gate_db) {
    delay_spread_series out;
    out.gate_db = gate_db;
    out.window = pdps.window;
    out.stride = pdps.stride;
    out.points.resize(pdps.n_windows);
    for (std::size_t i = 0; i < pdps.n_windows; ++i) {
        const auto gated = apply_noise_gate(pdps.row(i), gate_db);
        const auto m = rms_delay_spread(gated, pdps.dtau);
        out.any_clipped = out.any_clipped || m.clipped;
        auto& pt = out.points[i];
        pt.t = pdps.t_center(i);
        pt.dist3d = (track != nullptr) ? track->nearest(pt.t).dist3d : 0.0;
        pt.mean_delay = m.mean_delay;
        pt.integrated_power = m.integrated_power;
        pt.rms_ds = m.rms_delay_spread;
    }
    return out;
}

delay_spread_series compute_delay_spread_series(tensor_view t, const relative_track* track,
                                                std::size_t w, double gate_db) {
    const pdp_matrix pdps = kernels::pdp_rows(t, w, w);
    return compute_delay_spread_series(pdps, track, gate_db);
}

cdf_summary summarize_cdf(std::span<const double> values) {
    if (values.size() < 2)
        throw degenerate_input_error("summarize_cdf: need at least 2 values");
    cdf_summary out;
    out.values.assign(values.begin(), values.end());
    for (const double v : out.values) {
        if (!std::isfinite(v))
            throw data_error("summarize_cdf: non-finite value");
    }
    std::sort(out.values.begin(), out.values.end());
    const auto n = static_cast<double>(out.values.size());
    out.ordinates.resize(out.values.size());
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t k = 0; k < out.values.size(); ++k) {
        out.ordinates[k] = (static_cast<double>(k) + 0.5) / n;
        sum += out.values[k];
        sum2 += out.values[k] * out.values[k];
    }
    out.mu = sum / n;
    out.sigma = std::sqrt(std::max(sum2 / n - out.mu * out.mu, 0.0));
    out.fit = {out.mu, out.sigma};
    return out;
}

} // namespace csiprism
