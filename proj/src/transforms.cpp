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

#include "csiprism/transforms.hpp"

#include <cmath>
#include <numbers>

#include "csiprism/fft.hpp"

namespace csiprism {

cir ctf_to_cir(tensor_view t, delay_taper taper) {
    cir out;
    out.n_time = t.n_time;
    out.n_ant = t.n_ant;
    out.n_sub = t.n_sub;
    out.dt = t.dt;
    out.dtau = t.dtau();
    out.data.resize(t.size());

    std::vector<double> win;
    if (taper == delay_taper::hann) {
        win.resize(t.n_sub);
        for (std::size_t k = 0; k < t.n_sub; ++k)
            win[k] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                                          static_cast<double>(t.n_sub - 1));
    }

    const std::size_t rows = t.n_time * t.n_ant;
#pragma omp parallel
    {
        std::vector<cf64> in(t.n_sub);
#pragma omp for schedule(static)
        for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows); ++r) {
            const cf32* src = t.data + static_cast<std::size_t>(r) * t.n_sub;
            for (std::size_t f = 0; f < t.n_sub; ++f) {
                cf64 v(src[f].real(), src[f].imag());
                if (taper == delay_taper::hann)
                    v *= win[f];
                in[f] = v;
            }
            fft::inverse(in, {out.data.data() + static_cast<std::size_t>(r) * t.n_sub, t.n_sub});
        }
    }
    return out;
}

void cir_to_ctf_row(std::span<const cf64> h, std::span<cf64> ctf) { fft::forward(h, ctf); }

std::vector<double> instantaneous_pdp(const cir& c, std::size_t t, std::size_t n) {
    if (t >= c.n_time || n >= c.n_ant)
        throw index_error("instantaneous_pdp: (t=" + std::to_string(t) + ", n=" +
                          std::to_string(n) + ") outside " + std::to_string(c.n_time) + "x" +
                          std::to_string(c.n_ant));
    std::vector<double> p(c.n_sub);
    const auto row = c.row(t, n);
    for (std::size_t k = 0; k < c.n_sub; ++k)
        p[k] = std::norm(row[k]);
    return p;
}

std::vector<double> averaged_pdp(const cir& c, std::size_t t0, std::size_t w) {
    if (w < 1 || t0 + w > c.n_time)
        throw index_error("averaged_pdp: window [" + std::to_string(t0) + ", " +
                          std::to_string(t0 + w) + ") outside time axis of length " +
                          std::to_string(c.n_time));
    std::vector<double> acc(c.n_sub, 0.0);
    for (std::size_t k = t0; k < t0 + w; ++k) {
        for (std::size_t n = 0; n < c.n_ant; ++n) {
            const auto row = c.row(k, n);
            for (std::size_t b = 0; b < c.n_sub; ++b)
                acc[b] += std::norm(row[b]);
        }
    }
    const double scale = 1.0 / (static_cast<double>(c.n_ant) * static_cast<double>(w));
    for (auto& v : acc)
        v *= scale;
    return acc;
}

doppler_functions compute_doppler(tensor_view t, std::size_t t0, std::size_t w,
                                  antenna_reduce reduce) {
    if (w < 1 || t0 + w > t.n_time)
        throw index_error("compute_doppler: window [" + std::to_string(t0) + ", " +
                          std::to_string(t0 + w) + ") outside time axis of length " +
                          std::to_string(t.n_time));
    const std::size_t F = t.n_sub;
    const std::size_t M = t.n_ant;

    doppler_functions out;
    out.n_dopp = w;
    out.n_sub = F;
    out.dtau = t.dtau();
    out.reduce = reduce;
    out.doppler_hz = fft::freq_axis(w, t.dt);
    out.b.assign(w * F, cf64(0.0));
    out.s.assign(w * F, cf64(0.0));
    out.b_power.assign(w * F, 0.0);

    // B(nu, f): per subcarrier column, DFT over time of each antenna's
    // series; coherent mean feeds the complex output, power reduction the
    // rendered spectrum. Columns are independent.
#pragma omp parallel
    {
        std::vector<cf64> series(w), spec(w), mean_series(w);
#pragma omp for schedule(static)
        for (std::ptrdiff_t fi = 0; fi < static_cast<std::ptrdiff_t>(F); ++fi) {
            const auto f = static_cast<std::size_t>(fi);
            std::fill(mean_series.begin(), mean_series.end(), cf64(0.0));
            for (std::size_t n = 0; n < M; ++n) {
                for (std::size_t k = 0; k < w; ++k) {
                    const cf32 v = t.at(t0 + k, n, f);
                    series[k] = cf64(v.real(), v.imag());
                    mean_series[k] += series[k];
                }
                if (reduce == antenna_reduce::power_mean) {
                    fft::forward(series, spec);
                    for (std::size_t k = 0; k < w; ++k)
                        out.b_power[k * F + f] += std::norm(spec[k]);
                }
            }
            for (auto& v : mean_series)
                v /= static_cast<double>(M);
            fft::forward(mean_series, spec);
            for (std::size_t k = 0; k < w; ++k)
                out.b[k * F + f] = spec[k];
            if (reduce == antenna_reduce::power_mean) {
                for (std::size_t k = 0; k < w; ++k)
                    out.b_power[k * F + f] /= static_cast<double>(M);
            } else {
                for (std::size_t k = 0; k < w; ++k)
                    out.b_power[k * F + f] = std::norm(spec[k]);
            }
        }
    }

    // fftshift the Doppler axis (rows of the (nu, f) matrices).
    {
        std::vector<cf64> tmp_b(out.b);
        std::vector<double> tmp_p(out.b_power);
        const std::size_t half = (w + 1) / 2;
        for (std::size_t k = 0; k < w; ++k) {
            const std::size_t src = (k + half) % w;
            for (std::size_t f = 0; f < F; ++f) {
                out.b[k * F + f] = tmp_b[src * F + f];
                out.b_power[k * F + f] = tmp_p[src * F + f];
            }
        }
    }

    // s(nu, tau): inverse transform of B(nu, f) rows over f. The power
    // rendering follows the same reduction choice; for power_mean the per-
    // antenna detour is equivalent to transforming b_power rows only when
    // done coherently, so recompute from the complex rows per antenna.
    out.s_power.assign(w * F, 0.0);
#pragma omp parallel
    {
        std::vector<cf64> in(F), h(F);
#pragma omp for schedule(static)
        for (std::ptrdiff_t ki = 0; ki < static_cast<std::ptrdiff_t>(w); ++ki) {
            const auto k = static_cast<std::size_t>(ki);
            for (std::size_t f = 0; f < F; ++f)
                in[f] = out.b[k * F + f];
            fft::inverse(in, h);
            for (std::size_t f = 0; f < F; ++f) {
                out.s[k * F + f] = h[f];
                if (reduce == antenna_reduce::coherent_mean)
                    out.s_power[k * F + f] = std::norm(h[f]);
            }
        }
    }
    if (reduce == antenna_reduce::power_mean) {
        // Per-antenna s_n(nu, tau), power-averaged over antennas. Antennas
        // are walked in order (the accumulation must not depend on thread
        // scheduling); within one antenna the delay columns are independent.
        std::vector<cf64> h_block(w * F); // one antenna's CIR, (k, tau)
        const std::size_t half = (w + 1) / 2;
        for (std::size_t n = 0; n < M; ++n) {
#pragma omp parallel
            {
                std::vector<cf64> in(F);
#pragma omp for schedule(static)
                for (std::ptrdiff_t ki = 0; ki < static_cast<std::ptrdiff_t>(w); ++ki) {
                    const auto k = static_cast<std::size_t>(ki);
                    const cf32* src = t.data + ((t0 + k) * M + n) * F;
                    for (std::size_t f = 0; f < F; ++f)
                        in[f] = cf64(src[f].real(), src[f].imag());
                    fft::inverse(in, {h_block.data() + k * F, F});
                }
            }
#pragma omp parallel
            {
                std::vector<cf64> col(w), spec(w);
#pragma omp for schedule(static)
                for (std::ptrdiff_t fi = 0; fi < static_cast<std::ptrdiff_t>(F); ++fi) {
                    const auto f = static_cast<std::size_t>(fi);
                    for (std::size_t k = 0; k < w; ++k)
                        col[k] = h_block[k * F + f];
                    fft::forward(col, spec);
                    for (std::size_t k = 0; k < w; ++k) {
                        const std::size_t dst = (k + w - half) % w;
                        out.s_power[dst * F + f] += std::norm(spec[k]);
                    }
                }
            }
        }
        for (auto& v : out.s_power)
            v /= static_cast<double>(M);
    }
    return out;
}

double max_doppler(double v_max, double f_c) {
    if (v_max < 0.0)
        throw range_error("max_doppler: v_max must be non-negative");
    if (!(f_c > 0.0))
        throw range_error("max_doppler: f_c must be positive");
    return v_max * f_c / speed_of_light;
}

} // namespace csiprism
