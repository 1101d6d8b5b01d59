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

#include "csiprism/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "csiprism/errors.hpp"
#include "csiprism/fft.hpp"

namespace csiprism::kernels {

namespace {

void check_plan(std::size_t n_time, std::size_t window, std::size_t stride) {
    if (window < 1 || stride < 1)
        throw range_error("pdp_rows: window and stride must be >= 1");
    if (window > n_time)
        throw degenerate_input_error("pdp_rows: window " + std::to_string(window) +
                                     " exceeds time axis of length " + std::to_string(n_time));
}

std::vector<double> taper_weights(delay_taper taper, std::size_t n_sub) {
    std::vector<double> win;
    if (taper == delay_taper::hann) {
        win.resize(n_sub);
        for (std::size_t k = 0; k < n_sub; ++k)
            win[k] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                                          static_cast<double>(n_sub - 1));
    }
    return win;
}

// One window's averaged PDP into out[0..n_sub): snapshots and antennas are
// walked in a fixed order so the accumulation is identical no matter which
// thread runs the window.
void window_pdp(tensor_view t, std::size_t t0, std::size_t w, const std::vector<double>& win,
                double* out, std::vector<cf64>& in_buf, std::vector<cf64>& h_buf) {
    const std::size_t F = t.n_sub;
    for (std::size_t b = 0; b < F; ++b)
        out[b] = 0.0;
    for (std::size_t k = t0; k < t0 + w; ++k) {
        for (std::size_t n = 0; n < t.n_ant; ++n) {
            const cf32* src = t.data + (k * t.n_ant + n) * F;
            for (std::size_t f = 0; f < F; ++f) {
                cf64 v(src[f].real(), src[f].imag());
                if (!win.empty())
                    v *= win[f];
                in_buf[f] = v;
            }
            fft::inverse(in_buf, h_buf);
            for (std::size_t b = 0; b < F; ++b)
                out[b] += std::norm(h_buf[b]);
        }
    }
    const double scale = 1.0 / (static_cast<double>(t.n_ant) * static_cast<double>(w));
    for (std::size_t b = 0; b < F; ++b)
        out[b] *= scale;
}

pdp_matrix make_frame(tensor_view t, std::size_t window, std::size_t stride) {
    pdp_matrix out;
    out.n_windows = window_count(t.n_time, window, stride);
    out.n_delay = t.n_sub;
    out.window = window;
    out.stride = stride;
    out.dt = t.dt;
    out.dtau = t.dtau();
    out.p.assign(out.n_windows * out.n_delay, 0.0);
    return out;
}

} // namespace

std::size_t window_count(std::size_t n_time, std::size_t window, std::size_t stride) {
    check_plan(n_time, window, stride);
    return 1 + (n_time - window) / stride;
}

pdp_matrix pdp_rows(tensor_view t, std::size_t window, std::size_t stride, delay_taper taper) {
    pdp_matrix out = make_frame(t, window, stride);
    const std::vector<double> win = taper_weights(taper, t.n_sub);

#pragma omp parallel
    {
        std::vector<cf64> in_buf(t.n_sub), h_buf(t.n_sub);
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(out.n_windows); ++i) {
            const auto wi = static_cast<std::size_t>(i);
            window_pdp(t, wi * stride, window, win, out.p.data() + wi * out.n_delay, in_buf,
                       h_buf);
        }
    }
    return out;
}

namespace serial {

pdp_matrix pdp_rows(tensor_view t, std::size_t window, std::size_t stride, delay_taper taper) {
    pdp_matrix out = make_frame(t, window, stride);
    const std::vector<double> win = taper_weights(taper, t.n_sub);
    std::vector<cf64> in_buf(t.n_sub), h_buf(t.n_sub);
    for (std::size_t i = 0; i < out.n_windows; ++i)
        window_pdp(t, i * stride, window, win, out.p.data() + i * out.n_delay, in_buf, h_buf);
    return out;
}

} // namespace serial

} // namespace csiprism::kernels
