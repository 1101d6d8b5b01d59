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

#include "csiprism/spatial.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "csiprism/errors.hpp"

namespace csiprism {

double correlation_matrix::mag(std::size_t i, std::size_t j) const {
    return std::abs(at(i, j));
}

correlation_matrix compute_correlation(tensor_view t, std::size_t t0, std::size_t w,
                                       corr_pooling pooling) {
    if (w < 8)
        throw degenerate_input_error("compute_correlation: window must cover >= 8 snapshots, got " +
                                     std::to_string(w));
    if (t0 + w > t.n_time)
        throw index_error("compute_correlation: window [" + std::to_string(t0) + ", " +
                          std::to_string(t0 + w) + ") outside time axis of length " +
                          std::to_string(t.n_time));

    const std::size_t M = t.n_ant;
    const std::size_t F = t.n_sub;
    const std::size_t S = w * F; // pooled samples per element

    // Centered sample block, one row per element: c[m][k*F + f].
    std::vector<cf64> c(M * S);
    std::vector<double> var(M, 0.0);

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t mi = 0; mi < static_cast<std::ptrdiff_t>(M); ++mi) {
        const auto m = static_cast<std::size_t>(mi);
        cf64* row = c.data() + m * S;
        for (std::size_t k = 0; k < w; ++k) {
            const cf32* src = t.data + ((t0 + k) * M + m) * F;
            for (std::size_t f = 0; f < F; ++f)
                row[k * F + f] = cf64(src[f].real(), src[f].imag());
        }
        if (pooling == corr_pooling::pooled) {
            cf64 mean(0.0);
            for (std::size_t s = 0; s < S; ++s)
                mean += row[s];
            mean /= static_cast<double>(S);
            for (std::size_t s = 0; s < S; ++s)
                row[s] -= mean;
        } else {
            for (std::size_t f = 0; f < F; ++f) {
                cf64 mean(0.0);
                for (std::size_t k = 0; k < w; ++k)
                    mean += row[k * F + f];
                mean /= static_cast<double>(w);
                for (std::size_t k = 0; k < w; ++k)
                    row[k * F + f] -= mean;
            }
        }
        double v = 0.0;
        for (std::size_t s = 0; s < S; ++s)
            v += std::norm(row[s]);
        var[m] = v;
    }

    for (std::size_t m = 0; m < M; ++m) {
        if (!(var[m] > 0.0))
            throw degenerate_element_error("compute_correlation: element " + std::to_string(m) +
                                           " has zero variance over the window");
    }

    correlation_matrix out;
    out.m = M;
    out.t0 = t0;
    out.window = w;
    out.r.assign(M * M, cf64(0.0));

    // Upper triangle; each (m, n) entry is an independent dot product, so
    // the result does not depend on how pairs are scheduled.
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t mi = 0; mi < static_cast<std::ptrdiff_t>(M); ++mi) {
        const auto m = static_cast<std::size_t>(mi);
        out.r[m * M + m] = cf64(1.0); // exact by construction
        const cf64* cm = c.data() + m * S;
        for (std::size_t n = m + 1; n < M; ++n) {
            const cf64* cn = c.data() + n * S;
            cf64 acc(0.0);
            for (std::size_t s = 0; s < S; ++s)
                acc += cm[s] * std::conj(cn[s]);
            const cf64 val = acc / std::sqrt(var[m] * var[n]);
            out.r[m * M + n] = val;
            out.r[n * M + m] = std::conj(val);
        }
    }
    return out;
}

std::size_t ura_layout::flat(std::size_t row, std::size_t col) const {
    if (row >= rows || col >= cols)
        throw index_error("ura_layout: element (" + std::to_string(row) + ", " +
                          std::to_string(col) + ") outside " + std::to_string(rows) + "x" +
                          std::to_string(cols) + " array");
    return row * cols + col;
}

std::pair<std::size_t, std::size_t> ura_layout::grid(std::size_t flat_index) const {
    if (flat_index >= count())
        throw index_error("ura_layout: flat index " + std::to_string(flat_index) +
                          " outside array of " + std::to_string(count()) + " elements");
    return {flat_index / cols, flat_index % cols};
}

double ura_layout::distance(std::size_t a, std::size_t b) const {
    const auto [ra, ca] = grid(a);
    const auto [rb, cb] = grid(b);
    const double dr = (static_cast<double>(ra) - static_cast<double>(rb));
    const double dc = (static_cast<double>(ca) - static_cast<double>(cb));
    return spacing * std::sqrt(dr * dr + dc * dc);
}

double half_wavelength_spacing(double f_c) {
    if (!(f_c > 0.0))
        throw range_error("half_wavelength_spacing: carrier frequency must be positive");
    return 0.5 * speed_of_light / f_c;
}

std::vector<double> element_map(const correlation_matrix& corr, const ura_layout& layout,
                                std::size_t ref_row, std::size_t ref_col) {
    if (layout.count() != corr.m)
        throw range_error("element_map: layout describes " + std::to_string(layout.count()) +
                          " elements but matrix has " + std::to_string(corr.m));
    const std::size_t ref = layout.flat(ref_row, ref_col);
    std::vector<double> map(layout.count());
    for (std::size_t e = 0; e < layout.count(); ++e)
        map[e] = corr.mag(ref, e);
    return map;
}

namespace {

// Power series sum_k (-1)^k (x^2/4)^k / (k!)^2; converges fast for |x| <= 12
// (worst-case rounding there is ~5e-11, dominated by cancellation).
double j0_series(double x) {
    const double q = x * x / 4.0;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 60; ++k) {
        term *= -q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300)
            break;
    }
    return sum;
}

// Hankel asymptotic expansion: J0(x) = sqrt(2/(pi x)) (P cos(x - pi/4)
// - Q sin(x - pi/4)) with Hankel symbols a_m = (0, m) satisfying
// a_m = -a_{m-1} (2m-1)^2 / (8m). Truncated at m = 13, which keeps the
// first omitted term below 1e-10 for x >= 12.
double j0_asymptotic(double x) {
    double a = 1.0; // (0, 0)
    double p = 1.0;
    double q = 0.0;
    double xp = 1.0; // x^-m accumulator
    int sp = 1;      // (-1)^k for P terms
    int sq = 1;      // (-1)^k for Q terms
    for (int m = 1; m <= 13; ++m) {
        const double tm = 2.0 * static_cast<double>(m) - 1.0;
        a *= -(tm * tm) / (8.0 * static_cast<double>(m));
        xp /= x;
        if (m % 2 == 0) {
            sp = -sp;
            p += sp * a * xp;
        } else {
            q += sq * a * xp;
            sq = -sq;
        }
    }
    const double chi = x - std::numbers::pi / 4.0;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

} // namespace

double bessel_j0(double x) {
    const double ax = std::abs(x);
    return ax <= 12.0 ? j0_series(ax) : j0_asymptotic(ax);
}

double jakes_reference(double d_s, double lambda) {
    if (d_s < 0.0)
        throw range_error("jakes_reference: element spacing must be non-negative");
    if (!(lambda > 0.0))
        throw range_error("jakes_reference: wavelength must be positive");
    const double j0 = bessel_j0(2.0 * std::numbers::pi * d_s / lambda);
    return j0 * j0;
}

} // namespace csiprism
