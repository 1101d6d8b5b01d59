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

#include "csiprism/synth.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "csiprism/errors.hpp"
#include "csiprism/rng.hpp"

namespace csiprism {

namespace {

csi_tensor blank_tensor(tensor_dims dims, double dt, double f_c, double bw) {
    if (dims.n_time < 1 || dims.n_ant < 1 || dims.n_sub < 1)
        throw range_error("synth: all tensor dimensions must be >= 1");
    if (!(dt > 0.0) || !(f_c > 0.0) || !(bw > 0.0))
        throw range_error("synth: dt, f_c and bw must be positive");
    csi_tensor out;
    out.n_time = dims.n_time;
    out.n_ant = dims.n_ant;
    out.n_sub = dims.n_sub;
    out.dt = dt;
    out.f_c = f_c;
    out.bw = bw;
    out.data.assign(dims.n_time * dims.n_ant * dims.n_sub, cf32(0.0f));
    return out;
}

// std::to_string renders sub-microsecond delays as "0.000000"; use %g so
// rejection messages carry the actual values.
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void check_taps(const tap_spec& spec, std::size_t n_sub, double bw) {
    if (spec.taps.empty())
        throw range_error("synth: tap list must not be empty");
    const double span = static_cast<double>(n_sub) / bw;
    for (std::size_t k = 0; k < spec.taps.size(); ++k) {
        const tap& tp = spec.taps[k];
        if (!(tp.delay_s >= 0.0) || !(tp.delay_s < span))
            throw range_error("synth: tap " + std::to_string(k) + " delay " + num(tp.delay_s) +
                              " s outside unambiguous span [0, " + num(span) + ")");
        if (!(tp.power > 0.0))
            throw range_error("synth: tap " + std::to_string(k) + " power must be positive");
        if (tp.clarke && tp.speed < 0.0)
            throw range_error("synth: tap " + std::to_string(k) + " speed must be non-negative");
    }
}

// Complex gain series of one tap over [0, count) local snapshots. Counter
// streams are keyed by the tap index so taps fade independently.
std::vector<cf64> tap_gains(const tap& tp, std::uint64_t seed, std::size_t tap_index,
                            std::size_t count, double dt, double f_c) {
    if (tp.clarke) {
        const std::uint64_t derived = counter_rng(seed, tap_index).bits(0);
        return gen_clarke_fading(tp.speed, f_c, count, dt, derived);
    }
    const counter_rng rng(seed, tap_index);
    const double phase0 = 2.0 * std::numbers::pi * rng.uniform(0);
    std::vector<cf64> g(count);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(count); ++k) {
        const double arg =
            2.0 * std::numbers::pi * tp.doppler_hz * static_cast<double>(k) * dt + phase0;
        g[static_cast<std::size_t>(k)] = cf64(std::cos(arg), std::sin(arg));
    }
    return g;
}

// Writes the tapped-delay channel into snapshots [t_begin, t_end). Each
// snapshot's frequency row is a pure function of (spec, snapshot index), so
// the block parallelism cannot change the bytes produced.
void fill_tapped(csi_tensor& out, const tap_spec& spec, std::size_t t_begin, std::size_t t_end) {
    check_taps(spec, out.n_sub, out.bw);
    const std::size_t F = out.n_sub;
    const std::size_t M = out.n_ant;
    const std::size_t K = spec.taps.size();
    const std::size_t count = t_end - t_begin;
    if (count == 0)
        return;

    // Per-tap frequency steering on the baseband grid f = m * bw / n_sub.
    std::vector<cf64> steer(K * F);
    const double df = out.bw / static_cast<double>(F);
    for (std::size_t k = 0; k < K; ++k) {
        const double amp = std::sqrt(spec.taps[k].power);
        for (std::size_t f = 0; f < F; ++f) {
            const double arg =
                -2.0 * std::numbers::pi * df * static_cast<double>(f) * spec.taps[k].delay_s;
            steer[k * F + f] = amp * cf64(std::cos(arg), std::sin(arg));
        }
    }

    std::vector<std::vector<cf64>> gains(K);
    for (std::size_t k = 0; k < K; ++k)
        gains[k] = tap_gains(spec.taps[k], spec.seed, k, count, out.dt, out.f_c);

#pragma omp parallel
    {
        std::vector<cf32> row(F);
#pragma omp for schedule(static)
        for (std::ptrdiff_t ti = 0; ti < static_cast<std::ptrdiff_t>(count); ++ti) {
            const auto tl = static_cast<std::size_t>(ti);
            for (std::size_t f = 0; f < F; ++f) {
                cf64 acc(0.0);
                for (std::size_t k = 0; k < K; ++k)
                    acc += gains[k][tl] * steer[k * F + f];
                row[f] = cf32(static_cast<float>(acc.real()), static_cast<float>(acc.imag()));
            }
            cf32* dst = out.data.data() + (t_begin + tl) * M * F;
            for (std::size_t n = 0; n < M; ++n)
                std::copy(row.begin(), row.end(), dst + n * F);
        }
    }
}

} // namespace

csi_tensor gen_tapped_delay(const tap_spec& spec, tensor_dims dims, double dt, double f_c,
                            double bw) {
    csi_tensor out = blank_tensor(dims, dt, f_c, bw);
    fill_tapped(out, spec, 0, dims.n_time);
    return out;
}

std::vector<cf64> gen_clarke_fading(double v, double f_c, std::size_t n_time, double dt,
                                    std::uint64_t seed, std::size_t n_rays) {
    if (v < 0.0)
        throw range_error("clarke: speed must be non-negative");
    if (!(f_c > 0.0) || !(dt > 0.0))
        throw range_error("clarke: f_c and dt must be positive");
    if (n_rays < 64)
        throw range_error("clarke: at least 64 rays required, got " + std::to_string(n_rays));

    const double f_d = v * f_c / speed_of_light;
    const counter_rng rng(seed, 0);
    const double rot = rng.uniform(0); // common random rotation of the ray fan

    std::vector<double> omega(n_rays), phase(n_rays);
    for (std::size_t i = 0; i < n_rays; ++i) {
        const double alpha =
            2.0 * std::numbers::pi * (static_cast<double>(i) + rot) / static_cast<double>(n_rays);
        omega[i] = 2.0 * std::numbers::pi * f_d * std::cos(alpha);
        phase[i] = 2.0 * std::numbers::pi * rng.uniform(1 + i);
    }

    std::vector<cf64> g(n_time);
    const double amp = 1.0 / std::sqrt(static_cast<double>(n_rays));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n_time); ++k) {
        const double t = static_cast<double>(k) * dt;
        cf64 acc(0.0);
        for (std::size_t i = 0; i < n_rays; ++i) {
            const double arg = omega[i] * t + phase[i];
            acc += cf64(std::cos(arg), std::sin(arg));
        }
        g[static_cast<std::size_t>(k)] = amp * acc;
    }
    return g;
}

csi_tensor gen_spatially_correlated(const spatial_spec& spec, tensor_dims dims, double dt,
                                    double f_c, double bw) {
    csi_tensor out = blank_tensor(dims, dt, f_c, bw);
    const std::size_t M = dims.n_ant;
    const std::size_t F = dims.n_sub;
    const counter_rng rng(spec.seed, 1);

    if (spec.mode == spatial_mode::iid) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t ti = 0; ti < static_cast<std::ptrdiff_t>(dims.n_time); ++ti) {
            const auto t = static_cast<std::size_t>(ti);
            for (std::size_t n = 0; n < M; ++n) {
                cf32* dst = out.data.data() + (t * M + n) * F;
                for (std::size_t f = 0; f < F; ++f) {
                    const cf64 z = rng.cnormal((t * F + f) * M + n);
                    dst[f] = cf32(static_cast<float>(z.real()), static_cast<float>(z.imag()));
                }
            }
        }
        return out;
    }

    if (spec.layout.count() != M)
        throw range_error("synth: layout describes " + std::to_string(spec.layout.count()) +
                          " elements but tensor has " + std::to_string(M) + " antennas");
    if (!(spec.layout.spacing > 0.0))
        throw range_error("synth: layout spacing must be positive");
    const double lambda = speed_of_light / f_c;

    if (spec.mode == spatial_mode::plane_wave) {
        // Single incoming plane wave: fixed (but arbitrary) arrival fixes
        // the steering phases; one scalar gain per (t, f) multiplies them.
        const double azimuth = 55.0 * std::numbers::pi / 180.0;
        const double elevation = 35.0 * std::numbers::pi / 180.0;
        const double kx = std::cos(elevation) * std::cos(azimuth);
        const double ky = std::cos(elevation) * std::sin(azimuth);
        std::vector<cf64> steer(M);
        for (std::size_t n = 0; n < M; ++n) {
            const auto [r, c] = spec.layout.grid(n);
            const double pos_x = static_cast<double>(r) * spec.layout.spacing;
            const double pos_y = static_cast<double>(c) * spec.layout.spacing;
            const double arg = 2.0 * std::numbers::pi / lambda * (kx * pos_x + ky * pos_y);
            steer[n] = cf64(std::cos(arg), std::sin(arg));
        }
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t ti = 0; ti < static_cast<std::ptrdiff_t>(dims.n_time); ++ti) {
            const auto t = static_cast<std::size_t>(ti);
            for (std::size_t f = 0; f < F; ++f) {
                const cf64 a = rng.cnormal(t * F + f);
                for (std::size_t n = 0; n < M; ++n) {
                    const cf64 z = a * steer[n];
                    out.data[(t * M + n) * F + f] =
                        cf32(static_cast<float>(z.real()), static_cast<float>(z.imag()));
                }
            }
        }
        return out;
    }

    // jakes_covariance: real symmetric C(m, n) = J0^2(2 pi d(m,n)/lambda) is
    // positive semi-definite (elementwise square of the isotropic-ring
    // kernel), so the symmetric eigendecomposition yields a real root L with
    // L L^T = C and colored draws h = L g carry exactly covariance C.
    Eigen::MatrixXd cov(M, M);
    for (std::size_t m = 0; m < M; ++m)
        for (std::size_t n = 0; n < M; ++n)
            cov(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) =
                jakes_reference(spec.layout.distance(m, n), lambda);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.info() != Eigen::Success)
        throw spec_error("synth: covariance eigendecomposition failed");
    const double ev_max = eig.eigenvalues().maxCoeff();
    const double tol = 1e-10 * std::max(ev_max, 1.0);
    Eigen::VectorXd root = eig.eigenvalues();
    for (Eigen::Index i = 0; i < root.size(); ++i) {
        if (root(i) < -tol)
            throw spec_error("synth: covariance is not positive semi-definite (eigenvalue " +
                             std::to_string(root(i)) + ")");
        root(i) = std::sqrt(std::max(root(i), 0.0));
    }
    const Eigen::MatrixXd color =
        eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();

#pragma omp parallel
    {
        std::vector<cf64> g(M), h(M);
#pragma omp for schedule(static)
        for (std::ptrdiff_t ti = 0; ti < static_cast<std::ptrdiff_t>(dims.n_time); ++ti) {
            const auto t = static_cast<std::size_t>(ti);
            for (std::size_t f = 0; f < F; ++f) {
                for (std::size_t n = 0; n < M; ++n)
                    g[n] = rng.cnormal((t * F + f) * M + n);
                for (std::size_t m = 0; m < M; ++m) {
                    cf64 acc(0.0);
                    for (std::size_t n = 0; n < M; ++n)
                        acc += color(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) *
                               g[n];
                    h[m] = acc;
                }
                for (std::size_t m = 0; m < M; ++m)
                    out.data[(t * M + m) * F + f] =
                        cf32(static_cast<float>(h[m].real()), static_cast<float>(h[m].imag()));
            }
        }
    }
    return out;
}

csi_tensor gen_nonstationary_switch(const tap_spec& spec_a, const tap_spec& spec_b,
                                    std::size_t switch_at, tensor_dims dims, double dt,
                                    double f_c, double bw) {
    if (switch_at > dims.n_time)
        throw index_error("synth: switch index " + std::to_string(switch_at) +
                          " outside time axis of length " + std::to_string(dims.n_time));
    csi_tensor out = blank_tensor(dims, dt, f_c, bw);
    check_taps(spec_a, out.n_sub, out.bw); // both specs must be valid even if a
    check_taps(spec_b, out.n_sub, out.bw); // degenerate switch skips one side
    if (switch_at > 0)
        fill_tapped(out, spec_a, 0, switch_at);
    if (switch_at < dims.n_time)
        fill_tapped(out, spec_b, switch_at, dims.n_time);
    return out;
}

} // namespace csiprism
