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
#include <span>
#include <vector>

#include "csiprism/types.hpp"

namespace csiprism {

// Taper applied along the subcarrier axis before the delay transform.
// Rectangular (none) is the default; Hann exists for leakage studies.
enum class delay_taper { rect, hann };

// Channel impulse response h(t, n, tau): same time/antenna axes as the
// source, delay axis of n_sub bins of width dtau = 1/bw.
struct cir {
    std::vector<cf64> data; // row-major (t, n, tau)
    std::size_t n_time = 0;
    std::size_t n_ant = 0;
    std::size_t n_sub = 0;
    double dt = 0.0;
    double dtau = 0.0;

    std::span<const cf64> row(std::size_t t, std::size_t n) const {
        return {data.data() + (t * n_ant + n) * n_sub, n_sub};
    }
};

// Unitary inverse DFT along the subcarrier axis, per (t, n). Energy is
// preserved (Parseval).
cir ctf_to_cir(tensor_view t, delay_taper taper = delay_taper::rect);

// Forward companion: reproduces the CTF row from a CIR row (rect taper only).
void cir_to_ctf_row(std::span<const cf64> h, std::span<cf64> ctf);

// |h(t, n, tau)|^2, linear power per delay bin.
std::vector<double> instantaneous_pdp(const cir& c, std::size_t t, std::size_t n);

// Eq-style averaged PDP over w snapshots starting at t0 and all antennas:
// P_h(t0, tau) = 1/(M*w) * sum_k sum_n |h(t_k, n, tau)|^2.
std::vector<double> averaged_pdp(const cir& c, std::size_t t0, std::size_t w);

// Series of window-averaged PDPs over regular windows.
struct pdp_matrix {
    std::vector<double> p; // row-major (window, delay bin)
    std::size_t n_windows = 0;
    std::size_t n_delay = 0;
    std::size_t window = 0; // W, samples per window
    std::size_t stride = 0;
    double dt = 0.0;   // snapshot interval [s]
    double dtau = 0.0; // delay bin width [s]

    std::span<const double> row(std::size_t i) const { return {p.data() + i * n_delay, n_delay}; }
    double t_start(std::size_t i) const { return static_cast<double>(i * stride) * dt; }
    double t_center(std::size_t i) const {
        return (static_cast<double>(i * stride) + static_cast<double>(window) / 2.0) * dt;
    }
    double t_end(std::size_t i) const { return static_cast<double>(i * stride + window) * dt; }
};

// How the antenna axis is reduced when rendering power spectra.
enum class antenna_reduce { power_mean, coherent_mean };

// Doppler-variant functions over a window of w snapshots: B(nu, f) from the
// forward DFT of H(t, f) over time, s(nu, tau) additionally inverse-
// transformed over f. Complex arrays come from the coherent antenna mean;
// power renderings reduce antennas per `reduce`. All Doppler axes are
// fftshifted so nu = 0 sits at bin floor(w/2).
struct doppler_functions {
    std::vector<cf64> b;          // (nu, f), coherent antenna mean
    std::vector<cf64> s;          // (nu, tau)
    std::vector<double> b_power;  // (nu, f), antennas reduced per `reduce`
    std::vector<double> s_power;  // (nu, tau)
    std::vector<double> doppler_hz;
    std::size_t n_dopp = 0;
    std::size_t n_sub = 0;
    double dtau = 0.0;
    antenna_reduce reduce = antenna_reduce::power_mean;
};

doppler_functions compute_doppler(tensor_view t, std::size_t t0, std::size_t w,
                                  antenna_reduce reduce = antenna_reduce::power_mean);

// f_D(max) = v_max * f_c / c.
double max_doppler(double v_max, double f_c);

} // namespace csiprism
