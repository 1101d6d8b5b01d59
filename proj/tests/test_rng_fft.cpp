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

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "csiprism/fft.hpp"
#include "csiprism/rng.hpp"
#include "csiprism/types.hpp"

using csiprism::cf64;
using csiprism::counter_rng;

namespace {

std::vector<cf64> random_signal(std::size_t n, std::uint64_t seed) {
    std::vector<cf64> x(n);
    const counter_rng rng(seed, 0);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = rng.cnormal(i);
    return x;
}

double energy(const std::vector<cf64>& x) {
    double e = 0.0;
    for (const auto& v : x)
        e += std::norm(v);
    return e;
}

} // namespace

TEST_CASE("counter rng is a pure function of seed, stream and counter") {
    const counter_rng a(42, 7);
    const counter_rng b(42, 7);
    for (std::uint64_t c = 0; c < 64; ++c)
        CHECK(a.bits(c) == b.bits(c));

    const counter_rng other_stream(42, 8);
    const counter_rng other_seed(43, 7);
    std::size_t diff_stream = 0;
    std::size_t diff_seed = 0;
    for (std::uint64_t c = 0; c < 64; ++c) {
        diff_stream += (a.bits(c) != other_stream.bits(c)) ? 1 : 0;
        diff_seed += (a.bits(c) != other_seed.bits(c)) ? 1 : 0;
    }
    CHECK(diff_stream == 64);
    CHECK(diff_seed == 64);
}

TEST_CASE("uniform lands in [0, 1) and fills the interval") {
    const counter_rng rng(1, 0);
    double lo = 1.0;
    double hi = 0.0;
    for (std::uint64_t c = 0; c < 100000; ++c) {
        const double u = rng.uniform(c);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo < 1e-3);
    CHECK(hi > 1.0 - 1e-3);
}

TEST_CASE("normal pair has standard moments") {
    // Sample-mean tolerance ~4/sqrt(n) on 2e5 draws per component.
    const counter_rng rng(5, 3);
    const std::size_t n = 100000;
    double sum = 0.0;
    double sum2 = 0.0;
    for (std::uint64_t c = 0; c < n; ++c) {
        const auto z = rng.normal_pair(c);
        sum += z.real() + z.imag();
        sum2 += z.real() * z.real() + z.imag() * z.imag();
    }
    const double mean = sum / (2.0 * n);
    const double var = sum2 / (2.0 * n) - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("cnormal has unit total variance split across components") {
    const counter_rng rng(11, 1);
    const std::size_t n = 100000;
    double pr = 0.0;
    double pi = 0.0;
    for (std::uint64_t c = 0; c < n; ++c) {
        const auto z = rng.cnormal(c);
        pr += z.real() * z.real();
        pi += z.imag() * z.imag();
    }
    CHECK(std::abs(pr / n - 0.5) < 0.01);
    CHECK(std::abs(pi / n - 0.5) < 0.01);
}

TEST_CASE("forward transform of a pure tone concentrates in one bin") {
    // x[n] = exp(j 2 pi k0 n / N) has unitary DFT sqrt(N) at bin k0, 0
    // elsewhere; expected values written down before the transform runs.
    const std::size_t n = 64;
    const std::size_t k0 = 5;
    const double expected_peak = std::sqrt(static_cast<double>(n));

    std::vector<cf64> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ph = 2.0 * std::numbers::pi * static_cast<double>(k0 * i) / n;
        x[i] = {std::cos(ph), std::sin(ph)};
    }
    std::vector<cf64> y(n);
    csiprism::fft::forward(x, y);

    CHECK(std::abs(y[k0].real() - expected_peak) < 1e-12);
    CHECK(std::abs(y[k0].imag()) < 1e-12);
    for (std::size_t k = 0; k < n; ++k) {
        if (k == k0)
            continue;
        CHECK(std::abs(y[k]) < 1e-12);
    }
}

TEST_CASE("forward then inverse is the identity and preserves energy") {
    for (std::size_t n : {1u, 2u, 7u, 100u, 128u, 1000u}) {
        const auto x = random_signal(n, 1000 + n);
        std::vector<cf64> y(n);
        std::vector<cf64> back(n);
        csiprism::fft::forward(x, y);
        csiprism::fft::inverse(y, back);

        double max_err = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            max_err = std::max(max_err, std::abs(back[i] - x[i]));
        CHECK(max_err < 1e-13 * std::sqrt(static_cast<double>(n)));

        // Unitary convention: spectrum energy equals signal energy.
        const double ex = energy(x);
        const double ey = energy(y);
        CHECK(std::abs(ex - ey) / ex < 1e-13);
    }
}

TEST_CASE("fft matches the naive reference transform") {
    const std::size_t n = 128;
    const auto x = random_signal(n, 77);
    std::vector<cf64> fast(n);
    std::vector<cf64> naive(n);
    csiprism::fft::forward(x, fast);
    csiprism::fft::ref::forward(x, naive);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(fast[i] - naive[i]) < 1e-10);

    csiprism::fft::inverse(x, fast);
    csiprism::fft::ref::inverse(x, naive);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(fast[i] - naive[i]) < 1e-10);
}

TEST_CASE("shift moves bin zero to floor(N/2) for even and odd lengths") {
    for (std::size_t n : {8u, 9u}) {
        std::vector<double> d(n, 0.0);
        d[0] = 1.0; // marker on the zero-frequency bin
        csiprism::fft::shift(std::span<double>(d));
        for (std::size_t i = 0; i < n; ++i)
            CHECK(d[i] == (i == n / 2 ? 1.0 : 0.0));
    }
}

TEST_CASE("freq axis is uniform, centered, and zero at the shifted origin") {
    // N = 4, dt = 1 s: bins (k - 2) / 4 = -0.5, -0.25, 0, 0.25 Hz.
    const auto ax = csiprism::fft::freq_axis(4, 1.0);
    REQUIRE(ax.size() == 4);
    CHECK(ax[0] == doctest::Approx(-0.5));
    CHECK(ax[1] == doctest::Approx(-0.25));
    CHECK(ax[2] == doctest::Approx(0.0));
    CHECK(ax[3] == doctest::Approx(0.25));

    const auto odd = csiprism::fft::freq_axis(5, 0.001);
    CHECK(odd[5 / 2] == doctest::Approx(0.0));
    CHECK(odd[1] - odd[0] == doctest::Approx(1.0 / (5 * 0.001)));
}

TEST_CASE("shifted tone lands on the freq axis value it was built with") {
    // Build a tone at exactly nu0 = m / (N dt), transform, shift, and check
    // the peak sits where freq_axis says nu0 lives.
    const std::size_t n = 32;
    const double dt = 0.5;
    const int m = -3;
    const double nu0 = static_cast<double>(m) / (static_cast<double>(n) * dt);

    std::vector<cf64> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ph = 2.0 * std::numbers::pi * nu0 * static_cast<double>(i) * dt;
        x[i] = {std::cos(ph), std::sin(ph)};
    }
    std::vector<cf64> y(n);
    csiprism::fft::forward(x, y);
    csiprism::fft::shift(std::span<cf64>(y));

    const auto ax = csiprism::fft::freq_axis(n, dt);
    std::size_t peak = 0;
    for (std::size_t k = 1; k < n; ++k)
        if (std::abs(y[k]) > std::abs(y[peak]))
            peak = k;
    CHECK(ax[peak] == doctest::Approx(nu0));
}
