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

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <doctest.h>

#include "csiprism/errors.hpp"
#include "csiprism/spatial.hpp"
#include "csiprism/synth.hpp"
#include "helpers.hpp"

using namespace csiprism;

namespace {

// Independent Bessel oracle: trapezoid rule on the integral representation
// J0(x) = (1/2pi) int_0^{2pi} cos(x sin(theta)) dtheta. For a smooth
// periodic integrand the N-point trapezoid sum converges exponentially;
// N = 512 is far below 1e-12 error for x <= 25. Shares nothing with the
// series/asymptotic evaluation under test.
double j0_integral(double x) {
    const std::size_t n = 512;
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / n;
        acc += std::cos(x * std::sin(theta));
    }
    return acc / static_cast<double>(n);
}

} // namespace

TEST_CASE("bessel j0 matches the integral oracle over the working range") {
    // Dense sweep across both evaluation regimes and the switchover.
    double max_err = 0.0;
    for (double x = 0.0; x <= 20.0; x += 0.01) {
        const double want = j0_integral(x);
        max_err = std::max(max_err, std::abs(bessel_j0(x) - want));
    }
    CHECK(max_err < 1e-10);

    // Symmetric, and exact at the origin.
    CHECK(bessel_j0(0.0) == 1.0);
    CHECK(bessel_j0(-3.3) == bessel_j0(3.3));
}

TEST_CASE("bessel j0 hits tabulated landmark values") {
    // Landmarks from standard tables, written down first.
    CHECK(std::abs(bessel_j0(1.0) - 0.7651976865579666) < 1e-10);
    CHECK(std::abs(bessel_j0(5.0) - (-0.17759677131433830)) < 1e-10);
    CHECK(std::abs(bessel_j0(10.0) - (-0.2459357644513483)) < 1e-10);
    CHECK(std::abs(bessel_j0(15.0) - (-0.014224472826780773)) < 1e-10);
    // First root: the function changes sign and is tiny nearby.
    CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-12);
}

TEST_CASE("isotropic-scattering correlation reference values") {
    const double lambda = speed_of_light / 2.61e9;

    // Co-located elements are fully correlated.
    CHECK(jakes_reference(0.0, lambda) == 1.0);

    // Half-wavelength spacing: J0(pi)^2, a standard landmark near 0.0924.
    const double want_half = std::pow(j0_integral(std::numbers::pi), 2);
    CHECK(std::abs(want_half - 0.0924) < 5e-4);
    CHECK(jakes_reference(0.5 * lambda, lambda) == doctest::Approx(want_half).epsilon(1e-10));

    // Spacing at the first Bessel root decorrelates completely.
    const double d_zero = 2.404825557695773 / (2.0 * std::numbers::pi) * lambda;
    CHECK(jakes_reference(d_zero, lambda) < 1e-9);

    CHECK_THROWS_AS(jakes_reference(-0.1, lambda), range_error);
    CHECK_THROWS_AS(jakes_reference(0.1, 0.0), range_error);
}

TEST_CASE("half wavelength spacing follows c / (2 f_c)") {
    const double want = 299792458.0 / (2.0 * 2.61e9); // 5.743 cm
    CHECK(half_wavelength_spacing(2.61e9) == doctest::Approx(want).epsilon(1e-12));
    CHECK(want == doctest::Approx(0.05743).epsilon(1e-3));
}

TEST_CASE("ura layout indexing and distances") {
    ura_layout l;
    l.rows = 8;
    l.cols = 8;
    l.spacing = 0.057;
    CHECK(l.count() == 64);
    CHECK(l.flat(0, 0) == 0);
    CHECK(l.flat(1, 0) == 8);
    CHECK(l.grid(9).first == 1);
    CHECK(l.grid(9).second == 1);
    CHECK(l.distance(0, 1) == doctest::Approx(0.057));
    CHECK(l.distance(0, 9) == doctest::Approx(0.057 * std::numbers::sqrt2));
    CHECK(l.distance(0, 63) == doctest::Approx(0.057 * std::hypot(7.0, 7.0)));
    CHECK_THROWS_AS(l.flat(8, 0), index_error);
    CHECK_THROWS_AS(l.grid(64), index_error);
}

TEST_CASE("correlation matrix is Hermitian with an exact unit diagonal") {
    const auto t = testutil::random_tensor(64, 6, 10, 42);
    const auto r = compute_correlation(t, 0, 64);
    REQUIRE(r.m == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(r.at(i, i) == cf64(1.0, 0.0)); // set exactly, not computed
        for (std::size_t j = 0; j < 6; ++j) {
            CHECK(r.at(i, j) == std::conj(r.at(j, i)));
            CHECK(r.mag(i, j) <= 1.0 + 1e-9); // Cauchy-Schwarz
        }
    }
}

TEST_CASE("per-element phase rotation leaves magnitudes unchanged") {
    const auto base = testutil::random_tensor(32, 4, 8, 43);
    csi_tensor rotated = base;
    const double phases[4] = {0.3, -1.2, 2.9, 0.77};
    for (std::size_t k = 0; k < 32; ++k)
        for (std::size_t n = 0; n < 4; ++n) {
            const cf32 rot(static_cast<float>(std::cos(phases[n])),
                           static_cast<float>(std::sin(phases[n])));
            for (std::size_t f = 0; f < 8; ++f)
                rotated.data[base.index(k, n, f)] *= rot;
        }

    const auto ra = compute_correlation(base, 0, 32);
    const auto rb = compute_correlation(rotated, 0, 32);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(ra.mag(i, j) == doctest::Approx(rb.mag(i, j)).epsilon(1e-6));
}

TEST_CASE("independent elements decorrelate at the Monte Carlo rate") {
    // 100 snapshots x 100 subcarriers = 1e4 pooled samples: off-diagonal
    // estimates of truly independent elements stay under 0.05.
    const auto t = testutil::random_tensor(100, 8, 100, 44);
    const auto r = compute_correlation(t, 0, 100);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            if (i != j)
                CHECK(r.mag(i, j) < 0.05);
}

TEST_CASE("a single plane wave correlates every pair fully") {
    // Rank-one snapshot: h_n(t, f) = a(t, f) * s_n with a fixed steering
    // vector. Centered samples stay proportional across elements.
    const std::size_t M = 5;
    csi_tensor t;
    t.n_time = 40;
    t.n_ant = M;
    t.n_sub = 6;
    t.dt = 1e-3;
    t.f_c = 2.61e9;
    t.bw = 18e6;
    t.data.resize(40 * M * 6);
    const counter_rng rng(45, 0);
    for (std::size_t k = 0; k < 40; ++k)
        for (std::size_t f = 0; f < 6; ++f) {
            const auto a = rng.cnormal(k * 6 + f);
            for (std::size_t n = 0; n < M; ++n) {
                const double ph = 0.9 * static_cast<double>(n);
                const cf64 s(std::cos(ph), std::sin(ph));
                const cf64 v = a * s;
                t.data[t.index(k, n, f)] =
                    cf32(static_cast<float>(v.real()), static_cast<float>(v.imag()));
            }
        }
    const auto r = compute_correlation(t, 0, 40);
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = 0; j < M; ++j)
            CHECK(r.mag(i, j) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("pooling modes agree when subcarriers share one mean") {
    const auto t = testutil::random_tensor(64, 4, 12, 46);
    const auto pooled = compute_correlation(t, 0, 64, corr_pooling::pooled);
    const auto per = compute_correlation(t, 0, 64, corr_pooling::per_subcarrier);
    // Zero-mean data: both centerings estimate the same quantity; only the
    // mean estimates differ, which moves the result by O(1/sqrt(samples)).
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::abs(pooled.mag(i, j) - per.mag(i, j)) < 0.02);
}

TEST_CASE("per-subcarrier centering removes static frequency offsets") {
    // Give each subcarrier a large fixed offset shared by all elements:
    // pooled centering is polluted, per-subcarrier centering recovers the
    // independence of the underlying draws.
    auto t = testutil::random_tensor(100, 4, 10, 47);
    for (std::size_t k = 0; k < 100; ++k)
        for (std::size_t n = 0; n < 4; ++n)
            for (std::size_t f = 0; f < 10; ++f)
                t.data[t.index(k, n, f)] += cf32(static_cast<float>(3.0 * f), 0.0f);
    const auto per = compute_correlation(t, 0, 100, corr_pooling::per_subcarrier);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j)
                CHECK(per.mag(i, j) < 0.06);
    const auto pooled = compute_correlation(t, 0, 100, corr_pooling::pooled);
    CHECK(pooled.mag(0, 1) > 0.9); // the offsets dominate the pooled moments
}

TEST_CASE("degenerate correlation inputs are rejected") {
    auto t = testutil::random_tensor(16, 3, 4, 48);
    CHECK_THROWS_AS(compute_correlation(t, 0, 4), degenerate_input_error); // w < 8
    CHECK_THROWS_AS(compute_correlation(t, 10, 16), index_error);

    // Flatten element 1 to a constant: zero variance, named in the error.
    for (std::size_t k = 0; k < 16; ++k)
        for (std::size_t f = 0; f < 4; ++f)
            t.data[t.index(k, 1, f)] = cf32(2.0f, -1.0f);
    try {
        compute_correlation(t, 0, 16);
        FAIL("expected degenerate_element_error");
    } catch (const degenerate_element_error& e) {
        CHECK(std::string(e.what()).find("1") != std::string::npos);
    }
}

TEST_CASE("colored draws reproduce the isotropic correlation within 0.05") {
    // 4x4 array at half wavelength, 1e4 pooled samples; the Monte Carlo
    // error of a correlation estimate at this size stays under 0.05.
    spatial_spec spec;
    spec.mode = spatial_mode::jakes_covariance;
    spec.layout.rows = 4;
    spec.layout.cols = 4;
    spec.layout.spacing = half_wavelength_spacing(2.61e9);
    spec.seed = 7;
    tensor_dims dims{100, 16, 100};
    const auto t = gen_spatially_correlated(spec, dims, 1e-3, 2.61e9, 18e6);

    const double lambda = speed_of_light / 2.61e9;
    const auto r = compute_correlation(t, 0, 100);
    double worst = 0.0;
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) {
            const double want = jakes_reference(spec.layout.distance(i, j), lambda);
            worst = std::max(worst, std::abs(r.mag(i, j) - want));
        }
    CHECK(worst < 0.05);
}

TEST_CASE("element map reshapes the reference row onto the grid") {
    const auto t = testutil::random_tensor(32, 6, 8, 49);
    const auto r = compute_correlation(t, 0, 32);
    ura_layout l;
    l.rows = 2;
    l.cols = 3;
    l.spacing = 0.05;
    const auto map = element_map(r, l, 0, 1);
    REQUIRE(map.size() == 6);
    const std::size_t ref = l.flat(0, 1);
    CHECK(map[ref] == doctest::Approx(1.0));
    for (std::size_t row = 0; row < 2; ++row)
        for (std::size_t col = 0; col < 3; ++col)
            CHECK(map[l.flat(row, col)] == doctest::Approx(r.mag(ref, l.flat(row, col))));

    ura_layout wrong;
    wrong.rows = 4;
    wrong.cols = 4;
    wrong.spacing = 0.05;
    CHECK_THROWS_AS(element_map(r, wrong, 0, 0), range_error);
}
