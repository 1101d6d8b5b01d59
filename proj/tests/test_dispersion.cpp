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
#include <limits>
#include <vector>

#include <doctest.h>

#include "csiprism/dispersion.hpp"
#include "csiprism/errors.hpp"
#include "csiprism/kernels.hpp"
#include "helpers.hpp"

using namespace csiprism;

TEST_CASE("a single occupied delay bin has zero spread and exact mean") {
    std::vector<double> pdp(64, 0.0);
    pdp[9] = 3.7;
    const double dtau = 1.0 / 18e6;
    const auto m = rms_delay_spread(pdp, dtau);
    CHECK(m.rms_delay_spread == 0.0); // exactly, not approximately
    CHECK(m.mean_delay == doctest::Approx(9.0 * dtau).epsilon(1e-15));
    CHECK(m.integrated_power == doctest::Approx(3.7));
    CHECK_FALSE(m.clipped);
}

TEST_CASE("two equal taps 100 ns apart spread by exactly 50 ns") {
    // Discrete two-point distribution at 0 and 100 ns with equal mass:
    // mean 50 ns, standard deviation 50 ns. Written down before computing.
    const double want_mean = 50e-9;
    const double want_spread = 50e-9;

    const double dtau = 100e-9; // 10 MHz bandwidth grid
    std::vector<double> pdp(32, 0.0);
    pdp[0] = 1.0;
    pdp[1] = 1.0;
    const auto m = rms_delay_spread(pdp, dtau);
    CHECK(testutil::rel_err(m.mean_delay, want_mean) < 1e-12);
    CHECK(testutil::rel_err(m.rms_delay_spread, want_spread) < 1e-9);
}

TEST_CASE("exponential profile matches the geometric closed form") {
    // P(k) = exp(-k dtau / sigma). The discretized moments have the exact
    // geometric-distribution form: mean = dtau q/(1-q), sd = dtau sqrt(q)/(1-q)
    // with q = exp(-dtau/sigma); both approach sigma as dtau -> 0. Both the
    // closed form and sigma itself serve as oracles (1% against sigma).
    const double sigma = 500e-9;
    const double dtau = 50e-9;
    const double q = std::exp(-dtau / sigma);
    const double want_sd_exact = dtau * std::sqrt(q) / (1.0 - q);

    // 200 bins span 20 decay constants, so truncation (~q^200 = 2e-9 mass)
    // is far below the comparison tolerance.
    std::vector<double> pdp(200);
    for (std::size_t k = 0; k < pdp.size(); ++k)
        pdp[k] = std::exp(-static_cast<double>(k) * dtau / sigma);
    const auto m = rms_delay_spread(pdp, dtau);

    CHECK(testutil::rel_err(m.rms_delay_spread, want_sd_exact) < 1e-4);
    CHECK(testutil::rel_err(m.rms_delay_spread, sigma) < 0.01);
}

TEST_CASE("spread is invariant under profile scaling") {
    std::vector<double> pdp(50);
    const counter_rng rng(88, 0);
    for (std::size_t k = 0; k < pdp.size(); ++k)
        pdp[k] = rng.uniform(k) + 1e-3;
    const auto a = rms_delay_spread(pdp, 1e-8);
    for (auto& v : pdp)
        v *= 1234.5;
    const auto b = rms_delay_spread(pdp, 1e-8);
    CHECK(testutil::rel_err(b.rms_delay_spread, a.rms_delay_spread) < 1e-12);
    CHECK(testutil::rel_err(b.mean_delay, a.mean_delay) < 1e-12);
    CHECK(testutil::rel_err(b.integrated_power, 1234.5 * a.integrated_power) < 1e-12);
}

TEST_CASE("empty and negative profiles are rejected") {
    std::vector<double> zeros(8, 0.0);
    CHECK_THROWS_AS(rms_delay_spread(zeros, 1e-8), null_profile_error);
    std::vector<double> bad = {1.0, -0.5, 0.2};
    CHECK_THROWS_AS(rms_delay_spread(bad, 1e-8), range_error);
    std::vector<double> nan = {1.0, std::numeric_limits<double>::quiet_NaN()};
    CHECK_THROWS_AS(rms_delay_spread(nan, 1e-8), data_error);
}

TEST_CASE("noise gate zeroes strictly below the threshold") {
    // Peak 1.0 and a 20 dB gate: the cut sits at 0.01. A bin just above
    // stays, a bin just below goes, the boundary value stays.
    std::vector<double> pdp = {1.0, 0.0101, 0.01, 0.0099, 0.5};
    const auto gated = apply_noise_gate(pdp, 20.0);
    CHECK(gated[0] == 1.0);
    CHECK(gated[1] == 0.0101);
    CHECK(gated[2] == 0.01);
    CHECK(gated[3] == 0.0);
    CHECK(gated[4] == 0.5);

    // Non-positive gate disables.
    const auto off = apply_noise_gate(pdp, 0.0);
    CHECK(off == pdp);
}

TEST_CASE("gating removes the bias a noise floor adds to the spread") {
    // Exponential profile plus a flat floor 30 dB down: ungated moments are
    // dragged up by the floor. A 20 dB gate cuts the exponential near 4.6
    // decay constants, so the gated estimate sits slightly *below* the clean
    // value (truncation) but far closer to it than the raw one.
    const double sigma = 300e-9;
    const double dtau = 50e-9;
    std::vector<double> clean(120), noisy(120);
    for (std::size_t k = 0; k < clean.size(); ++k) {
        clean[k] = std::exp(-static_cast<double>(k) * dtau / sigma);
        noisy[k] = clean[k] + 1e-3;
    }
    const double want = rms_delay_spread(clean, dtau).rms_delay_spread;
    const double raw = rms_delay_spread(noisy, dtau).rms_delay_spread;
    const double gated =
        rms_delay_spread(apply_noise_gate(noisy, 20.0), dtau).rms_delay_spread;
    CHECK(raw > 1.5 * want); // the floor dominates the second moment
    CHECK(gated > 0.85 * want);
    CHECK(gated <= want);
    CHECK(std::abs(gated - want) < 0.5 * std::abs(raw - want));
}

TEST_CASE("series covers every window with track distances attached") {
    const auto t = testutil::random_tensor(40, 2, 16, 909);

    // Straight track at 2 m/s along east, one fix per 10 ms.
    const site_config site{};
    trajectory_log log;
    for (int i = 0; i < 9; ++i) {
        trajectory_record r;
        r.t = 0.01 * i;
        enu_to_geodetic(site, 2.0 * r.t, 0.0, r.lat, r.lon);
        r.alt_asl = site.bs_alt_asl();
        log.records.push_back(r);
    }
    const auto track = to_relative_track(log, site);

    const auto series = compute_delay_spread_series(t, &track, 10, 20.0);
    REQUIRE(series.points.size() == 4);
    CHECK(series.window == 10);
    CHECK(series.stride == 10);
    for (std::size_t i = 0; i < 4; ++i) {
        const double center = (10.0 * i + 5.0) * 1e-3;
        CHECK(series.points[i].t == doctest::Approx(center));
        // dist3d = |east| of the nearest fix to the window center.
        const double want = 2.0 * track.nearest(center).t;
        CHECK(series.points[i].dist3d == doctest::Approx(want).epsilon(1e-9));
        CHECK(series.points[i].rms_ds >= 0.0);
        CHECK(series.points[i].integrated_power > 0.0);
    }

    // Without a track all distances stay zero.
    const auto bare = compute_delay_spread_series(t, nullptr, 10, 20.0);
    for (const auto& p : bare.points)
        CHECK(p.dist3d == 0.0);
}

TEST_CASE("series route equals the explicit pdp route") {
    const auto t = testutil::random_tensor(30, 2, 8, 111);
    const auto pdps = kernels::pdp_rows(t, 10, 10);
    const auto via_pdp = compute_delay_spread_series(pdps, nullptr, 15.0);
    const auto via_tensor = compute_delay_spread_series(t, nullptr, 10, 15.0);
    REQUIRE(via_pdp.points.size() == via_tensor.points.size());
    for (std::size_t i = 0; i < via_pdp.points.size(); ++i) {
        CHECK(via_pdp.points[i].rms_ds == via_tensor.points[i].rms_ds);
        CHECK(via_pdp.points[i].mean_delay == via_tensor.points[i].mean_delay);
    }
}

TEST_CASE("cdf summary uses midpoint ordinates and MLE moments") {
    // Values {1, 2, 3}: ordinates (0.5, 1.5, 2.5)/3, mu = 2,
    // sigma = sqrt(2/3) under the 1/N convention.
    const std::vector<double> v = {3.0, 1.0, 2.0};
    const auto s = summarize_cdf(v);
    REQUIRE(s.values.size() == 3);
    CHECK(s.values[0] == 1.0); // sorted
    CHECK(s.values[2] == 3.0);
    CHECK(s.ordinates[0] == doctest::Approx(0.5 / 3.0));
    CHECK(s.ordinates[1] == doctest::Approx(1.5 / 3.0));
    CHECK(s.ordinates[2] == doctest::Approx(2.5 / 3.0));
    CHECK(s.mu == doctest::Approx(2.0));
    CHECK(s.sigma == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
    CHECK(s.fit.mu == doctest::Approx(s.mu));

    CHECK_THROWS_AS(summarize_cdf(std::vector<double>{1.0}), degenerate_input_error);
    const std::vector<double> with_nan = {1.0, std::numeric_limits<double>::quiet_NaN(), 2.0};
    CHECK_THROWS_AS(summarize_cdf(with_nan), data_error);
}
