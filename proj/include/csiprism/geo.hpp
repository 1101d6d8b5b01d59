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
#include <vector>

#include "csiprism/types.hpp"

namespace csiprism {

// One trajectory fix in BS-relative east/north/up coordinates. Times are
// rebased so the first fix sits at t = 0, matching the CSI time axis.
struct track_sample {
    double t = 0.0;          // s since first fix
    double east = 0.0;       // m
    double north = 0.0;      // m
    double up = 0.0;         // m relative to the BS antenna phase center
    double dist3d = 0.0;     // m
    double horiz_dist = 0.0; // m
    double speed = 0.0;      // m/s, central difference of position
};

struct relative_track {
    std::vector<track_sample> samples;

    // Nearest-timestamp lookup (ties resolve to the earlier fix).
    const track_sample& nearest(double t) const;

    // Trapezoidal integral of speed over [t_lo, t_hi], clipped to the track.
    double traveled_between(double t_lo, double t_hi) const;
};

// WGS-84 radii of curvature at a latitude (degrees): meridional M and
// prime-vertical N.
void wgs84_radii(double lat_deg, double& meridional, double& prime_vertical);

// Local tangent-plane conversion about the BS antenna phase center. Flights
// here span well under 100 m, so the plane approximation holds to < 1 cm.
relative_track to_relative_track(const trajectory_log& log, const site_config& site);

// Inverse of the tangent-plane mapping: geodetic coordinates of a point at
// BS-relative east/north meters. Round-trips with to_relative_track.
void enu_to_geodetic(const site_config& site, double east, double north, double& lat_deg,
                     double& lon_deg);

// Total traveled path length / elapsed time.
double average_speed(const relative_track& track);

struct gaussian_fit {
    double mu = 0.0;
    double sigma = 0.0;
};

// Sliding-window attitude fluctuation statistics. Sigma series use the
// maximum-likelihood (1/N) convention; the Gaussian fit pools per-window
// mean-removed residuals over non-overlapping windows.
struct wobble_stats {
    std::size_t window = 0;
    std::vector<double> t;           // window-center times [s]
    std::vector<double> pitch_sigma; // degrees
    std::vector<double> roll_sigma;  // degrees
    gaussian_fit pitch_fit;
    gaussian_fit roll_fit;
};

wobble_stats compute_wobble(const trajectory_log& log, std::size_t window);

} // namespace csiprism
