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

#include "csiprism/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace csiprism {

namespace {

constexpr double wgs84_a = 6378137.0;            // semi-major axis [m]
constexpr double wgs84_e2 = 6.69437999014e-3;    // first eccentricity squared
constexpr double deg = std::numbers::pi / 180.0; // rad per degree

} // namespace

void wgs84_radii(double lat_deg, double& meridional, double& prime_vertical) {
    const double s = std::sin(lat_deg * deg);
    const double w2 = 1.0 - wgs84_e2 * s * s;
    const double w = std::sqrt(w2);
    prime_vertical = wgs84_a / w;
    meridional = wgs84_a * (1.0 - wgs84_e2) / (w2 * w);
}

const track_sample& relative_track::nearest(double t) const {
    const auto cmp = [](const track_sample& s, double v) { return s.t < v; };
    const auto it = std::lower_bound(samples.begin(), samples.end(), t, cmp);
    if (it == samples.begin())
        return samples.front();
    if (it == samples.end())
        return samples.back();
    const auto prev = std::prev(it);
    return (t - prev->t <= it->t - t) ? *prev : *it;
}

double relative_track::traveled_between(double t_lo, double t_hi) const {
    if (samples.size() < 2 || !(t_hi > t_lo))
        return 0.0;
    t_lo = std::max(t_lo, samples.front().t);
    t_hi = std::min(t_hi, samples.back().t);
    if (!(t_hi > t_lo))
        return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const double a = samples[i].t, b = samples[i + 1].t;
        const double lo = std::max(a, t_lo), hi = std::min(b, t_hi);
        if (!(hi > lo))
            continue;
        // linear speed between samples -> trapezoid on the clipped piece
        const double va = samples[i].speed, vb = samples[i + 1].speed;
        const double f_lo = (lo - a) / (b - a), f_hi = (hi - a) / (b - a);
        const double v_lo = va + (vb - va) * f_lo;
        const double v_hi = va + (vb - va) * f_hi;
        acc += 0.5 * (v_lo + v_hi) * (hi - lo);
    }
    return acc;
}

relative_track to_relative_track(const trajectory_log& log, const site_config& site) {
    if (log.records.empty())
        throw degenerate_input_error("to_relative_track: empty trajectory");
    if (log.records.size() < 2)
        throw degenerate_input_error("to_relative_track: speed undefined for a single fix");
    log.validate();

    double m_rad = 0.0, n_rad = 0.0;
    wgs84_radii(site.bs_lat, m_rad, n_rad);
    const double ref_alt = site.bs_alt_asl();
    const double r_north = m_rad + ref_alt;
    const double r_east = (n_rad + ref_alt) * std::cos(site.bs_lat * deg);

    relative_track track;
    track.samples.resize(log.records.size());
    const double t0 = log.records.front().t;
    for (std::size_t i = 0; i < log.records.size(); ++i) {
        const auto& r = log.records[i];
        auto& s = track.samples[i];
        s.t = r.t - t0;
        s.east = (r.lon - site.bs_lon) * deg * r_east;
        s.north = (r.lat - site.bs_lat) * deg * r_north;
        s.up = r.alt_asl - ref_alt;
        s.horiz_dist = std::hypot(s.east, s.north);
        s.dist3d = std::hypot(s.east, s.north, s.up);
    }

    // Central difference of position; one-sided at the ends.
    const auto vel = [&](std::size_t a, std::size_t b) {
        const auto& sa = track.samples[a];
        const auto& sb = track.samples[b];
        const double dt = sb.t - sa.t;
        return std::hypot(sb.east - sa.east, sb.north - sa.north, sb.up - sa.up) / dt;
    };
    const std::size_t n = track.samples.size();
    track.samples[0].speed = vel(0, 1);
    track.samples[n - 1].speed = vel(n - 2, n - 1);
    for (std::size_t i = 1; i + 1 < n; ++i)
        track.samples[i].speed = vel(i - 1, i + 1);
    return track;
}

void enu_to_geodetic(const site_config& site, double east, double north, double& lat_deg,
                     double& lon_deg) {
    double m_rad = 0.0, n_rad = 0.0;
    wgs84_radii(site.bs_lat, m_rad, n_rad);
    const double ref_alt = site.bs_alt_asl();
    const double r_north = m_rad + ref_alt;
    const double r_east = (n_rad + ref_alt) * std::cos(site.bs_lat * deg);
    lat_deg = site.bs_lat + north / (deg * r_north);
    lon_deg = site.bs_lon + east / (deg * r_east);
}

double average_speed(const relative_track& track) {
    if (track.samples.size() < 2)
        throw degenerate_input_error("average_speed: need at least 2 samples");
    double path = 0.0;
    for (std::size_t i = 0; i + 1 < track.samples.size(); ++i) {
        const auto& a = track.samples[i];
        const auto& b = track.samples[i + 1];
        path += std::hypot(b.east - a.east, b.north - a.north, b.up - a.up);
    }
    const double elapsed = track.samples.back().t - track.samples.front().t;
    return path / elapsed;
}

namespace {

// MLE sigma (1/N) of a window, mean removed.
double window_sigma(const std::vector<double>& v, std::size_t i0, std::size_t w) {
    double mean = 0.0;
    for (std::size_t i = i0; i < i0 + w; ++i)
        mean += v[i];
    mean /= static_cast<double>(w);
    double acc = 0.0;
    for (std::size_t i = i0; i < i0 + w; ++i) {
        const double d = v[i] - mean;
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(w));
}

gaussian_fit fit_residuals(const std::vector<double>& v, std::size_t w) {
    // Non-overlapping windows so each sample contributes once.
    double sum = 0.0, sum2 = 0.0;
    std::size_t count = 0;
    for (std::size_t i0 = 0; i0 + w <= v.size(); i0 += w) {
        double mean = 0.0;
        for (std::size_t i = i0; i < i0 + w; ++i)
            mean += v[i];
        mean /= static_cast<double>(w);
        for (std::size_t i = i0; i < i0 + w; ++i) {
            const double r = v[i] - mean;
            sum += r;
            sum2 += r * r;
            ++count;
        }
    }
    gaussian_fit fit;
    fit.mu = sum / static_cast<double>(count);
    fit.sigma = std::sqrt(std::max(sum2 / static_cast<double>(count) - fit.mu * fit.mu, 0.0));
    return fit;
}

} // namespace

wobble_stats compute_wobble(const trajectory_log& log, std::size_t window) {
    if (window < 2)
        throw degenerate_input_error("compute_wobble: window must be >= 2 samples");
    if (log.records.size() < window)
        throw degenerate_input_error("compute_wobble: window of " + std::to_string(window) +
                                     " exceeds log length " + std::to_string(log.records.size()));
    const std::size_t n = log.records.size();
    std::vector<double> pitch(n), roll(n);
    for (std::size_t i = 0; i < n; ++i) {
        pitch[i] = log.records[i].pitch;
        roll[i] = log.records[i].roll;
    }

    wobble_stats out;
    out.window = window;
    const std::size_t n_win = n - window + 1;
    out.t.resize(n_win);
    out.pitch_sigma.resize(n_win);
    out.roll_sigma.resize(n_win);
    const double t0 = log.records.front().t;
    for (std::size_t i = 0; i < n_win; ++i) {
        out.t[i] = 0.5 * (log.records[i].t + log.records[i + window - 1].t) - t0;
        out.pitch_sigma[i] = window_sigma(pitch, i, window);
        out.roll_sigma[i] = window_sigma(roll, i, window);
    }
    out.pitch_fit = fit_residuals(pitch, window);
    out.roll_fit = fit_residuals(roll, window);
    return out;
}

} // namespace csiprism
