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
//
// csi-prism command line front end.
//
//   csi-prism analyze --csi data.csit [--trajectory flight.csv] [options]
//   csi-prism synth   --spec channel.cfg --out base
//   csi-prism inspect data.csit
//
// Exit codes: 0 success, 1 internal failure, 2 usage or input problem.
// CSI_PRISM_OUTDIR overrides the output directory of every subcommand.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "csiprism/errors.hpp"
#include "csiprism/geo.hpp"
#include "csiprism/pipeline.hpp"
#include "csiprism/rng.hpp"
#include "csiprism/synth.hpp"
#include "csiprism/tensor_io.hpp"

namespace {

namespace fs = std::filesystem;
using namespace csiprism;

constexpr int exit_ok = 0;
constexpr int exit_internal = 1;
constexpr int exit_usage = 2;

// ---- shared option plumbing ---------------------------------------------

std::size_t parse_count(const std::string& key, const std::string& value) {
    try {
        const long long v = std::stoll(value);
        if (v < 0)
            throw range_error(key + " must be non-negative, got " + value);
        return static_cast<std::size_t>(v);
    } catch (const csiprism::error&) {
        throw;
    } catch (const std::exception&) {
        throw format_error("cannot parse " + key + "='" + value + "' as an integer");
    }
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        return std::stod(value);
    } catch (const std::exception&) {
        throw format_error("cannot parse " + key + "='" + value + "' as a number");
    }
}

void apply_analyze_key(run_config& cfg, const std::string& key, const std::string& value) {
    if (key == "csi")
        cfg.csi_path = value;
    else if (key == "trajectory")
        cfg.traj_path = value;
    else if (key == "out_dir")
        cfg.out_dir = value;
    else if (key == "window")
        cfg.window = parse_count(key, value);
    else if (key == "stride")
        cfg.stride = parse_count(key, value);
    else if (key == "gate_db")
        cfg.gate_db = parse_real(key, value);
    else if (key == "c_th")
        cfg.c_th = parse_real(key, value);
    else if (key == "noise_mode")
        cfg.noise.mode = parse_noise_mode(value);
    else if (key == "noise_power")
        cfg.noise.noise_power = parse_real(key, value);
    else if (key == "decimation")
        cfg.decimation = parse_count(key, value);
    else if (key == "ref_window")
        cfg.ref_window = parse_count(key, value);
    else if (key == "span_rule")
        cfg.rule = parse_span_rule(value);
    else if (key == "doppler_reduce")
        cfg.doppler_reduce = parse_antenna_reduce(value);
    else if (key == "corr_pooling")
        cfg.pooling = parse_corr_pooling(value);
    else if (key == "ura_rows")
        cfg.ura_rows = parse_count(key, value);
    else if (key == "ura_cols")
        cfg.ura_cols = parse_count(key, value);
    else if (key == "element_spacing")
        cfg.element_spacing = parse_real(key, value);
    else if (key == "speed")
        cfg.speed = parse_real(key, value);
    else if (key == "wobble_window")
        cfg.wobble_window = parse_count(key, value);
    else if (key == "bs_lat")
        cfg.site.bs_lat = parse_real(key, value);
    else if (key == "bs_lon")
        cfg.site.bs_lon = parse_real(key, value);
    else if (key == "bs_height_agl")
        cfg.site.bs_height_agl = parse_real(key, value);
    else if (key == "ground_asl")
        cfg.site.ground_asl = parse_real(key, value);
    else
        throw format_error("unknown config key '" + key + "'");
}

// ---- analyze --------------------------------------------------------------

struct analyze_cli {
    std::string csi, trajectory, config, out_dir;
    std::size_t window = 0, stride = 0, decimation = 0, ref_window = 0;
    std::size_t ura_rows = 0, ura_cols = 0, wobble_window = 0;
    double gate_db = 0.0, c_th = 0.0, noise_power = 0.0, element_spacing = 0.0, speed = 0.0;
    double bs_lat = 0.0, bs_lon = 0.0, bs_height_agl = 0.0, ground_asl = 0.0;
    std::string noise_mode, span_rule, doppler_reduce, corr_pooling;
};

void add_analyze_options(CLI::App& cmd, analyze_cli& a) {
    cmd.add_option("--csi", a.csi, "channel tensor (.csit)");
    cmd.add_option("--trajectory", a.trajectory, "flight log CSV");
    cmd.add_option("--config", a.config, "key=value config file (flags win)");
    cmd.add_option("--out", a.out_dir, "output directory (default .)");
    cmd.add_option("--window", a.window, "snapshots per analysis window (default 100)");
    cmd.add_option("--stride", a.stride, "window stride (default: window)");
    cmd.add_option("--gate-db", a.gate_db, "PDP noise gate in dB, <=0 disables (default 20)");
    cmd.add_option("--c-th", a.c_th, "divergence threshold (default exp(-1))");
    cmd.add_option("--noise-mode", a.noise_mode, "fixed|pdp_tail (default fixed)");
    cmd.add_option("--noise-power", a.noise_power, "linear noise power (default 1)");
    cmd.add_option("--decimation", a.decimation, "SE snapshot stride (default 100)");
    cmd.add_option("--ref-window", a.ref_window, "Doppler/correlation window (default 0)");
    cmd.add_option("--span-rule", a.span_rule, "contiguous|farthest (default contiguous)");
    cmd.add_option("--doppler-reduce", a.doppler_reduce, "power|coherent (default power)");
    cmd.add_option("--corr-pooling", a.corr_pooling, "pooled|per_subcarrier (default pooled)");
    cmd.add_option("--ura-rows", a.ura_rows, "array rows (default 8)");
    cmd.add_option("--ura-cols", a.ura_cols, "array columns (default 8)");
    cmd.add_option("--element-spacing", a.element_spacing,
                   "element pitch in m (default: half wavelength)");
    cmd.add_option("--speed", a.speed, "fallback speed m/s when no trajectory given");
    cmd.add_option("--wobble-window", a.wobble_window, "fixes per attitude window (default 5)");
    cmd.add_option("--bs-lat", a.bs_lat, "base station latitude, degrees");
    cmd.add_option("--bs-lon", a.bs_lon, "base station longitude, degrees");
    cmd.add_option("--bs-height-agl", a.bs_height_agl, "antenna height above ground, m");
    cmd.add_option("--ground-asl", a.ground_asl, "site ground altitude ASL, m");
}

run_config build_config(const CLI::App& cmd, const analyze_cli& a) {
    run_config cfg;
    if (!a.config.empty()) {
        for (const auto& [k, v] : read_kv_file(a.config))
            apply_analyze_key(cfg, k, v);
    }
    const auto take = [&cmd](const std::string& flag, auto& dst, const auto& src) {
        if (cmd.count(flag) > 0)
            dst = src;
    };
    take("--csi", cfg.csi_path, a.csi);
    take("--trajectory", cfg.traj_path, a.trajectory);
    take("--out", cfg.out_dir, a.out_dir);
    take("--window", cfg.window, a.window);
    take("--stride", cfg.stride, a.stride);
    take("--gate-db", cfg.gate_db, a.gate_db);
    take("--c-th", cfg.c_th, a.c_th);
    take("--noise-power", cfg.noise.noise_power, a.noise_power);
    take("--decimation", cfg.decimation, a.decimation);
    take("--ref-window", cfg.ref_window, a.ref_window);
    take("--ura-rows", cfg.ura_rows, a.ura_rows);
    take("--ura-cols", cfg.ura_cols, a.ura_cols);
    take("--element-spacing", cfg.element_spacing, a.element_spacing);
    take("--speed", cfg.speed, a.speed);
    take("--wobble-window", cfg.wobble_window, a.wobble_window);
    take("--bs-lat", cfg.site.bs_lat, a.bs_lat);
    take("--bs-lon", cfg.site.bs_lon, a.bs_lon);
    take("--bs-height-agl", cfg.site.bs_height_agl, a.bs_height_agl);
    take("--ground-asl", cfg.site.ground_asl, a.ground_asl);
    if (cmd.count("--noise-mode") > 0)
        cfg.noise.mode = parse_noise_mode(a.noise_mode);
    if (cmd.count("--span-rule") > 0)
        cfg.rule = parse_span_rule(a.span_rule);
    if (cmd.count("--doppler-reduce") > 0)
        cfg.doppler_reduce = parse_antenna_reduce(a.doppler_reduce);
    if (cmd.count("--corr-pooling") > 0)
        cfg.pooling = parse_corr_pooling(a.corr_pooling);
    if (const char* env = std::getenv("CSI_PRISM_OUTDIR"); env != nullptr && *env != '\0')
        cfg.out_dir = env; // environment override wins over flag and config
    return cfg;
}

int cmd_analyze(const CLI::App& cmd, const analyze_cli& a) {
    run_config cfg;
    try {
        cfg = build_config(cmd, a);
        validate_analyze_inputs(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "csi-prism analyze: %s\n", e.what());
        return exit_usage;
    }
    try {
        const analyze_result res = run_analyze(cfg);
        for (const auto& [name, hash] : res.files)
            std::printf("wrote %s/%s\n", cfg.out_dir.c_str(), name.c_str());
        std::printf("wrote %s\n", res.manifest_path.string().c_str());
        for (const auto& n : res.notes)
            std::printf("note: %s\n", n.c_str());
        return exit_ok;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "csi-prism analyze: internal: %s\n", e.what());
        return exit_internal;
    }
}

// ---- synth ------------------------------------------------------------------

struct synth_settings {
    std::string kind = "tapped_delay";
    tensor_dims dims{1000, 8, 100};
    double dt = 1e-3;
    double f_c = 2.61e9;
    double bw = 18e6;
    std::uint64_t seed = 1;
    tap_spec taps_a;
    tap_spec taps_b;
    std::size_t switch_at = 0;
    spatial_spec spatial;
    double clarke_speed = 3.0;
    // optional synthetic flight track
    double traj_speed = 0.0; // > 0 enables trajectory output
    double traj_heading_deg = 45.0;
    double traj_rate_hz = 5.0;
    double traj_alt_asl = 65.0;
    double traj_start_east = 5.0;
    double traj_start_north = 5.0;
    double traj_wobble_deg = 0.5;
    site_config site{};
};

tap parse_tap(const std::string& value) {
    std::vector<std::string> parts;
    std::string cur;
    for (const char c : value) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() < 2)
        throw format_error("tap '" + value + "': expected delay:power[:doppler|clarke:speed]");
    tap t;
    t.delay_s = parse_real("tap delay", parts[0]);
    t.power = parse_real("tap power", parts[1]);
    if (parts.size() >= 3) {
        if (parts[2] == "clarke") {
            t.clarke = true;
            t.speed = parts.size() >= 4 ? parse_real("tap speed", parts[3]) : 3.0;
        } else {
            t.doppler_hz = parse_real("tap doppler", parts[2]);
        }
    }
    return t;
}

synth_settings parse_synth_spec(const fs::path& path) {
    synth_settings s;
    for (const auto& [key, value] : read_kv_file(path)) {
        if (key == "kind")
            s.kind = value;
        else if (key == "n_time")
            s.dims.n_time = parse_count(key, value);
        else if (key == "n_ant")
            s.dims.n_ant = parse_count(key, value);
        else if (key == "n_sub")
            s.dims.n_sub = parse_count(key, value);
        else if (key == "dt")
            s.dt = parse_real(key, value);
        else if (key == "f_c")
            s.f_c = parse_real(key, value);
        else if (key == "bw")
            s.bw = parse_real(key, value);
        else if (key == "seed")
            s.seed = static_cast<std::uint64_t>(parse_count(key, value));
        else if (key == "tap")
            s.taps_a.taps.push_back(parse_tap(value));
        else if (key == "tap_b")
            s.taps_b.taps.push_back(parse_tap(value));
        else if (key == "switch_at")
            s.switch_at = parse_count(key, value);
        else if (key == "mode") {
            if (value == "iid")
                s.spatial.mode = spatial_mode::iid;
            else if (value == "plane_wave")
                s.spatial.mode = spatial_mode::plane_wave;
            else if (value == "jakes_covariance")
                s.spatial.mode = spatial_mode::jakes_covariance;
            else
                throw format_error("unknown spatial mode '" + value + "'");
        } else if (key == "ura_rows")
            s.spatial.layout.rows = parse_count(key, value);
        else if (key == "ura_cols")
            s.spatial.layout.cols = parse_count(key, value);
        else if (key == "element_spacing")
            s.spatial.layout.spacing = parse_real(key, value);
        else if (key == "clarke_speed")
            s.clarke_speed = parse_real(key, value);
        else if (key == "traj_speed")
            s.traj_speed = parse_real(key, value);
        else if (key == "traj_heading_deg")
            s.traj_heading_deg = parse_real(key, value);
        else if (key == "traj_rate_hz")
            s.traj_rate_hz = parse_real(key, value);
        else if (key == "traj_alt_asl")
            s.traj_alt_asl = parse_real(key, value);
        else if (key == "traj_start_east")
            s.traj_start_east = parse_real(key, value);
        else if (key == "traj_start_north")
            s.traj_start_north = parse_real(key, value);
        else if (key == "traj_wobble_deg")
            s.traj_wobble_deg = parse_real(key, value);
        else if (key == "bs_lat")
            s.site.bs_lat = parse_real(key, value);
        else if (key == "bs_lon")
            s.site.bs_lon = parse_real(key, value);
        else if (key == "bs_height_agl")
            s.site.bs_height_agl = parse_real(key, value);
        else if (key == "ground_asl")
            s.site.ground_asl = parse_real(key, value);
        else
            throw format_error("unknown synth key '" + key + "'");
    }
    return s;
}

csi_tensor generate(const synth_settings& s) {
    if (s.kind == "tapped_delay") {
        tap_spec spec = s.taps_a;
        spec.seed = s.seed;
        return gen_tapped_delay(spec, s.dims, s.dt, s.f_c, s.bw);
    }
    if (s.kind == "clarke") {
        // One Clarke-faded tap at delay zero: flat fading across the band.
        tap_spec spec;
        spec.seed = s.seed;
        tap t;
        t.clarke = true;
        t.speed = s.clarke_speed;
        spec.taps.push_back(t);
        return gen_tapped_delay(spec, s.dims, s.dt, s.f_c, s.bw);
    }
    if (s.kind == "spatially_correlated") {
        spatial_spec spec = s.spatial;
        spec.seed = s.seed;
        if (spec.mode != spatial_mode::iid && spec.layout.spacing == 0.0)
            spec.layout.spacing = half_wavelength_spacing(s.f_c);
        return gen_spatially_correlated(spec, s.dims, s.dt, s.f_c, s.bw);
    }
    if (s.kind == "switch") {
        tap_spec a = s.taps_a;
        tap_spec b = s.taps_b;
        a.seed = s.seed;
        b.seed = s.seed + 1;
        return gen_nonstationary_switch(a, b, s.switch_at, s.dims, s.dt, s.f_c, s.bw);
    }
    throw format_error("unknown synth kind '" + s.kind +
                       "' (tapped_delay|clarke|spatially_correlated|switch)");
}

trajectory_log straight_flight(const synth_settings& s) {
    const double duration = static_cast<double>(s.dims.n_time) * s.dt;
    const double step = 1.0 / s.traj_rate_hz;
    const double heading = s.traj_heading_deg * std::numbers::pi / 180.0;
    const counter_rng rng(s.seed, 0x77);
    trajectory_log log;
    for (std::size_t i = 0;; ++i) {
        const double t = static_cast<double>(i) * step;
        if (t > duration + 0.5 * step)
            break;
        const double east = s.traj_start_east + s.traj_speed * t * std::sin(heading);
        const double north = s.traj_start_north + s.traj_speed * t * std::cos(heading);
        trajectory_record r;
        r.t = t;
        enu_to_geodetic(s.site, east, north, r.lat, r.lon);
        r.alt_asl = s.traj_alt_asl;
        r.pitch = s.traj_wobble_deg * rng.normal_pair(2 * i).real();
        r.roll = s.traj_wobble_deg * rng.normal_pair(2 * i + 1).real();
        r.yaw = s.traj_heading_deg;
        log.records.push_back(r);
    }
    return log;
}

int cmd_synth(const std::string& spec_path, std::string out_base) {
    synth_settings s;
    try {
        s = parse_synth_spec(spec_path);
        if (const char* env = std::getenv("CSI_PRISM_OUTDIR"); env != nullptr && *env != '\0')
            out_base = (fs::path(env) / fs::path(out_base).filename()).string();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "csi-prism synth: %s\n", e.what());
        return exit_usage;
    }
    try {
        const fs::path csit_path = out_base + ".csit";
        if (csit_path.has_parent_path())
            fs::create_directories(csit_path.parent_path());
        const csi_tensor tensor = generate(s);
        write_csi(csit_path, tensor);

        std::vector<std::pair<std::string, std::string>> meta;
        meta.emplace_back("tool", tool_name);
        meta.emplace_back("version", tool_version);
        meta.emplace_back("kind", s.kind);
        meta.emplace_back("seed", std::to_string(s.seed));
        meta.emplace_back("n_time", std::to_string(s.dims.n_time));
        meta.emplace_back("n_ant", std::to_string(s.dims.n_ant));
        meta.emplace_back("n_sub", std::to_string(s.dims.n_sub));
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.10g", s.dt);
        meta.emplace_back("dt", buf);
        std::snprintf(buf, sizeof buf, "%.10g", s.f_c);
        meta.emplace_back("f_c", buf);
        std::snprintf(buf, sizeof buf, "%.10g", s.bw);
        meta.emplace_back("bw", buf);
        for (const auto& t : s.taps_a.taps) {
            std::snprintf(buf, sizeof buf, "%.10g:%.10g", t.delay_s, t.power);
            meta.emplace_back("tap", std::string(buf) + (t.clarke ? ":clarke" : ""));
        }
        for (const auto& t : s.taps_b.taps) {
            std::snprintf(buf, sizeof buf, "%.10g:%.10g", t.delay_s, t.power);
            meta.emplace_back("tap_b", std::string(buf) + (t.clarke ? ":clarke" : ""));
        }
        if (s.kind == "switch")
            meta.emplace_back("switch_at", std::to_string(s.switch_at));
        write_meta(out_base + ".meta", meta);
        std::printf("wrote %s\n", csit_path.string().c_str());
        std::printf("wrote %s.meta\n", out_base.c_str());

        if (s.traj_speed > 0.0) {
            const std::string traj_path = out_base + "_trajectory.csv";
            write_trajectory(traj_path, straight_flight(s));
            std::printf("wrote %s\n", traj_path.c_str());
        }
        return exit_ok;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "csi-prism synth: internal: %s\n", e.what());
        return exit_internal;
    }
}

// ---- inspect -----------------------------------------------------------------

std::string human_time(double seconds) {
    char buf[48];
    if (seconds >= 1.0)
        std::snprintf(buf, sizeof buf, "%.4g s", seconds);
    else if (seconds >= 1e-3)
        std::snprintf(buf, sizeof buf, "%.4g ms", seconds * 1e3);
    else if (seconds >= 1e-6)
        std::snprintf(buf, sizeof buf, "%.4g us", seconds * 1e6);
    else
        std::snprintf(buf, sizeof buf, "%.4g ns", seconds * 1e9);
    return buf;
}

int cmd_inspect(const std::string& path) {
    try {
        csit_reader reader(path);
        const double dtau = 1.0 / reader.bw();
        std::printf("%s\n", path.c_str());
        std::printf("  snapshots    %zu (dt = %s, duration %s)\n", reader.n_time(),
                    human_time(reader.dt()).c_str(),
                    human_time(static_cast<double>(reader.n_time()) * reader.dt()).c_str());
        std::printf("  antennas     %zu\n", reader.n_ant());
        std::printf("  subcarriers  %zu\n", reader.n_sub());
        std::printf("  carrier      %.6g GHz\n", reader.f_c() / 1e9);
        std::printf("  bandwidth    %.6g MHz\n", reader.bw() / 1e6);
        std::printf("  delay bin    %s, span %s\n", human_time(dtau).c_str(),
                    human_time(static_cast<double>(reader.n_sub()) * dtau).c_str());
        return exit_ok;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "csi-prism inspect: %s\n", e.what());
        return exit_usage;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"massive-MIMO air-to-ground channel analysis toolkit"};
    app.require_subcommand(1);

    analyze_cli a;
    CLI::App* analyze = app.add_subcommand("analyze", "run the metric pipeline on a recording");
    add_analyze_options(*analyze, a);

    std::string synth_spec, synth_out = "synth";
    CLI::App* synth = app.add_subcommand("synth", "generate a channel with known properties");
    synth->add_option("--spec", synth_spec, "key=value generator spec")->required();
    synth->add_option("--out", synth_out, "output base path (default ./synth)");

    std::string inspect_path;
    CLI::App* inspect = app.add_subcommand("inspect", "print a channel file's header");
    inspect->add_option("file", inspect_path, "channel tensor (.csit)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    if (analyze->parsed())
        return cmd_analyze(*analyze, a);
    if (synth->parsed())
        return cmd_synth(synth_spec, synth_out);
    if (inspect->parsed())
        return cmd_inspect(inspect_path);
    return exit_usage;
}
