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

#include "csiprism/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>

#include "json.hpp"

#include "csiprism/dispersion.hpp"
#include "csiprism/errors.hpp"
#include "csiprism/geo.hpp"
#include "csiprism/kernels.hpp"
#include "csiprism/tensor_io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace csiprism {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t hash_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw format_error("cannot reopen " + path.string() + " for hashing");
    std::uint64_t h = 0xCBF29CE484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const auto got = static_cast<std::size_t>(in.gcount());
        for (std::size_t i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001B3ULL;
        }
    }
    return h;
}

// One output CSV: provenance comment first, optional extra comments, then
// the column header and rows. All numbers go through %.10g so the bytes
// never depend on locale, platform defaults, or thread count.
class csv_out {
  public:
    csv_out(const fs::path& dir, const std::string& name, const std::string& provenance)
        : path_(dir / name), name_(name) {
        file_ = std::fopen(path_.string().c_str(), "wb");
        if (file_ == nullptr)
            throw format_error("cannot open " + path_.string() + " for writing");
        std::fprintf(file_, "# %s\n", provenance.c_str());
    }
    csv_out(const csv_out&) = delete;
    csv_out& operator=(const csv_out&) = delete;
    ~csv_out() {
        if (file_ != nullptr)
            std::fclose(file_);
    }

    void comment(const std::string& line) { std::fprintf(file_, "# %s\n", line.c_str()); }

    void header(const std::string& columns) { std::fprintf(file_, "%s\n", columns.c_str()); }

    void row(std::initializer_list<double> values) {
        bool first = true;
        for (const double v : values) {
            std::fprintf(file_, first ? "%s" : ",%s", fmt_g(v).c_str());
            first = false;
        }
        std::fputc('\n', file_);
    }

    // Closes and records (name, content hash) into the running file list.
    void finish(std::vector<std::pair<std::string, std::uint64_t>>& files) {
        std::fclose(file_);
        file_ = nullptr;
        files.emplace_back(name_, hash_file(path_));
    }

  private:
    fs::path path_;
    std::string name_;
    std::FILE* file_ = nullptr;
};

struct moment_stats {
    double mu = 0.0;
    double sigma = 0.0;
    std::size_t n = 0;
};

moment_stats moments_of(const std::vector<double>& v) {
    moment_stats s;
    s.n = v.size();
    if (v.empty())
        return s;
    double sum = 0.0, sum2 = 0.0;
    for (const double x : v) {
        sum += x;
        sum2 += x * x;
    }
    s.mu = sum / static_cast<double>(v.size());
    s.sigma = std::sqrt(std::max(sum2 / static_cast<double>(v.size()) - s.mu * s.mu, 0.0));
    return s;
}

void check_config(const run_config& cfg) {
    if (cfg.csi_path.empty())
        throw range_error("config: no channel file given");
    if (cfg.window < 1)
        throw range_error("config: window must be >= 1");
    if (!(cfg.c_th > 0.0) || !std::isfinite(cfg.c_th))
        throw range_error("config: divergence threshold must be positive and finite");
    if (cfg.decimation < 1)
        throw range_error("config: decimation stride must be >= 1");
    if (cfg.wobble_window < 2)
        throw range_error("config: attitude window must cover >= 2 fixes");
    if (cfg.noise.mode == noise_mode::fixed &&
        (!(cfg.noise.noise_power > 0.0) || !std::isfinite(cfg.noise.noise_power)))
        throw range_error("config: fixed noise power must be positive and finite");
    if (cfg.speed < 0.0 || !std::isfinite(cfg.speed))
        throw range_error("config: speed must be non-negative and finite");
    if (cfg.element_spacing < 0.0 || !std::isfinite(cfg.element_spacing))
        throw range_error("config: element spacing must be non-negative and finite");
    if (cfg.ura_rows < 1 || cfg.ura_cols < 1)
        throw range_error("config: array grid must be at least 1x1");
}

run_config effective(const run_config& cfg_in) {
    run_config cfg = cfg_in;
    if (cfg.stride == 0)
        cfg.stride = cfg.window;
    return cfg;
}

} // namespace

std::string canonical_config(const run_config& cfg_in) {
    const run_config cfg = effective(cfg_in);
    std::string s;
    const auto kv = [&s](const char* k, const std::string& v) {
        s += k;
        s += '=';
        s += v;
        s += '\n';
    };
    kv("csi", cfg.csi_path);
    kv("trajectory", cfg.traj_path);
    kv("window", std::to_string(cfg.window));
    kv("stride", std::to_string(cfg.stride));
    kv("gate_db", fmt_g(cfg.gate_db));
    kv("c_th", fmt_g(cfg.c_th));
    kv("noise_mode", to_string(cfg.noise.mode));
    kv("noise_power", fmt_g(cfg.noise.noise_power));
    kv("decimation", std::to_string(cfg.decimation));
    kv("ref_window", std::to_string(cfg.ref_window));
    kv("span_rule", to_string(cfg.rule));
    kv("doppler_reduce", to_string(cfg.doppler_reduce));
    kv("corr_pooling", to_string(cfg.pooling));
    kv("ura_rows", std::to_string(cfg.ura_rows));
    kv("ura_cols", std::to_string(cfg.ura_cols));
    kv("element_spacing", fmt_g(cfg.element_spacing));
    kv("speed", fmt_g(cfg.speed));
    kv("wobble_window", std::to_string(cfg.wobble_window));
    kv("bs_lat", fmt_g(cfg.site.bs_lat));
    kv("bs_lon", fmt_g(cfg.site.bs_lon));
    kv("bs_height_agl", fmt_g(cfg.site.bs_height_agl));
    kv("ground_asl", fmt_g(cfg.site.ground_asl));
    return s;
}

std::string config_hash_hex(const run_config& cfg) {
    return hex64(fnv1a64(canonical_config(cfg)));
}

std::string to_string(span_rule rule) {
    return rule == span_rule::contiguous ? "contiguous" : "farthest";
}
std::string to_string(noise_mode mode) { return mode == noise_mode::fixed ? "fixed" : "pdp_tail"; }
std::string to_string(antenna_reduce reduce) {
    return reduce == antenna_reduce::power_mean ? "power" : "coherent";
}
std::string to_string(corr_pooling pooling) {
    return pooling == corr_pooling::pooled ? "pooled" : "per_subcarrier";
}

span_rule parse_span_rule(const std::string& s) {
    if (s == "contiguous")
        return span_rule::contiguous;
    if (s == "farthest")
        return span_rule::farthest;
    throw range_error("unknown span rule '" + s + "' (contiguous|farthest)");
}
noise_mode parse_noise_mode(const std::string& s) {
    if (s == "fixed")
        return noise_mode::fixed;
    if (s == "pdp_tail")
        return noise_mode::pdp_tail;
    throw range_error("unknown noise mode '" + s + "' (fixed|pdp_tail)");
}
antenna_reduce parse_antenna_reduce(const std::string& s) {
    if (s == "power")
        return antenna_reduce::power_mean;
    if (s == "coherent")
        return antenna_reduce::coherent_mean;
    throw range_error("unknown antenna reduction '" + s + "' (power|coherent)");
}
corr_pooling parse_corr_pooling(const std::string& s) {
    if (s == "pooled")
        return corr_pooling::pooled;
    if (s == "per_subcarrier")
        return corr_pooling::per_subcarrier;
    throw range_error("unknown correlation pooling '" + s + "' (pooled|per_subcarrier)");
}

void validate_analyze_inputs(const run_config& cfg_in) {
    const run_config cfg = effective(cfg_in);
    check_config(cfg);
    csit_reader reader(cfg.csi_path); // header validation
    const std::size_t n_windows = kernels::window_count(reader.n_time(), cfg.window, cfg.stride);
    if (cfg.ref_window >= n_windows)
        throw range_error("config: reference window " + std::to_string(cfg.ref_window) +
                          " outside the " + std::to_string(n_windows) + " available windows");
    if (!cfg.traj_path.empty())
        load_trajectory(cfg.traj_path);
}

void write_meta(const fs::path& path, const std::vector<std::pair<std::string, std::string>>& entries) {
    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    if (f == nullptr)
        throw format_error("cannot open " + path.string() + " for writing");
    for (const auto& [k, v] : entries)
        std::fprintf(f, "%s=%s\n", k.c_str(), v.c_str());
    std::fclose(f);
}

std::vector<std::pair<std::string, std::string>> read_kv_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw format_error("cannot open " + path.string());
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    std::size_t lineno = 0;
    const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#')
            continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw format_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected key=value, got '" + stripped + "'");
        entries.emplace_back(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    return entries;
}

analyze_result run_analyze(const run_config& cfg_in) {
    const run_config cfg = effective(cfg_in);
    check_config(cfg);

    fs::create_directories(cfg.out_dir);
    const fs::path dir(cfg.out_dir);
    const std::string provenance =
        std::string(tool_name) + " " + tool_version + " " + config_hash_hex(cfg);

    analyze_result result;
    auto note = [&result](const std::string& s) { result.notes.push_back(s); };

    csit_reader reader(cfg.csi_path);
    const std::size_t n_time = reader.n_time();
    const std::size_t M = reader.n_ant();
    const std::size_t F = reader.n_sub();
    const double dt = reader.dt();
    const std::size_t n_windows = kernels::window_count(n_time, cfg.window, cfg.stride);
    if (cfg.ref_window >= n_windows)
        throw range_error("config: reference window " + std::to_string(cfg.ref_window) +
                          " outside the " + std::to_string(n_windows) + " available windows");

    // ---- trajectory products -------------------------------------------
    std::optional<relative_track> track;
    trajectory_log log;
    if (!cfg.traj_path.empty()) {
        log = load_trajectory(cfg.traj_path);
        track = to_relative_track(log, cfg.site);
        note("trajectory timestamps are rebased to the first fix and matched to the channel "
             "time axis by nearest timestamp");

        csv_out csv(dir, "track.csv", provenance);
        csv.header("t_s,east_m,north_m,up_m,dist3d_m,horiz_dist_m,speed_mps");
        for (const auto& s : track->samples)
            csv.row({s.t, s.east, s.north, s.up, s.dist3d, s.horiz_dist, s.speed});
        csv.finish(result.files);
    }

    std::optional<wobble_stats> wobble;
    if (track) {
        if (log.records.size() >= cfg.wobble_window) {
            wobble = compute_wobble(log, cfg.wobble_window);
            csv_out csv(dir, "wobble.csv", provenance);
            csv.comment("attitude sigma over sliding windows of " +
                        std::to_string(cfg.wobble_window) + " fixes");
            csv.header("t_s,pitch_sigma_deg,roll_sigma_deg");
            for (std::size_t i = 0; i < wobble->t.size(); ++i)
                csv.row({wobble->t[i], wobble->pitch_sigma[i], wobble->roll_sigma[i]});
            csv.finish(result.files);
        } else {
            note("attitude statistics skipped: trajectory has fewer fixes than one window");
        }
    }

    // ---- streamed window pass: PDP rows, SE snapshots, reference window --
    pdp_matrix pdps;
    pdps.n_windows = n_windows;
    pdps.n_delay = F;
    pdps.window = cfg.window;
    pdps.stride = cfg.stride;
    pdps.dt = dt;
    pdps.dtau = 1.0 / reader.bw();
    pdps.p.assign(n_windows * F, 0.0);

    const std::size_t n_dec = 1 + (n_time - 1) / cfg.decimation;
    csi_tensor dec;
    dec.n_time = n_dec;
    dec.n_ant = M;
    dec.n_sub = F;
    dec.dt = dt * static_cast<double>(cfg.decimation);
    dec.f_c = reader.f_c();
    dec.bw = reader.bw();
    dec.data.assign(n_dec * M * F, cf32(0.0f));
    std::vector<char> have(n_dec, 0);

    csi_tensor ref_tensor;

    std::size_t block = 8;
#ifdef _OPENMP
    block = std::max<std::size_t>(static_cast<std::size_t>(omp_get_max_threads()) * 2, 4);
#endif
    block = std::min<std::size_t>(block, 16);

    for (std::size_t i0 = 0; i0 < n_windows; i0 += block) {
        const std::size_t i1 = std::min(i0 + block, n_windows);
        const std::size_t t0 = i0 * cfg.stride;
        const std::size_t len = (i1 - 1 - i0) * cfg.stride + cfg.window;
        const csi_tensor chunk = reader.read_window(t0, len);

        const pdp_matrix part = kernels::pdp_rows(chunk, cfg.window, cfg.stride);
        std::copy(part.p.begin(), part.p.end(), pdps.p.begin() + i0 * F);

        // Decimated snapshots that fall inside this chunk feed the
        // spectral-efficiency series without a second file pass.
        for (std::size_t j = (t0 + cfg.decimation - 1) / cfg.decimation;
             j < n_dec && j * cfg.decimation < t0 + len; ++j) {
            const std::size_t k = j * cfg.decimation;
            std::copy_n(chunk.data.data() + (k - t0) * M * F, M * F,
                        dec.data.data() + j * M * F);
            have[j] = 1;
        }

        if (cfg.ref_window >= i0 && cfg.ref_window < i1) {
            const std::size_t local = (cfg.ref_window - i0) * cfg.stride;
            ref_tensor.n_time = cfg.window;
            ref_tensor.n_ant = M;
            ref_tensor.n_sub = F;
            ref_tensor.dt = dt;
            ref_tensor.f_c = reader.f_c();
            ref_tensor.bw = reader.bw();
            ref_tensor.data.assign(chunk.data.begin() + local * M * F,
                                   chunk.data.begin() + (local + cfg.window) * M * F);
        }
    }
    // Snapshots the window grid never covered (stride gaps, record tail).
    for (std::size_t j = 0; j < n_dec; ++j) {
        if (have[j] == 0) {
            const csi_tensor one = reader.read_window(j * cfg.decimation, 1);
            std::copy_n(one.data.data(), M * F, dec.data.data() + j * M * F);
            have[j] = 1;
        }
    }

    // ---- averaged profiles ----------------------------------------------
    {
        csv_out csv(dir, "pdp.csv", provenance);
        csv.comment("window-averaged power-delay profiles, window=" +
                    std::to_string(cfg.window) + " stride=" + std::to_string(cfg.stride));
        csv.header("t_s,delay_s,power");
        for (std::size_t i = 0; i < n_windows; ++i) {
            const auto row = pdps.row(i);
            for (std::size_t b = 0; b < F; ++b)
                csv.row({pdps.t_center(i), static_cast<double>(b) * pdps.dtau, row[b]});
        }
        csv.finish(result.files);
    }

    // ---- delay dispersion -------------------------------------------------
    const relative_track* track_ptr = track ? &*track : nullptr;
    const delay_spread_series ds = compute_delay_spread_series(pdps, track_ptr, cfg.gate_db);
    if (ds.any_clipped)
        note("at least one window's delay-spread radicand was clipped at zero");
    {
        csv_out csv(dir, "dispersion.csv", provenance);
        csv.header("t_s,dist3d_m,mean_delay_s,rms_ds_s,integrated_power");
        for (const auto& p : ds.points)
            csv.row({p.t, p.dist3d, p.mean_delay, p.rms_ds, p.integrated_power});
        csv.finish(result.files);
    }
    std::vector<double> rms_values(ds.points.size());
    for (std::size_t i = 0; i < ds.points.size(); ++i)
        rms_values[i] = ds.points[i].rms_ds;
    std::optional<cdf_summary> ds_cdf;
    if (rms_values.size() >= 2) {
        ds_cdf = summarize_cdf(rms_values);
        csv_out csv(dir, "dispersion_cdf.csv", provenance);
        csv.header("rms_ds_s,cdf");
        for (std::size_t i = 0; i < ds_cdf->values.size(); ++i)
            csv.row({ds_cdf->values[i], ds_cdf->ordinates[i]});
        csv.finish(result.files);
    } else {
        note("delay-spread CDF skipped: fewer than 2 windows");
    }

    // ---- divergence and stationary spans ---------------------------------
    const divergence_matrix gamma = compute_divergence(pdps);
    {
        csv_out csv(dir, "gamma.csv", provenance);
        csv.header("t_i_s,t_j_s,gamma");
        for (std::size_t i = 0; i < gamma.n; ++i)
            for (std::size_t j = 0; j < gamma.n; ++j)
                csv.row({gamma.t_center(i), gamma.t_center(j), gamma.at(i, j)});
        csv.finish(result.files);
    }

    std::vector<stationary_span> spans;
    if (track) {
        spans = per_sample_speed_spans(gamma, *track, cfg.c_th, cfg.rule);
    } else {
        spans = stationary_spans(gamma, cfg.speed, cfg.c_th, cfg.rule);
        if (cfg.speed == 0.0)
            note("no trajectory and no speed configured: stationary distances are zero");
    }
    {
        csv_out csv(dir, "spans.csv", provenance);
        csv.header("t_s,dist3d_m,t_min_s,t_max_s,d_sd_m");
        for (const auto& s : spans)
            csv.row({s.t, s.dist3d, s.t_min, s.t_max, s.d_sd});
        csv.finish(result.files);
    }
    std::vector<double> span_values(spans.size());
    for (std::size_t i = 0; i < spans.size(); ++i)
        span_values[i] = spans[i].d_sd;
    std::optional<cdf_summary> span_cdf;
    if (span_values.size() >= 2) {
        span_cdf = summarize_cdf(span_values);
        csv_out csv(dir, "spans_cdf.csv", provenance);
        csv.header("d_sd_m,cdf");
        for (std::size_t i = 0; i < span_cdf->values.size(); ++i)
            csv.row({span_cdf->values[i], span_cdf->ordinates[i]});
        csv.finish(result.files);
    } else {
        note("stationary-span CDF skipped: fewer than 2 windows");
    }

    // ---- Doppler functions of the reference window ------------------------
    {
        const doppler_functions dopp =
            compute_doppler(ref_tensor, 0, cfg.window, cfg.doppler_reduce);
        const double ref_t = pdps.t_center(cfg.ref_window);
        const double df = reader.bw() / static_cast<double>(F);

        csv_out csv_b(dir, "doppler_freq.csv", provenance);
        csv_b.comment("window " + std::to_string(cfg.ref_window) + " centered at t=" +
                      fmt_g(ref_t) + " s, " + to_string(cfg.doppler_reduce) +
                      " reduction over antennas");
        csv_b.header("doppler_hz,subcarrier_hz,power");
        for (std::size_t k = 0; k < dopp.n_dopp; ++k)
            for (std::size_t f = 0; f < F; ++f)
                csv_b.row({dopp.doppler_hz[k], static_cast<double>(f) * df,
                           dopp.b_power[k * F + f]});
        csv_b.finish(result.files);

        csv_out csv_s(dir, "doppler_delay.csv", provenance);
        csv_s.comment("window " + std::to_string(cfg.ref_window) + " centered at t=" +
                      fmt_g(ref_t) + " s, " + to_string(cfg.doppler_reduce) +
                      " reduction over antennas");
        csv_s.header("doppler_hz,delay_s,power");
        for (std::size_t k = 0; k < dopp.n_dopp; ++k)
            for (std::size_t f = 0; f < F; ++f)
                csv_s.row({dopp.doppler_hz[k], static_cast<double>(f) * dopp.dtau,
                           dopp.s_power[k * F + f]});
        csv_s.finish(result.files);
    }

    // ---- spatial correlation ----------------------------------------------
    std::optional<correlation_matrix> corr;
    if (cfg.window >= 8) {
        corr = compute_correlation(ref_tensor, 0, cfg.window, cfg.pooling);
        csv_out csv(dir, "corr_matrix.csv", provenance);
        csv.comment("window " + std::to_string(cfg.ref_window) + ", " +
                    to_string(cfg.pooling) + " samples");
        csv.header("m,n,corr_mag");
        for (std::size_t m = 0; m < corr->m; ++m)
            for (std::size_t n = 0; n < corr->m; ++n)
                csv.row({static_cast<double>(m), static_cast<double>(n), corr->mag(m, n)});
        csv.finish(result.files);
    } else {
        note("correlation skipped: window shorter than 8 snapshots");
    }

    const ura_layout layout{cfg.ura_rows, cfg.ura_cols,
                            cfg.element_spacing > 0.0 ? cfg.element_spacing
                                                      : half_wavelength_spacing(reader.f_c())};
    if (corr && layout.count() == M) {
        const std::size_t ref_row = cfg.ura_rows / 2;
        const std::size_t ref_col = cfg.ura_cols / 2;
        const std::vector<double> map = element_map(*corr, layout, ref_row, ref_col);
        csv_out csv(dir, "corr_map.csv", provenance);
        csv.comment("reference element (" + std::to_string(ref_row) + ", " +
                    std::to_string(ref_col) + "), spacing " + fmt_g(layout.spacing) + " m");
        csv.header("row,col,corr_mag");
        for (std::size_t r = 0; r < layout.rows; ++r)
            for (std::size_t c = 0; c < layout.cols; ++c)
                csv.row({static_cast<double>(r), static_cast<double>(c),
                         map[r * layout.cols + c]});
        csv.finish(result.files);
    } else if (corr) {
        note("correlation map skipped: array grid does not match the antenna count");
    }
    {
        csv_out csv(dir, "jakes.csv", provenance);
        csv.comment("isotropic-scattering reference, element spacing in wavelengths");
        csv.header("spacing_lambda,correlation");
        for (int i = 0; i <= 400; ++i) {
            const double s = static_cast<double>(i) / 100.0;
            csv.row({s, jakes_reference(s, 1.0)});
        }
        csv.finish(result.files);
    }

    // ---- spectral efficiency ----------------------------------------------
    const double noise_power = resolve_noise_power(cfg.noise, pdps);
    const se_series_result se = se_series(dec, track_ptr, noise_power, 1);
    {
        csv_out csv(dir, "se.csv", provenance);
        csv.comment("noise " + to_string(cfg.noise.mode) + ", linear power " +
                    fmt_g(noise_power) + ", snapshot stride " + std::to_string(cfg.decimation));
        csv.header("t_s,dist3d_m,se_bps_hz,max_norm_power_db");
        for (const auto& p : se.points)
            csv.row({p.t, p.dist3d, p.se, p.max_norm_power_db});
        csv.finish(result.files);
    }

    // ---- manifest ----------------------------------------------------------
    nlohmann::json manifest;
    manifest["tool"] = tool_name;
    manifest["version"] = tool_version;
    manifest["config_hash"] = config_hash_hex(cfg);

    nlohmann::json jcfg;
    jcfg["csi"] = cfg.csi_path;
    jcfg["trajectory"] = cfg.traj_path;
    jcfg["window"] = cfg.window;
    jcfg["stride"] = cfg.stride;
    jcfg["gate_db"] = cfg.gate_db;
    jcfg["c_th"] = cfg.c_th;
    jcfg["noise_mode"] = to_string(cfg.noise.mode);
    jcfg["noise_power_config"] = cfg.noise.noise_power;
    jcfg["noise_power_used"] = noise_power;
    jcfg["decimation"] = cfg.decimation;
    jcfg["ref_window"] = cfg.ref_window;
    jcfg["span_rule"] = to_string(cfg.rule);
    jcfg["doppler_reduce"] = to_string(cfg.doppler_reduce);
    jcfg["corr_pooling"] = to_string(cfg.pooling);
    jcfg["ura_rows"] = cfg.ura_rows;
    jcfg["ura_cols"] = cfg.ura_cols;
    jcfg["element_spacing_m"] = layout.spacing;
    jcfg["speed_mps"] = cfg.speed;
    jcfg["wobble_window"] = cfg.wobble_window;
    jcfg["bs_lat_deg"] = cfg.site.bs_lat;
    jcfg["bs_lon_deg"] = cfg.site.bs_lon;
    jcfg["bs_height_agl_m"] = cfg.site.bs_height_agl;
    jcfg["ground_asl_m"] = cfg.site.ground_asl;
    manifest["config"] = jcfg;

    nlohmann::json jin;
    jin["csi"] = {{"path", cfg.csi_path}, {"n_time", n_time},       {"n_ant", M},
                  {"n_sub", F},           {"dt_s", dt},             {"f_c_hz", reader.f_c()},
                  {"bw_hz", reader.bw()}, {"windows", n_windows}};
    if (track)
        jin["trajectory"] = {{"path", cfg.traj_path}, {"records", log.records.size()}};
    manifest["inputs"] = jin;

    nlohmann::json jsum;
    const auto stat_entry = [](const moment_stats& s) {
        return nlohmann::json{{"mu", s.mu}, {"sigma", s.sigma}, {"n", s.n}};
    };
    jsum["rms_delay_spread_s"] = stat_entry(moments_of(rms_values));
    jsum["stationary_distance_m"] = stat_entry(moments_of(span_values));
    {
        std::vector<double> se_values(se.points.size());
        for (std::size_t i = 0; i < se.points.size(); ++i)
            se_values[i] = se.points[i].se;
        jsum["se_bps_hz"] = stat_entry(moments_of(se_values));
    }
    if (track) {
        jsum["mean_speed_mps"] = average_speed(*track);
        const auto& last = track->samples.back();
        jsum["max_dist3d_m"] = std::max_element(track->samples.begin(), track->samples.end(),
                                                [](const track_sample& a, const track_sample& b) {
                                                    return a.dist3d < b.dist3d;
                                                })
                                   ->dist3d;
        jsum["elapsed_s"] = last.t;
        jsum["max_doppler_hz"] = max_doppler(average_speed(*track), reader.f_c());
    } else if (cfg.speed > 0.0) {
        jsum["max_doppler_hz"] = max_doppler(cfg.speed, reader.f_c());
    }
    if (wobble) {
        jsum["pitch_sigma_deg"] = {{"mu", wobble->pitch_fit.mu}, {"sigma", wobble->pitch_fit.sigma}};
        jsum["roll_sigma_deg"] = {{"mu", wobble->roll_fit.mu}, {"sigma", wobble->roll_fit.sigma}};
    }
    manifest["summary"] = jsum;
    manifest["notes"] = result.notes;

    nlohmann::json jfiles = nlohmann::json::array();
    for (const auto& [name, hash] : result.files)
        jfiles.push_back({{"name", name}, {"fnv1a64", hex64(hash)}});
    manifest["files"] = jfiles;

    result.manifest_path = dir / "manifest.json";
    {
        std::ofstream out(result.manifest_path);
        if (!out)
            throw format_error("cannot open " + result.manifest_path.string() + " for writing");
        out << manifest.dump(2) << '\n';
    }
    return result;
}

} // namespace csiprism
