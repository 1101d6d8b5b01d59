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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "csiprism/link.hpp"
#include "csiprism/spatial.hpp"
#include "csiprism/stationarity.hpp"
#include "csiprism/transforms.hpp"
#include "csiprism/types.hpp"

namespace csiprism {

inline constexpr const char* tool_name = "csi-prism";
inline constexpr const char* tool_version = "0.1.0";

// Everything one analysis run depends on. The same config and inputs must
// produce byte-identical outputs regardless of thread count, so nothing
// here may be time- or machine-dependent.
struct run_config {
    std::string csi_path;
    std::string traj_path; // empty: no trajectory products
    site_config site{};

    std::size_t window = 100; // snapshots per analysis window
    std::size_t stride = 0;   // 0: stride = window (non-overlapping)
    double gate_db = 20.0;    // PDP noise gate; <= 0 disables
    double c_th = 0.36787944117144233; // divergence threshold, exp(-1)
    noise_model noise{};
    std::size_t decimation = 100; // snapshot stride of the SE series
    std::size_t ref_window = 0;   // window used for Doppler and correlation

    span_rule rule = span_rule::contiguous;
    antenna_reduce doppler_reduce = antenna_reduce::power_mean;
    corr_pooling pooling = corr_pooling::pooled;
    std::size_t ura_rows = 8;
    std::size_t ura_cols = 8;
    double element_spacing = 0.0; // m; 0: half wavelength at the carrier
    double speed = 0.0;           // m/s fallback when no trajectory is given
    std::size_t wobble_window = 5; // trajectory fixes per attitude window

    std::string out_dir = ".";
};

// FNV-1a over a byte string; used for config and output-file hashes.
std::uint64_t fnv1a64(std::string_view bytes);

// Canonical key=value serialization of the effective config (fixed key
// order, fixed float formatting). The config hash is FNV-1a over it; the
// output directory is excluded so relocation never changes content.
std::string canonical_config(const run_config& cfg);
std::string config_hash_hex(const run_config& cfg);

std::string to_string(span_rule rule);
std::string to_string(noise_mode mode);
std::string to_string(antenna_reduce reduce);
std::string to_string(corr_pooling pooling);
span_rule parse_span_rule(const std::string& s);
noise_mode parse_noise_mode(const std::string& s);
antenna_reduce parse_antenna_reduce(const std::string& s);
corr_pooling parse_corr_pooling(const std::string& s);

// Validates the config and opens every referenced input, without running
// anything. Throws the same errors a run would hit while loading, so a
// front end can map them to a usage/input exit status.
void validate_analyze_inputs(const run_config& cfg);

struct analyze_result {
    std::filesystem::path manifest_path;
    std::vector<std::pair<std::string, std::uint64_t>> files; // name, content hash
    std::vector<std::string> notes;
};

// Streams the tensor window by window and emits every metric CSV plus
// manifest.json into cfg.out_dir. See README for the file inventory.
analyze_result run_analyze(const run_config& cfg);

// Line-oriented key=value sidecar describing how a generated file came to
// be (same basename as the data file, `.meta` suffix).
void write_meta(const std::filesystem::path& path,
                const std::vector<std::pair<std::string, std::string>>& entries);

// Reads a line-oriented key=value file ('#' comments and blank lines
// allowed, repeated keys preserved in order). Throws format_error on a
// line without '='.
std::vector<std::pair<std::string, std::string>> read_kv_file(const std::filesystem::path& path);

} // namespace csiprism
