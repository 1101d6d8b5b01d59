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
// CSIT binary format:
//   magic "CSIT\x01" (5 bytes)
//   u32 LE n_time | u32 LE n_ant | u32 LE n_sub
//   f64 LE dt_seconds | f64 LE f_c_hz | f64 LE bw_hz
//   payload: n_time * n_ant * n_sub interleaved (f32 re, f32 im),
//            row-major t -> n -> f
//
// Trajectory CSV header:
//   t_s,lat_deg,lon_deg,alt_asl_m,pitch_deg,roll_deg,yaw_deg

#pragma once

#include <cstdio>
#include <filesystem>
#include <memory>

#include "csiprism/types.hpp"

namespace csiprism {

inline constexpr char csit_magic[5] = {'C', 'S', 'I', 'T', '\x01'};
inline constexpr std::size_t csit_header_bytes = 5 + 3 * 4 + 3 * 8;

// Streaming access to a CSIT file: the header is read and validated on open,
// windows of snapshots are loaded on demand. Single-threaded per instance.
class csit_reader {
  public:
    explicit csit_reader(const std::filesystem::path& path);

    std::size_t n_time() const { return header_.n_time; }
    std::size_t n_ant() const { return header_.n_ant; }
    std::size_t n_sub() const { return header_.n_sub; }
    double dt() const { return header_.dt; }
    double f_c() const { return header_.f_c; }
    double bw() const { return header_.bw; }

    // Loads samples [t0, t0 + w). The returned tensor carries the file's
    // metadata with n_time = w. Throws index_error when out of range,
    // truncation_error on short payload, data_error on non-finite values.
    csi_tensor read_window(std::size_t t0, std::size_t w);

  private:
    struct file_closer {
        void operator()(std::FILE* f) const {
            if (f != nullptr)
                std::fclose(f);
        }
    };
    csi_tensor header_; // dims + metadata, no payload
    std::unique_ptr<std::FILE, file_closer> file_;
    std::filesystem::path path_;
};

// Loads and validates a whole tensor.
csi_tensor load_csi(const std::filesystem::path& path);

// Writes a tensor (or window view) in CSIT format. Rejects non-finite values
// so every file the library produces loads back cleanly.
void write_csi(const std::filesystem::path& path, tensor_view t);

trajectory_log load_trajectory(const std::filesystem::path& path);
void write_trajectory(const std::filesystem::path& path, const trajectory_log& log);

// View over samples [t0, t0 + w) without copying. Metadata inherited.
tensor_view slice_window(tensor_view t, std::size_t t0, std::size_t w);

} // namespace csiprism
