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

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "csiprism/rng.hpp"
#include "csiprism/types.hpp"

namespace testutil {

// Unique scratch directory, removed on scope exit.
class temp_dir {
  public:
    explicit temp_dir(const std::string& tag) {
        static int seq = 0;
        dir_ = std::filesystem::temp_directory_path() /
               ("csiprism-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(seq++));
        std::filesystem::create_directories(dir_);
    }
    ~temp_dir() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    temp_dir(const temp_dir&) = delete;
    temp_dir& operator=(const temp_dir&) = delete;

    const std::filesystem::path& path() const { return dir_; }
    std::filesystem::path file(const std::string& name) const { return dir_ / name; }

  private:
    std::filesystem::path dir_;
};

inline std::string read_all(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// Tensor filled with independent unit circular-Gaussian samples; every value
// is a pure function of (seed, flat index).
inline csiprism::csi_tensor random_tensor(std::size_t n_time, std::size_t n_ant,
                                          std::size_t n_sub, std::uint64_t seed,
                                          double dt = 1e-3, double f_c = 2.61e9,
                                          double bw = 18e6) {
    csiprism::csi_tensor t;
    t.n_time = n_time;
    t.n_ant = n_ant;
    t.n_sub = n_sub;
    t.dt = dt;
    t.f_c = f_c;
    t.bw = bw;
    t.data.resize(n_time * n_ant * n_sub);
    const csiprism::counter_rng rng(seed, 0);
    for (std::size_t i = 0; i < t.data.size(); ++i) {
        const auto z = rng.cnormal(i);
        t.data[i] = csiprism::cf32(static_cast<float>(z.real()), static_cast<float>(z.imag()));
    }
    return t;
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

} // namespace testutil
