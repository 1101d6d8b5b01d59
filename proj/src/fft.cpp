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

#include "csiprism/fft.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

namespace csiprism::fft {

namespace {

// Plans are created once per (length, direction) with FFTW_ESTIMATE so the
// chosen algorithm never depends on timing, and with FFTW_UNALIGNED so the
// same plan applies to any caller buffer. fftw_execute_dft on distinct
// buffers is thread-safe; creation is not and is serialized here.
class plan_cache {
  public:
    fftw_plan get(std::size_t n, int sign) {
        const std::lock_guard<std::mutex> lock(mutex_);
        const auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end())
            return it->second;
        std::vector<std::complex<double>> tmp_in(n), tmp_out(n);
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n),
                                       reinterpret_cast<fftw_complex*>(tmp_in.data()),
                                       reinterpret_cast<fftw_complex*>(tmp_out.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (p == nullptr)
            throw std::runtime_error("fftw plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

    ~plan_cache() {
        for (auto& [key, p] : plans_)
            fftw_destroy_plan(p);
    }

  private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

plan_cache& cache() {
    static plan_cache c;
    return c;
}

void execute(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
             int sign) {
    const std::size_t n = in.size();
    if (n == 0 || out.size() != n)
        throw std::invalid_argument("fft: mismatched buffer lengths");
    fftw_plan p = cache().get(n, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& v : out)
        v *= scale;
}

template <typename T> void shift_impl(std::span<T> data) {
    const std::size_t n = data.size();
    if (n < 2)
        return;
    // shifted[i] = raw[(i + (n+1)/2) % n]
    std::rotate(data.begin(), data.begin() + (n + 1) / 2, data.end());
}

} // namespace

void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
    execute(in, out, FFTW_FORWARD);
}

void inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
    execute(in, out, FFTW_BACKWARD);
}

void shift(std::span<std::complex<double>> data) { shift_impl(data); }
void shift(std::span<double> data) { shift_impl(data); }

std::vector<double> freq_axis(std::size_t n, double dt) {
    std::vector<double> axis(n);
    const double res = 1.0 / (static_cast<double>(n) * dt);
    const auto half = static_cast<std::ptrdiff_t>(n / 2);
    for (std::size_t k = 0; k < n; ++k)
        axis[k] = static_cast<double>(static_cast<std::ptrdiff_t>(k) - half) * res;
    return axis;
}

namespace ref {

namespace {

void dft(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
         double sign) {
    const std::size_t n = in.size();
    if (n == 0 || out.size() != n)
        throw std::invalid_argument("fft::ref: mismatched buffer lengths");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            const double phase = sign * 2.0 * std::numbers::pi * static_cast<double>(k) *
                                 static_cast<double>(m) / static_cast<double>(n);
            acc += in[m] * std::polar(1.0, phase);
        }
        out[k] = acc * scale;
    }
}

} // namespace

void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
    dft(in, out, -1.0);
}

void inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
    dft(in, out, 1.0);
}

} // namespace ref

} // namespace csiprism::fft
