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
// Timing comparison of the parallel window kernels against their serial
// twins, on a synthetic tensor sized like a short recording. Usage:
//
//   bench_kernels [n_time] [n_ant] [n_sub] [window]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "csiprism/kernels.hpp"
#include "csiprism/stationarity.hpp"
#include "csiprism/synth.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename F> double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    using namespace csiprism;

    std::size_t n_time = 4000, n_ant = 16, n_sub = 100, window = 100;
    std::size_t* const slots[] = {&n_time, &n_ant, &n_sub, &window};
    for (int i = 1; i < argc && i <= 4; ++i) {
        char* end = nullptr;
        const auto v = std::strtoull(argv[i], &end, 10);
        if (end == argv[i] || *end != '\0' || v == 0) {
            std::fprintf(stderr, "usage: bench_kernels [n_time] [n_ant] [n_sub] [window]\n");
            return 2;
        }
        *slots[i - 1] = v;
    }

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("tensor %zux%zux%zu, window %zu, threads %d\n", n_time, n_ant, n_sub, window,
                threads);

    tap_spec spec;
    spec.seed = 7;
    spec.taps.push_back({0.0, 1.0, 0.0, true, 3.0});
    spec.taps.push_back({5.0e-7, 0.5, 0.0, true, 1.5});
    const csi_tensor tensor =
        gen_tapped_delay(spec, {n_time, n_ant, n_sub}, 1e-3, 2.61e9, 18e6);

    const double t_serial =
        time_best_of(3, [&] { (void)kernels::serial::pdp_rows(tensor, window, window); });
    const double t_parallel =
        time_best_of(3, [&] { (void)kernels::pdp_rows(tensor, window, window); });
    const pdp_matrix pdps = kernels::pdp_rows(tensor, window, window);
    std::printf("pdp_rows      serial %8.4f s   parallel %8.4f s   speedup %.2fx\n", t_serial,
                t_parallel, t_serial / t_parallel);

    const double t_div = time_best_of(3, [&] { (void)compute_divergence(pdps); });
    std::printf("divergence    %zu windows in %8.4f s (parallel pair loop)\n", pdps.n_windows,
                t_div);

    const bool equal = kernels::serial::pdp_rows(tensor, window, window).p == pdps.p;
    std::printf("serial twin bytes %s\n", equal ? "identical" : "DIFFER");
    return equal ? 0 : 1;
}
