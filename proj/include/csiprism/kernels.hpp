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

#include "csiprism/transforms.hpp"

namespace csiprism::kernels {

// Number of full analysis windows a time axis of length n_time admits with
// the given window length and stride (both >= 1, window <= n_time).
std::size_t window_count(std::size_t n_time, std::size_t window, std::size_t stride);

// Averaged power-delay profile of every analysis window, computed straight
// from the frequency response without materializing the full impulse-
// response tensor. Windows are distributed across threads; within a window
// the (snapshot, antenna) accumulation order is fixed and each window owns
// a disjoint output row, so the result is byte-identical for any thread
// count and to the serial twin below.
pdp_matrix pdp_rows(tensor_view t, std::size_t window, std::size_t stride,
                    delay_taper taper = delay_taper::rect);

namespace serial {

// Single-threaded twin of pdp_rows; shares the per-window routine, so any
// divergence between the two isolates a scheduling problem. Kept for tests
// and as the baseline of the kernel benchmark.
pdp_matrix pdp_rows(tensor_view t, std::size_t window, std::size_t stride,
                    delay_taper taper = delay_taper::rect);

} // namespace serial

} // namespace csiprism::kernels
