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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace csiprism::fft {

// Unitary DFTs: both directions carry a 1/sqrt(N) factor, so energy is
// preserved in either direction. forward uses exp(-j2*pi*kn/N).
// in and out must not alias and must have equal length >= 1.
// Execution is thread-safe; plans are cached per length and reused.
void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
void inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

// Reorders so the zero-frequency bin sits at index floor(N/2).
void shift(std::span<std::complex<double>> data);
void shift(std::span<double> data);

// Frequency value of shifted bin k for an N-point transform at sample
// interval dt: (k - floor(N/2)) / (N * dt).
std::vector<double> freq_axis(std::size_t n, double dt);

namespace ref {

// Naive O(N^2) DFTs with the same (unitary) convention. Kept as an
// independent check of the FFT path and for the benchmark.
void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
void inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

} // namespace ref

} // namespace csiprism::fft
