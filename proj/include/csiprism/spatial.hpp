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
#include <utility>
#include <vector>

#include "csiprism/types.hpp"

namespace csiprism {

// Complex antenna cross-correlation estimated over one analysis window.
// Hermitian with an exactly-unit diagonal; |r| is bounded by 1 up to
// floating-point rounding (Cauchy-Schwarz on the centered samples).
struct correlation_matrix {
    std::vector<cf64> r; // row-major M x M
    std::size_t m = 0;   // number of antenna elements
    std::size_t t0 = 0;  // reference window start (snapshot index)
    std::size_t window = 0;

    cf64 at(std::size_t i, std::size_t j) const { return r[i * m + j]; }
    double mag(std::size_t i, std::size_t j) const;
};

// How samples enter the correlation expectation: one mean per element over
// the whole time x frequency pool (default), or per-subcarrier means with
// the centered second moments still pooled (robust when subcarriers carry
// different static offsets).
enum class corr_pooling { pooled, per_subcarrier };

// Pearson correlation of every element pair over w snapshots with all
// subcarriers pooled into the expectation. Requires w >= 8; an element with
// zero variance over the window is rejected by name.
correlation_matrix compute_correlation(tensor_view t, std::size_t t0, std::size_t w,
                                       corr_pooling pooling = corr_pooling::pooled);

// Geometry of a uniform rectangular array: element (row, col) sits at
// (row * spacing, col * spacing) in the array plane, flat index row-major.
struct ura_layout {
    std::size_t rows = 8;
    std::size_t cols = 8;
    double spacing = 0.0; // meters between adjacent elements

    std::size_t count() const { return rows * cols; }
    std::size_t flat(std::size_t row, std::size_t col) const;
    std::pair<std::size_t, std::size_t> grid(std::size_t flat_index) const;
    double distance(std::size_t a, std::size_t b) const; // meters, flat indices
};

// Half-wavelength element pitch at carrier f_c; the conventional default
// when the physical pitch is not known.
double half_wavelength_spacing(double f_c);

// |R(ref, .)| reshaped onto the array grid (row-major rows x cols values).
std::vector<double> element_map(const correlation_matrix& corr, const ura_layout& layout,
                                std::size_t ref_row, std::size_t ref_col);

// Zeroth-order Bessel function of the first kind; power series for
// |x| <= 12, Hankel asymptotic expansion beyond, absolute error < 1e-10.
double bessel_j0(double x);

// Isotropic-scattering spatial correlation J0^2(2 pi d_s / lambda) for two
// elements d_s apart under a uniform azimuth angular spectrum.
double jakes_reference(double d_s, double lambda);

} // namespace csiprism
