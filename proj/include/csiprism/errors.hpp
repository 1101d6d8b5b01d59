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

#include <stdexcept>
#include <string>

namespace csiprism {

// Base class for everything thrown by the library.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// File does not carry the expected magic / layout.
class format_error : public error {
  public:
    using error::error;
};

// Declared payload is longer than the bytes present.
class truncation_error : public error {
  public:
    using error::error;
};

// Non-finite value in a payload.
class data_error : public error {
  public:
    using error::error;
};

// Timestamps not strictly increasing.
class order_error : public error {
  public:
    using error::error;
};

// Value outside its physical range.
class range_error : public error {
  public:
    using error::error;
};

// Index or window outside the addressed axis.
class index_error : public error {
  public:
    using error::error;
};

// Input too short / degenerate for the requested statistic.
class degenerate_input_error : public error {
  public:
    using error::error;
};

// PDP with no positive bin left.
class null_profile_error : public error {
  public:
    using error::error;
};

// Zero PDP bin survived regularization.
class null_bin_error : public error {
  public:
    using error::error;
};

// Antenna element with zero variance over the estimation window.
class degenerate_element_error : public error {
  public:
    using error::error;
};

// Invalid generator specification (e.g. non-PSD covariance).
class spec_error : public error {
  public:
    using error::error;
};

} // namespace csiprism
