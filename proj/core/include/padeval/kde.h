// Copyright 2026 The padeval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace padeval {

inline constexpr double kMinBandwidth = 1e-3;

struct DensitySeries {
  std::string class_label;
  std::vector<double> xs;         // strictly increasing, within [0,1]
  std::vector<double> densities;  // finite, >= 0
  double bandwidth = 0.0;
};

// Silverman's rule of thumb, 0.9 * min(sd, IQR / 1.34) * n^(-1/5), floored at
// kMinBandwidth so piles of identical scores still get a usable kernel.
double silverman_bandwidth(std::span<const double> samples);

// n evenly spaced abscissae over [0,1].
std::vector<double> unit_grid(std::size_t n);

// Abscissae fine enough for the trapezoid rule at the given bandwidth.
std::vector<double> unit_grid_for(double bandwidth);

// Gaussian kernel density estimate at xs. Throws DataError for fewer than two
// samples and ArgumentError for a non-positive bandwidth or bad abscissae.
DensitySeries kde(std::span<const double> samples, std::span<const double> xs,
                  std::optional<double> bandwidth = std::nullopt,
                  std::string class_label = {});

// Trapezoid rule over a density series.
double trapezoid(const DensitySeries& series);

}  // namespace padeval
