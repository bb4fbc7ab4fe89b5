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

#include "padeval/kde.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "padeval/error.h"

namespace padeval {
namespace {

// Linear-interpolation quantile of sorted data (type 7).
double quantile(std::span<const double> sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

constexpr double kKernelReach = 8.0;  // in bandwidths

}  // namespace

double silverman_bandwidth(std::span<const double> samples) {
  if (samples.size() < 2) throw DataError("KDE needs at least two samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double mean = 0.0;
  for (double s : sorted) mean += s;
  mean /= n;
  double ss = 0.0;
  for (double s : sorted) ss += (s - mean) * (s - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  const double h = 0.9 * std::min(sd, iqr / 1.34) * std::pow(n, -0.2);
  return std::max(h, kMinBandwidth);
}

std::vector<double> unit_grid(std::size_t n) {
  if (n < 2) throw ArgumentError("grid needs at least two points");
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return xs;
}

std::vector<double> unit_grid_for(double bandwidth) {
  if (!(bandwidth > 0.0)) throw ArgumentError("bandwidth must be positive");
  const double wanted = std::ceil(4.0 / bandwidth) + 1.0;
  return unit_grid(static_cast<std::size_t>(std::clamp(wanted, 513.0, 20001.0)));
}

DensitySeries kde(std::span<const double> samples, std::span<const double> xs,
                  std::optional<double> bandwidth, std::string class_label) {
  if (samples.size() < 2) throw DataError("KDE needs at least two samples");
  for (double s : samples) {
    if (!std::isfinite(s)) throw DataError("KDE sample is not finite");
  }
  if (xs.empty()) throw ArgumentError("KDE needs at least one abscissa");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] >= 0.0 && xs[i] <= 1.0) || (i > 0 && !(xs[i] > xs[i - 1]))) {
      throw ArgumentError("KDE abscissae must be strictly increasing in [0,1]");
    }
  }
  const double h = bandwidth ? *bandwidth : silverman_bandwidth(samples);
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw ArgumentError("bandwidth must be positive");
  }

  // Sorting fixes the summation order, so the estimate does not depend on
  // the order samples arrive in.
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double norm =
      1.0 / (static_cast<double>(sorted.size()) * h *
             std::sqrt(2.0 * std::numbers::pi));

  DensitySeries out;
  out.class_label = std::move(class_label);
  out.xs.assign(xs.begin(), xs.end());
  out.densities.reserve(xs.size());
  out.bandwidth = h;
  for (double x : xs) {
    auto first = std::lower_bound(sorted.begin(), sorted.end(),
                                  x - kKernelReach * h);
    auto last = std::upper_bound(first, sorted.end(), x + kKernelReach * h);
    double sum = 0.0;
    for (auto it = first; it != last; ++it) {
      const double z = (x - *it) / h;
      sum += std::exp(-0.5 * z * z);
    }
    out.densities.push_back(sum * norm);
  }
  return out;
}

double trapezoid(const DensitySeries& series) {
  double area = 0.0;
  for (std::size_t i = 1; i < series.xs.size(); ++i) {
    area += 0.5 * (series.densities[i] + series.densities[i - 1]) *
            (series.xs[i] - series.xs[i - 1]);
  }
  return area;
}

}  // namespace padeval
