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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "padeval/curves.h"
#include "padeval/kde.h"
#include "padeval/metrics.h"

namespace padeval {

// DET axes show rates in [kDetFloor, kDetCeiling]. Rates below the floor
// (including exact zeros, where the probit diverges) are drawn on it.
inline constexpr double kDetFloor = 0.001;
inline constexpr double kDetCeiling = 0.5;

struct PlotOptions {
  std::string title;
  int width = 640;
  int height = 480;
  // Axis bounds in data units; defaults depend on the plot kind.
  std::optional<double> x_min, x_max, y_min, y_max;
};

struct DetPlot {
  std::vector<DetEntry> entries;
};

struct EerPlot {
  EerCurve curve;
};

enum class DensityScale { kLinear, kLog };

struct KdePlot {
  std::vector<DensitySeries> series;
  DensityScale scale = DensityScale::kLinear;
  std::optional<double> threshold;  // drawn as a dashed vertical line
};

struct ConfusionPlot {
  ConfusionMatrix matrix;
};

using PlotData = std::variant<DetPlot, EerPlot, KdePlot, ConfusionPlot>;

// SVG 1.1 document. Output is a pure function of the inputs: coordinates are
// printed with 6 significant digits, no timestamps, no locale. DET plots warp
// both axes with the probit and mark the BPCER10 / BPCER20 operating points
// (APCER = 10% and 5%) with dashed guides. Throws DataError for empty data
// or a DET series lying entirely outside the axes.
std::string render_svg(const PlotData& plot, const PlotOptions& options = {});

}  // namespace padeval
