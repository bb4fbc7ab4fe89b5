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

#include <string>
#include <vector>

#include "padeval/metrics.h"
#include "padeval/score_set.h"

namespace padeval {

struct CurvePoint {
  double tau = 0.0;
  double apcer = 0.0;
  double bpcer = 0.0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

// Ordered by increasing tau; apcer non-increasing, bpcer non-decreasing.
struct CurveSeries {
  std::string label;
  std::vector<CurvePoint> points;
};

// (APCER, BPCER) over the full threshold grid with consecutive duplicate rate
// pairs removed (the lowest threshold of each run is kept).
CurveSeries det_curve(const ScoreSet& set, const SpeciesSelector& species);

struct RateSeries {
  std::string label;
  std::vector<double> tau;
  std::vector<double> rate;
};

// BPCER(tau) and APCER(tau) over the grid, plus the EER crossing.
struct EerCurve {
  RateSeries bpcer;
  RateSeries apcer;
  EerResult crossing;
};

EerCurve eer_curve(const ScoreSet& set, const SpeciesSelector& species);

// One DET entry per species, with the values highlighted on the plot.
struct DetEntry {
  CurveSeries curve;
  double eer = 0.0;
  double bpcer10 = 0.0;  // BPCER at APCER = 10%
  double bpcer20 = 0.0;  // BPCER at APCER = 5%
};

// DET entries for every non-empty scored species, in manifest order.
std::vector<DetEntry> det_entries(const ScoreSet& set);

}  // namespace padeval
