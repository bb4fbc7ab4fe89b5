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

#include "padeval/curves.h"

#include <utility>

namespace padeval {

CurveSeries det_curve(const ScoreSet& set, const SpeciesSelector& species) {
  const RateCurve rc = rate_curve(set, species);
  CurveSeries series;
  series.label = species.to_string();
  for (std::size_t k = 0; k < rc.tau.size(); ++k) {
    if (!series.points.empty() && series.points.back().apcer == rc.apcer[k] &&
        series.points.back().bpcer == rc.bpcer[k]) {
      continue;
    }
    series.points.push_back({rc.tau[k], rc.apcer[k], rc.bpcer[k]});
  }
  return series;
}

EerCurve eer_curve(const ScoreSet& set, const SpeciesSelector& species) {
  RateCurve rc = rate_curve(set, species);
  EerCurve out;
  out.crossing = eer(rc);
  out.bpcer = {"BPCER", rc.tau, std::move(rc.bpcer)};
  const std::string apcer_label = species.is_worst_case()
                                      ? std::string("APCER")
                                      : "APCER " + species.name();
  out.apcer = {apcer_label, std::move(rc.tau), std::move(rc.apcer)};
  return out;
}

std::vector<DetEntry> det_entries(const ScoreSet& set) {
  std::vector<DetEntry> entries;
  for (const auto& name : set.taxonomy().attack_species()) {
    if (set.count(name) == 0) continue;
    const auto selector = SpeciesSelector::species(name);
    const RateCurve rc = rate_curve(set, selector);
    DetEntry e;
    e.curve = det_curve(set, selector);
    e.eer = eer(rc).eer;
    e.bpcer10 = bpcer_at_ap(rc, 10).bpcer;
    e.bpcer20 = bpcer_at_ap(rc, 20).bpcer;
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace padeval
