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
#include <span>
#include <string>
#include <vector>

#include "padeval/metrics.h"
#include "padeval/score_set.h"

namespace padeval {

// A sample seen by both stages: indices into the border and source sets.
struct JoinedSample {
  std::size_t border = 0;
  std::size_t source = 0;
};

// Two-stage system: a border-model stage and a source-model stage scored on
// the same samples, combined by decision-level conjunction (a sample is bona
// fide only if both stages accept it).
//
// Both sets must hold exactly the same sample ids with identical true label
// strings and the same bona fide class name. A species known to only one
// stage should appear as an unscored species in the other stage's taxonomy
// (see ClassTaxonomy::with_unscored).
class CascadeConfig {
 public:
  // Throws DataError on mismatched id sets, inconsistent labels or an empty
  // join; ArgumentError for thresholds outside [0,1].
  CascadeConfig(ScoreSet border, ScoreSet source, double tau_border,
                double tau_source);

  const ScoreSet& border() const noexcept { return border_; }
  const ScoreSet& source() const noexcept { return source_; }
  double tau_border() const noexcept { return tau_border_; }
  double tau_source() const noexcept { return tau_source_; }
  // In border-set record order.
  std::span<const JoinedSample> joined() const noexcept { return joined_; }

  // Union of both stages' attack labels: border species first, then source
  // species not already listed.
  const std::vector<std::string>& species() const noexcept { return species_; }

  // Same join, other thresholds.
  CascadeConfig with_thresholds(double tau_border, double tau_source) const;

 private:
  ScoreSet border_;
  ScoreSet source_;
  double tau_border_;
  double tau_source_;
  std::vector<JoinedSample> joined_;
  std::vector<std::string> species_;
};

// Bona fide iff both stages accept. Throws DataError if the sample ids differ.
Decision combined_decide(const ScoreRecord& border, const ScoreRecord& source,
                         double tau_border, double tau_source);

struct CascadeRates {
  double tau_border = 0.0;
  double tau_source = 0.0;
  double bpcer = 0.0;  // bona fide rejected by at least one stage
  std::vector<SpeciesRate> apcer_per_species;  // accepted by both stages
  double apcer_worst = 0.0;
  std::string worst_species;
  double acer = 0.0;
};

CascadeRates cascade_rates(const CascadeConfig& config);

// Columns: bona fide, border attack classes, source attack classes not in the
// border stage. A sample accepted by both stages is predicted bona fide;
// otherwise it gets the attack class with the highest score across both
// stages (ties: border classes first, manifest order within a stage).
ConfusionMatrix cascade_confusion(const CascadeConfig& config,
                                  MatrixMode mode = MatrixMode::kFull);

// A row of the cascade summary: per-stage thresholds taken from each stage's
// own operating point, with the combined rates there.
struct CascadeRow {
  std::string metric;  // "EER", "BPCER10", ...
  CascadeRates rates;
};

// EER row (each stage at its worst-case EER threshold) followed by one row per
// attack potential (each stage at its own worst-case BPCER_AP threshold).
std::vector<CascadeRow> cascade_table(const CascadeConfig& config,
                                      std::span<const int> aps);

}  // namespace padeval
