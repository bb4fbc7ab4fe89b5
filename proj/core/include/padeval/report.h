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
#include <string>
#include <string_view>
#include <vector>

#include "padeval/cascade.h"
#include "padeval/metrics.h"
#include "padeval/score_set.h"

namespace padeval {

std::string_view toolkit_version();

struct LabelCount {
  std::string label;
  std::size_t count = 0;

  friend bool operator==(const LabelCount&, const LabelCount&) = default;
};

struct ReportMetadata {
  std::string dataset;
  std::string toolkit_version;
  std::size_t n_records = 0;
  std::size_t n_bona_fide = 0;
  std::vector<LabelCount> n_per_species;  // every attack label, manifest order
  std::string species_selector;           // "worst-case" or a species name
  std::string tau_selector;               // "auto:bpcer100", "0.5", ...

  friend bool operator==(const ReportMetadata&, const ReportMetadata&) = default;
};

// Summary of one score set: EER, the BPCER_AP ladder and the rates at the
// chosen operating point.
struct EvaluationReport {
  ReportMetadata metadata;
  EerResult eer;
  std::vector<BpcerApResult> ladder;  // one entry per kApLadder value
  double chosen_tau = 0.0;
  bool tau_saturated = false;
  std::vector<SpeciesRate> per_species_apcer;
  std::string worst_species;
  double bpcer_at_tau = 0.0;
  double acer_at_tau = 0.0;

  friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;
};

EvaluationReport build_report(
    const ScoreSet& set,
    const SpeciesSelector& species = SpeciesSelector::worst_case(),
    const ThresholdSelector& tau = ThresholdSelector::auto_bpcer(100),
    std::string dataset = {});

enum class ReportFormat { kJson, kMarkdown };

// Deterministic text. JSON keeps full double precision; markdown rounds
// percents and thresholds to 4 decimals.
std::string render_report(const EvaluationReport& report, ReportFormat format);

// Reads the JSON form back. Throws DataError on schema mismatches, including
// unknown fields.
EvaluationReport parse_report_json(std::string_view text);

inline constexpr std::string_view kReportSchema = "padeval.report";
inline constexpr std::string_view kCascadeReportSchema = "padeval.cascade-report";
inline constexpr int kReportSchemaVersion = 1;

struct CascadeReport {
  std::string border_dataset;
  std::string source_dataset;
  std::string toolkit_version;
  std::size_t n_samples = 0;
  std::string tau_border_selector;
  std::string tau_source_selector;
  std::vector<CascadeRow> rows;  // EER and BPCER_AP rows
  CascadeRates selected;         // at the selected per-stage thresholds
};

// Rows for EER and BPCER10/20/50/100, plus the selected operating point.
CascadeReport build_cascade_report(const CascadeConfig& config,
                                   std::string tau_border_selector,
                                   std::string tau_source_selector,
                                   std::string border_dataset = {},
                                   std::string source_dataset = {});

std::string render_cascade_report(const CascadeReport& report,
                                  ReportFormat format);

}  // namespace padeval
