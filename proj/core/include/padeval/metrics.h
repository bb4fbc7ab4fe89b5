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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "padeval/score_set.h"

namespace padeval {

// Attack potentials reported in the BPCER_AP ladder.
inline constexpr std::array<int, 8> kApLadder = {10,  20,  50,   100,
                                                 200, 500, 1000, 10000};

// Which APCER drives a metric: one named species, or the worst (maximum)
// APCER over all non-empty scored species at each threshold.
class SpeciesSelector {
 public:
  static SpeciesSelector worst_case() { return SpeciesSelector(); }
  static SpeciesSelector species(std::string name) {
    SpeciesSelector s;
    s.name_ = std::move(name);
    return s;
  }
  // "worst" or "worst-case" select the worst case, anything else a species.
  static SpeciesSelector parse(std::string_view text);

  bool is_worst_case() const noexcept { return name_.empty(); }
  const std::string& name() const noexcept { return name_; }
  std::string to_string() const { return is_worst_case() ? "worst-case" : name_; }

  friend bool operator==(const SpeciesSelector&, const SpeciesSelector&) = default;

 private:
  SpeciesSelector() = default;
  std::string name_;
};

// Candidate thresholds: the domain bounds plus every distinct
// bona-fide-class score in the set. BPCER and APCER are step functions that
// only change at observed scores, so evaluating them here loses nothing.
class ThresholdGrid {
 public:
  explicit ThresholdGrid(const ScoreSet& set);
  // Grid over arbitrary real scores, all of which must lie in [lo, hi].
  ThresholdGrid(std::span<const double> scores, double lo, double hi);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
};

// APCER and BPCER evaluated at every grid threshold.
struct RateCurve {
  std::vector<double> tau;
  std::vector<double> apcer;
  std::vector<double> bpcer;
};

struct EerResult {
  double eer = 0.0;
  double tau = 0.0;
  // True when APCER == BPCER at a grid threshold.
  bool exact = false;

  friend bool operator==(const EerResult&, const EerResult&) = default;
};

enum class ApSearch {
  kNearest,       // smallest grid threshold meeting the APCER target
  kInterpolated,  // linear interpolation of BPCER in APCER when bracketed
};

struct BpcerApResult {
  int ap = 0;
  double target_apcer = 0.0;  // 1 / ap
  double bpcer = 0.0;
  double tau = 0.0;
  double apcer = 0.0;  // APCER realized at tau
  // No threshold below 1.0 meets the target: attack scores pile up at the
  // score ceiling. tau is then the largest grid threshold below 1.0.
  bool saturated = false;
  bool interpolated = false;

  friend bool operator==(const BpcerApResult&, const BpcerApResult&) = default;
};

struct SpeciesRate {
  std::string species;
  double rate = 0.0;

  friend bool operator==(const SpeciesRate&, const SpeciesRate&) = default;
};

struct OperatingPoint {
  double tau = 0.0;
  double bpcer = 0.0;
  std::vector<SpeciesRate> apcer_per_species;  // non-empty scored species
  double apcer_worst = 0.0;
  std::string worst_species;
  double acer = 0.0;
  bool saturated = false;
  bool interpolated = false;
};

// --- single-threshold metrics; tau must lie in [0,1] -----------------------

double bpcer(const ScoreSet& set, double tau);
double apcer_pais(const ScoreSet& set, std::string_view species, double tau);
// Max APCER over non-empty scored species; ties go to the first species in
// manifest order.
SpeciesRate apcer_worst(const ScoreSet& set, double tau);
double acer(const ScoreSet& set, double tau);
double acer(double apcer_worst, double bpcer);
OperatingPoint operating_point(const ScoreSet& set, double tau);

// --- threshold sweeps ------------------------------------------------------

RateCurve rate_curve(const ScoreSet& set, const SpeciesSelector& species);
// Sweep over raw scores. bona_fide and each attack span must be sorted
// ascending; apcer is the maximum over attack groups.
RateCurve rate_curve(std::span<const double> bona_fide,
                     std::span<const std::span<const double>> attacks,
                     std::span<const double> grid);

// Equal error rate. If APCER - BPCER changes sign between adjacent grid
// thresholds both rates are interpolated linearly in tau; if no crossing
// exists the grid threshold minimising |APCER - BPCER| is used and the mean
// of both rates reported.
EerResult eer(const ScoreSet& set,
              const SpeciesSelector& species = SpeciesSelector::worst_case());
EerResult eer(const RateCurve& curve);

// BPCER at APCER fixed to 1/ap (ap >= 2).
BpcerApResult bpcer_at_ap(
    const ScoreSet& set, int ap,
    const SpeciesSelector& species = SpeciesSelector::worst_case(),
    ApSearch search = ApSearch::kNearest);
BpcerApResult bpcer_at_ap(const RateCurve& curve, int ap,
                          ApSearch search = ApSearch::kNearest);

// --- confusion matrices ----------------------------------------------------

enum class MatrixMode { kFull, kBinary };

// Rows are true labels, columns predicted labels, counts row-major.
struct ConfusionMatrix {
  std::vector<std::string> true_labels;
  std::vector<std::string> predicted_labels;
  std::vector<std::size_t> counts;

  std::size_t at(std::size_t row, std::size_t col) const {
    return counts.at(row * predicted_labels.size() + col);
  }
  std::size_t& at(std::size_t row, std::size_t col) {
    return counts.at(row * predicted_labels.size() + col);
  }
  std::size_t row_total(std::size_t row) const;
  std::size_t total() const;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

inline constexpr std::string_view kBinaryAttackLabel = "attack";

// Prediction: bona fide if its score exceeds tau, otherwise the attack class
// with the highest score (first in manifest order on ties). Binary mode
// collapses all attack labels into one row and one column.
ConfusionMatrix confusion_matrix(const ScoreSet& set, double tau,
                                 MatrixMode mode = MatrixMode::kFull);
// Index into score_classes() of the predicted class.
std::size_t predict_class(const ScoreRecord& record, double tau);

// --- threshold selection ---------------------------------------------------

// A literal threshold or "auto:bpcerN", the threshold of the BPCER_N
// operating point.
class ThresholdSelector {
 public:
  static ThresholdSelector literal(double tau);
  static ThresholdSelector auto_bpcer(int ap);
  // Throws ArgumentError for malformed text or N outside kApLadder.
  static ThresholdSelector parse(std::string_view text);

  bool is_auto() const noexcept { return ap_ != 0; }
  int ap() const noexcept { return ap_; }
  double tau() const noexcept { return tau_; }
  std::string to_string() const;

 private:
  ThresholdSelector() = default;
  double tau_ = 0.0;
  int ap_ = 0;
};

struct ResolvedThreshold {
  double tau = 0.0;
  std::optional<BpcerApResult> operating_point;  // set for auto selectors
};

ResolvedThreshold resolve_threshold(
    const ScoreSet& set, const ThresholdSelector& selector,
    const SpeciesSelector& species = SpeciesSelector::worst_case());

}  // namespace padeval
