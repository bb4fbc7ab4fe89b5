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
#include <string_view>
#include <vector>

#include "padeval/taxonomy.h"

namespace padeval {

// One classified sample. scores is aligned with ClassTaxonomy::score_classes(),
// so scores[0] is always the bona-fide-class score.
struct ScoreRecord {
  std::string sample_id;
  LabelId label = kBonaFideLabel;
  std::vector<double> scores;

  double bona_fide_score() const { return scores.front(); }

  friend bool operator==(const ScoreRecord&, const ScoreRecord&) = default;
};

enum class Decision { kBonaFide, kAttack };

// Bona fide iff the bona-fide-class score is strictly greater than tau; a score
// equal to tau is an attack. Throws ArgumentError unless tau is in [0,1].
Decision decide(const ScoreRecord& record, double tau);

// Immutable, validated collection of scored samples. Construction checks every
// record against the taxonomy and rejects duplicate sample ids; it also caches
// the sorted bona-fide-class scores of each label for threshold sweeps.
class ScoreSet {
 public:
  // Throws DataError naming the first offending record.
  ScoreSet(ClassTaxonomy taxonomy, std::vector<ScoreRecord> records);

  const ClassTaxonomy& taxonomy() const noexcept { return taxonomy_; }
  std::span<const ScoreRecord> records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }

  std::size_t n_bona_fide() const noexcept { return counts_[kBonaFideLabel]; }
  std::size_t count(LabelId label) const { return counts_.at(label); }
  // N_PAIS for a species; throws ArgumentError for unknown names.
  std::size_t count(std::string_view species) const;

  // Ascending bona-fide-class scores of every record with the given label.
  std::span<const double> sorted_scores(LabelId label) const {
    return sorted_scores_.at(label);
  }
  // Ascending distinct bona-fide-class scores over all records.
  std::span<const double> distinct_scores() const noexcept {
    return distinct_scores_;
  }

  friend bool operator==(const ScoreSet& a, const ScoreSet& b) {
    return a.taxonomy_ == b.taxonomy_ && a.records_ == b.records_;
  }

 private:
  ClassTaxonomy taxonomy_;
  std::vector<ScoreRecord> records_;
  std::vector<std::size_t> counts_;
  std::vector<std::vector<double>> sorted_scores_;
  std::vector<double> distinct_scores_;
};

// Builds a record from a label name and per-class scores given in
// taxonomy.score_classes() order.
ScoreRecord make_record(const ClassTaxonomy& taxonomy, std::string sample_id,
                        std::string_view label, std::vector<double> scores);

}  // namespace padeval
