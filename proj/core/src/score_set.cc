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

#include "padeval/score_set.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>
#include <utility>

#include "padeval/error.h"

namespace padeval {

Decision decide(const ScoreRecord& record, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw ArgumentError("threshold must lie in [0,1]");
  }
  return record.bona_fide_score() > tau ? Decision::kBonaFide
                                        : Decision::kAttack;
}

ScoreSet::ScoreSet(ClassTaxonomy taxonomy, std::vector<ScoreRecord> records)
    : taxonomy_(std::move(taxonomy)),
      records_(std::move(records)),
      counts_(taxonomy_.label_count(), 0),
      sorted_scores_(taxonomy_.label_count()) {
  std::unordered_set<std::string_view> ids;
  ids.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    auto where = [&] {
      return "record " + std::to_string(i + 1) + " ('" + r.sample_id + "'): ";
    };
    if (r.label >= taxonomy_.label_count()) {
      throw DataError(where() + "label outside the taxonomy");
    }
    if (r.scores.size() != taxonomy_.score_class_count()) {
      throw DataError(where() + "expected " +
                      std::to_string(taxonomy_.score_class_count()) +
                      " scores, got " + std::to_string(r.scores.size()));
    }
    for (double s : r.scores) {
      if (!std::isfinite(s) || s < 0.0 || s > 1.0) {
        throw DataError(where() + "score outside [0,1]");
      }
    }
    if (!ids.insert(r.sample_id).second) {
      throw DataError(where() + "duplicate sample_id");
    }
    ++counts_[r.label];
    sorted_scores_[r.label].push_back(r.bona_fide_score());
  }
  if (counts_[kBonaFideLabel] == 0) {
    throw DataError("score set contains no bona fide samples");
  }
  for (auto& v : sorted_scores_) {
    std::sort(v.begin(), v.end());
    distinct_scores_.insert(distinct_scores_.end(), v.begin(), v.end());
  }
  std::sort(distinct_scores_.begin(), distinct_scores_.end());
  distinct_scores_.erase(
      std::unique(distinct_scores_.begin(), distinct_scores_.end()),
      distinct_scores_.end());
}

std::size_t ScoreSet::count(std::string_view species) const {
  return counts_[taxonomy_.species_id(species)];
}

ScoreRecord make_record(const ClassTaxonomy& taxonomy, std::string sample_id,
                        std::string_view label, std::vector<double> scores) {
  return ScoreRecord{std::move(sample_id), taxonomy.label_id(label),
                     std::move(scores)};
}

}  // namespace padeval
