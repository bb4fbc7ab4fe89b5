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
#include <string_view>

#include "padeval/score_set.h"
#include "padeval/taxonomy.h"

namespace padeval {

// CSV: header "sample_id,label,<bona fide>,<species...>" in manifest order,
//      one record per line, '.' decimal separator.
// JSONL: one {"sample_id": ..., "label": ..., "scores": {class: number}} per
//      line.
enum class ScoreFormat { kCsv, kJsonl };

// Picks the format from a file name: ".jsonl" / ".ndjson" are JSONL, anything
// else CSV.
ScoreFormat format_for_path(std::string_view path);

// Throws DataError naming the offending row (1-based line number).
ScoreSet parse_scores(std::string_view text, const ClassTaxonomy& taxonomy,
                      ScoreFormat format = ScoreFormat::kCsv);

// Scores are written in shortest round-trip form, so parse_scores of the
// output reproduces the set exactly.
std::string serialize_scores(const ScoreSet& set,
                             ScoreFormat format = ScoreFormat::kCsv);

}  // namespace padeval
