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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace padeval {

// Index into ClassTaxonomy::labels(). 0 is always the bona fide class.
using LabelId = std::size_t;
inline constexpr LabelId kBonaFideLabel = 0;

// Names the bona fide class and the attack species (PAIS).
//
// Scored species carry a score column in score files. Unscored species are
// label-only: samples may carry them as true label, but the classifier emits
// no score for them. They exist so a stage of a two-stage system can be
// evaluated on attacks it was never trained to name.
//
// Label order is bona fide, scored species (manifest order), unscored species.
// Score order is bona fide, scored species.
class ClassTaxonomy {
 public:
  ClassTaxonomy(std::string bona_fide, std::vector<std::string> attack_species,
                std::vector<std::string> unscored_species = {});

  const std::string& bona_fide() const noexcept { return labels_.front(); }
  std::span<const std::string> attack_species() const noexcept;
  std::span<const std::string> unscored_species() const noexcept;
  std::span<const std::string> score_classes() const noexcept;
  std::span<const std::string> labels() const noexcept { return labels_; }

  std::size_t score_class_count() const noexcept { return n_scored_ + 1; }
  std::size_t label_count() const noexcept { return labels_.size(); }

  std::optional<LabelId> find_label(std::string_view name) const noexcept;
  // Throws ArgumentError if name is not a label.
  LabelId label_id(std::string_view name) const;
  // Throws ArgumentError unless name is an attack species (scored or not).
  LabelId species_id(std::string_view name) const;
  const std::string& label_name(LabelId id) const { return labels_.at(id); }
  bool is_scored(LabelId id) const noexcept { return id <= n_scored_; }

  // Returns a copy that additionally accepts every name in extra (that is not
  // already a label) as an unscored species.
  ClassTaxonomy with_unscored(std::span<const std::string> extra) const;

  friend bool operator==(const ClassTaxonomy&, const ClassTaxonomy&) = default;

 private:
  std::vector<std::string> labels_;
  std::size_t n_scored_ = 0;
};

// Manifest: {"bona_fide": "<name>", "attack_species": ["<name>", ...]}
// with an optional "unscored_species" list. Unknown keys are rejected.
ClassTaxonomy parse_manifest(std::string_view text);
std::string serialize_manifest(const ClassTaxonomy& taxonomy);

}  // namespace padeval
