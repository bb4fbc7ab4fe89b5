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

#include "padeval/taxonomy.h"

#include <algorithm>
#include <string>
#include <unordered_set>
#include <utility>

#include "json.hpp"
#include "padeval/error.h"

namespace padeval {
namespace {

void check_names(const std::vector<std::string>& labels) {
  std::unordered_set<std::string_view> seen;
  for (const auto& name : labels) {
    if (name.empty()) throw DataError("class names must be non-empty");
    if (!seen.insert(name).second) {
      if (name == labels.front()) {
        throw DataError("bona fide class '" + name +
                        "' is also listed as an attack species");
      }
      throw DataError("duplicate class name '" + name + "'");
    }
  }
}

}  // namespace

ClassTaxonomy::ClassTaxonomy(std::string bona_fide,
                             std::vector<std::string> attack_species,
                             std::vector<std::string> unscored_species)
    : n_scored_(attack_species.size()) {
  if (attack_species.empty()) {
    throw DataError("attack species list must not be empty");
  }
  labels_.reserve(1 + attack_species.size() + unscored_species.size());
  labels_.push_back(std::move(bona_fide));
  for (auto& s : attack_species) labels_.push_back(std::move(s));
  for (auto& s : unscored_species) labels_.push_back(std::move(s));
  check_names(labels_);
}

std::span<const std::string> ClassTaxonomy::attack_species() const noexcept {
  return std::span(labels_).subspan(1, n_scored_);
}

std::span<const std::string> ClassTaxonomy::unscored_species() const noexcept {
  return std::span(labels_).subspan(n_scored_ + 1);
}

std::span<const std::string> ClassTaxonomy::score_classes() const noexcept {
  return std::span(labels_).first(n_scored_ + 1);
}

std::optional<LabelId> ClassTaxonomy::find_label(
    std::string_view name) const noexcept {
  auto it = std::find(labels_.begin(), labels_.end(), name);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<LabelId>(it - labels_.begin());
}

LabelId ClassTaxonomy::label_id(std::string_view name) const {
  if (auto id = find_label(name)) return *id;
  throw ArgumentError("unknown class '" + std::string(name) + "'");
}

LabelId ClassTaxonomy::species_id(std::string_view name) const {
  auto id = find_label(name);
  if (!id) throw ArgumentError("unknown species '" + std::string(name) + "'");
  if (*id == kBonaFideLabel) {
    throw ArgumentError("'" + std::string(name) +
                        "' is the bona fide class, not an attack species");
  }
  return *id;
}

ClassTaxonomy ClassTaxonomy::with_unscored(
    std::span<const std::string> extra) const {
  auto species = attack_species();
  std::vector<std::string> unscored(unscored_species().begin(),
                                    unscored_species().end());
  for (const auto& name : extra) {
    if (!find_label(name) &&
        std::find(unscored.begin(), unscored.end(), name) == unscored.end()) {
      unscored.push_back(name);
    }
  }
  return ClassTaxonomy(bona_fide(), {species.begin(), species.end()},
                       std::move(unscored));
}

ClassTaxonomy parse_manifest(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed manifest: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("manifest must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "bona_fide" && key != "attack_species" &&
        key != "unscored_species") {
      throw DataError("manifest: unknown key '" + key + "'");
    }
  }
  auto string_list = [&](const char* key, bool required) {
    std::vector<std::string> out;
    if (!doc.contains(key)) {
      if (required) throw DataError(std::string("manifest: missing '") + key + "'");
      return out;
    }
    const auto& arr = doc.at(key);
    if (!arr.is_array()) {
      throw DataError(std::string("manifest: '") + key + "' must be an array");
    }
    for (const auto& v : arr) {
      if (!v.is_string()) {
        throw DataError(std::string("manifest: '") + key +
                        "' entries must be strings");
      }
      out.push_back(v.get<std::string>());
    }
    return out;
  };
  if (!doc.contains("bona_fide") || !doc.at("bona_fide").is_string()) {
    throw DataError("manifest: 'bona_fide' must be a string");
  }
  return ClassTaxonomy(doc.at("bona_fide").get<std::string>(),
                       string_list("attack_species", true),
                       string_list("unscored_species", false));
}

std::string serialize_manifest(const ClassTaxonomy& taxonomy) {
  nlohmann::ordered_json doc;
  doc["bona_fide"] = taxonomy.bona_fide();
  auto species = taxonomy.attack_species();
  doc["attack_species"] = std::vector<std::string>(species.begin(), species.end());
  if (!taxonomy.unscored_species().empty()) {
    auto unscored = taxonomy.unscored_species();
    doc["unscored_species"] =
        std::vector<std::string>(unscored.begin(), unscored.end());
  }
  return doc.dump(2) + "\n";
}

}  // namespace padeval
