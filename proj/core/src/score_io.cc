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

#include "padeval/score_io.h"

#include <charconv>
#include <cmath>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "padeval/error.h"

namespace padeval {
namespace {

// Splits text into lines, dropping a trailing '\r'. Yields (line number, view).
std::vector<std::pair<std::size_t, std::string_view>> split_lines(
    std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line_no, line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t") == std::string_view::npos;
}

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// RFC 4180 style field splitting (quoted fields, doubled quotes).
std::vector<std::string> split_csv(std::string_view line, std::size_t row) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && trim(field).empty() && !was_quoted) {
      field.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? field : std::string(trim(field)));
      field.clear();
      was_quoted = false;
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw DataError("unterminated quoted field", row);
  fields.push_back(was_quoted ? field : std::string(trim(field)));
  return fields;
}

double parse_score(std::string_view text, std::size_t row,
                   const std::string& column) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw DataError("column '" + column + "': not a number: '" +
                        std::string(text) + "'",
                    row);
  }
  if (!std::isfinite(value)) {
    throw DataError("column '" + column + "': non-finite score", row);
  }
  if (value < 0.0 || value > 1.0) {
    throw DataError("column '" + column + "': score outside [0,1]", row);
  }
  return value;
}

// Row-aware validation shared by both formats; ScoreSet re-checks invariants
// but cannot name input lines.
class RecordBuilder {
 public:
  explicit RecordBuilder(const ClassTaxonomy& taxonomy) : taxonomy_(taxonomy) {}

  void add(std::size_t row, std::string sample_id, std::string_view label,
           std::vector<double> scores) {
    if (sample_id.empty()) throw DataError("empty sample_id", row);
    auto id = taxonomy_.find_label(label);
    if (!id) {
      throw DataError("unknown label '" + std::string(label) + "'", row);
    }
    auto [it, inserted] = first_row_.emplace(sample_id, row);
    if (!inserted) {
      throw DataError("duplicate sample_id '" + sample_id +
                          "' (first seen on row " + std::to_string(it->second) +
                          ")",
                      row);
    }
    records_.push_back(ScoreRecord{std::move(sample_id), *id, std::move(scores)});
  }

  ScoreSet finish() && {
    return ScoreSet(taxonomy_, std::move(records_));
  }

 private:
  const ClassTaxonomy& taxonomy_;
  std::vector<ScoreRecord> records_;
  std::unordered_map<std::string, std::size_t> first_row_;
};

ScoreSet parse_csv(std::string_view text, const ClassTaxonomy& taxonomy) {
  auto lines = split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && is_blank(lines[i].second)) ++i;
  if (i == lines.size()) throw DataError("score file is empty");

  const auto classes = taxonomy.score_classes();
  const auto header_row = lines[i].first;
  auto header = split_csv(lines[i].second, header_row);
  if (header.size() < 2 || header[0] != "sample_id" || header[1] != "label") {
    throw DataError("header must start with 'sample_id,label'", header_row);
  }
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (c + 2 >= header.size()) {
      throw DataError("missing class column '" + classes[c] + "'", header_row);
    }
    if (header[c + 2] != classes[c]) {
      throw DataError("expected class column '" + classes[c] + "' at position " +
                          std::to_string(c + 3) + ", found '" + header[c + 2] +
                          "'",
                      header_row);
    }
  }
  if (header.size() != classes.size() + 2) {
    throw DataError("unexpected column '" + header[classes.size() + 2] + "'",
                    header_row);
  }

  RecordBuilder builder(taxonomy);
  for (++i; i < lines.size(); ++i) {
    const auto [row, line] = lines[i];
    if (is_blank(line)) continue;
    auto fields = split_csv(line, row);
    if (fields.size() != header.size()) {
      throw DataError("expected " + std::to_string(header.size()) +
                          " fields, got " + std::to_string(fields.size()),
                      row);
    }
    std::vector<double> scores;
    scores.reserve(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
      scores.push_back(parse_score(fields[c + 2], row, classes[c]));
    }
    builder.add(row, std::move(fields[0]), fields[1], std::move(scores));
  }
  return std::move(builder).finish();
}

ScoreSet parse_jsonl(std::string_view text, const ClassTaxonomy& taxonomy) {
  using nlohmann::json;
  const auto classes = taxonomy.score_classes();
  RecordBuilder builder(taxonomy);
  for (const auto& [row, line] : split_lines(text)) {
    if (is_blank(line)) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError(std::string("malformed JSON: ") + e.what(), row);
    }
    if (!obj.is_object()) throw DataError("expected a JSON object", row);
    for (const auto& [key, value] : obj.items()) {
      if (key != "sample_id" && key != "label" && key != "scores") {
        throw DataError("unknown key '" + key + "'", row);
      }
    }
    for (const char* key : {"sample_id", "label"}) {
      if (!obj.contains(key) || !obj.at(key).is_string()) {
        throw DataError(std::string("'") + key + "' must be a string", row);
      }
    }
    if (!obj.contains("scores") || !obj.at("scores").is_object()) {
      throw DataError("'scores' must be an object", row);
    }
    const auto& score_obj = obj.at("scores");
    for (const auto& [key, value] : score_obj.items()) {
      if (!taxonomy.find_label(key) ||
          !taxonomy.is_scored(*taxonomy.find_label(key))) {
        throw DataError("unknown class column '" + key + "'", row);
      }
    }
    std::vector<double> scores;
    scores.reserve(classes.size());
    for (const auto& cls : classes) {
      if (!score_obj.contains(cls)) {
        throw DataError("missing class column '" + cls + "'", row);
      }
      const auto& v = score_obj.at(cls);
      if (!v.is_number()) {
        throw DataError("column '" + cls + "': not a number", row);
      }
      double value = v.get<double>();
      if (!std::isfinite(value)) {
        throw DataError("column '" + cls + "': non-finite score", row);
      }
      if (value < 0.0 || value > 1.0) {
        throw DataError("column '" + cls + "': score outside [0,1]", row);
      }
      scores.push_back(value);
    }
    builder.add(row, obj.at("sample_id").get<std::string>(),
                obj.at("label").get<std::string>(), std::move(scores));
  }
  return std::move(builder).finish();
}

void append_number(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

void append_csv_field(std::string& out, std::string_view field) {
  bool needs_quotes =
      field.find_first_of(",\"\r\n") != std::string_view::npos ||
      (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs_quotes) {
    out.append(field);
    return;
  }
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

}  // namespace

ScoreFormat format_for_path(std::string_view path) {
  auto ends_with = [&](std::string_view suffix) { return path.ends_with(suffix); };
  return ends_with(".jsonl") || ends_with(".ndjson") ? ScoreFormat::kJsonl
                                                     : ScoreFormat::kCsv;
}

ScoreSet parse_scores(std::string_view text, const ClassTaxonomy& taxonomy,
                      ScoreFormat format) {
  return format == ScoreFormat::kCsv ? parse_csv(text, taxonomy)
                                     : parse_jsonl(text, taxonomy);
}

std::string serialize_scores(const ScoreSet& set, ScoreFormat format) {
  const auto& taxonomy = set.taxonomy();
  const auto classes = taxonomy.score_classes();
  std::string out;
  if (format == ScoreFormat::kCsv) {
    out += "sample_id,label";
    for (const auto& c : classes) {
      out.push_back(',');
      append_csv_field(out, c);
    }
    out.push_back('\n');
    for (const auto& r : set.records()) {
      append_csv_field(out, r.sample_id);
      out.push_back(',');
      append_csv_field(out, taxonomy.label_name(r.label));
      for (double s : r.scores) {
        out.push_back(',');
        append_number(out, s);
      }
      out.push_back('\n');
    }
    return out;
  }
  for (const auto& r : set.records()) {
    out += "{\"sample_id\":";
    out += nlohmann::json(r.sample_id).dump();
    out += ",\"label\":";
    out += nlohmann::json(taxonomy.label_name(r.label)).dump();
    out += ",\"scores\":{";
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (c > 0) out.push_back(',');
      out += nlohmann::json(classes[c]).dump();
      out.push_back(':');
      append_number(out, r.scores[c]);
    }
    out += "}}\n";
  }
  return out;
}

}  // namespace padeval
