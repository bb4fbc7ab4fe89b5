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

#include "padeval/class_weights.h"

#include <charconv>
#include <set>
#include <utility>

#include "padeval/error.h"

namespace padeval {
namespace {

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

ClassCount parse_pair(std::string_view name, std::string_view value,
                      std::size_t row) {
  name = trim(name);
  value = trim(value);
  std::uint64_t count = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), count);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
    throw DataError("count for '" + std::string(name) +
                        "' is not a non-negative integer: '" +
                        std::string(value) + "'",
                    row);
  }
  return {std::string(name), count};
}

}  // namespace

ClassCounts::ClassCounts(std::vector<ClassCount> counts)
    : counts_(std::move(counts)) {
  if (counts_.size() < 2) throw DataError("class weights need at least two classes");
  std::set<std::string_view> names;
  for (const auto& c : counts_) {
    if (c.name.empty()) throw DataError("empty class name");
    if (!names.insert(c.name).second) {
      throw DataError("duplicate class '" + c.name + "'");
    }
    if (c.count == 0) throw DataError("class '" + c.name + "' has zero samples");
    total_ += c.count;
  }
}

std::vector<ClassWeight> class_weights(const ClassCounts& counts) {
  const double total = static_cast<double>(counts.total());
  const double k = static_cast<double>(counts.entries().size());
  std::vector<ClassWeight> weights;
  weights.reserve(counts.entries().size());
  for (const auto& c : counts.entries()) {
    weights.push_back({c.name, total / (k * static_cast<double>(c.count))});
  }
  return weights;
}

ClassCounts parse_counts_inline(std::string_view text) {
  std::vector<ClassCount> counts;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto item = text.substr(0, comma);
    auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw DataError("expected class=count, got '" + std::string(item) + "'");
    }
    counts.push_back(parse_pair(item.substr(0, eq), item.substr(eq + 1), 0));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return ClassCounts(std::move(counts));
}

ClassCounts parse_counts_csv(std::string_view text) {
  std::vector<ClassCount> counts;
  std::size_t row = 0;
  while (!text.empty()) {
    ++row;
    auto nl = text.find('\n');
    auto line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw DataError("expected 'class,count'", row);
    }
    if (row == 1 && trim(line.substr(0, comma)) == "class" &&
        trim(line.substr(comma + 1)) == "count") {
      continue;
    }
    counts.push_back(parse_pair(line.substr(0, comma), line.substr(comma + 1), row));
  }
  return ClassCounts(std::move(counts));
}

}  // namespace padeval
