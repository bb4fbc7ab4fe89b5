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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace padeval {

struct ClassCount {
  std::string name;
  std::uint64_t count = 0;
};

struct ClassWeight {
  std::string name;
  double weight = 0.0;
};

// At least two uniquely named classes, every count >= 1.
class ClassCounts {
 public:
  explicit ClassCounts(std::vector<ClassCount> counts);

  std::span<const ClassCount> entries() const noexcept { return counts_; }
  std::uint64_t total() const noexcept { return total_; }

 private:
  std::vector<ClassCount> counts_;
  std::uint64_t total_ = 0;
};

// Balanced class weights, weight_i = N / (K * n_i): classes rarer than the
// average count get weights above 1. Full precision; round when reporting.
std::vector<ClassWeight> class_weights(const ClassCounts& counts);

// "bonafide=100,attack=250"
ClassCounts parse_counts_inline(std::string_view text);
// Two-column CSV "class,count" (the header line is optional).
ClassCounts parse_counts_csv(std::string_view text);

}  // namespace padeval
