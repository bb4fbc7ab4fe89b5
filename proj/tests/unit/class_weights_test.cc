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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "padeval/class_weights.h"
#include "padeval/error.h"
#include "padeval/format.h"

namespace padeval {
namespace {

std::vector<std::string> rounded(const std::vector<ClassWeight>& weights) {
  std::vector<std::string> out;
  for (const auto& w : weights) out.push_back(format_fixed(w.weight, 4));
  return out;
}

TEST(ClassWeights, BalancedCountsGiveOne) {
  const auto w = class_weights(ClassCounts({{"a", 100}, {"b", 100}}));
  EXPECT_EQ(w[0].weight, 1.0);
  EXPECT_EQ(w[1].weight, 1.0);
}

TEST(ClassWeights, ExperimentOneTrainingCounts) {
  const ClassCounts counts({{"bonafide", 9526 + 11613},
                            {"composite", 7779 + 13669},
                            {"synthetic", 9931 + 9931}});
  EXPECT_EQ(counts.total(), 62449u);
  EXPECT_EQ(rounded(class_weights(counts)),
            (std::vector<std::string>{"0.9847", "0.9705", "1.0480"}));
}

TEST(ClassWeights, ExperimentTwoTrainingCountsWithMergedPrintPlastic) {
  const ClassCounts counts({{"bonafide", 21139},
                            {"print_plastic", 9774 + 12341 + 1768 + 1878},
                            {"display", 12124 + 13299}});
  EXPECT_EQ(rounded(class_weights(counts)),
            (std::vector<std::string>{"1.1404", "0.9358", "0.9483"}));
}

TEST(ClassWeights, RejectsBadCounts) {
  EXPECT_THROW(ClassCounts({{"a", 1}}), DataError);
  EXPECT_THROW(ClassCounts({{"a", 1}, {"b", 0}}), DataError);
  EXPECT_THROW(ClassCounts({{"a", 1}, {"a", 2}}), DataError);
  EXPECT_THROW(ClassCounts({{"", 1}, {"b", 2}}), DataError);
}

TEST(ClassWeights, ParsesInlineAndCsv) {
  const auto inline_counts = parse_counts_inline("bonafide=100, attack=250");
  ASSERT_EQ(inline_counts.entries().size(), 2u);
  EXPECT_EQ(inline_counts.entries()[1].name, "attack");
  EXPECT_EQ(inline_counts.entries()[1].count, 250u);

  const auto csv = parse_counts_csv("class,count\nbonafide,100\r\nattack,250\n\n");
  EXPECT_EQ(csv.entries()[0].count, 100u);
  EXPECT_EQ(parse_counts_csv("a,1\nb,2\n").total(), 3u);

  for (const char* bad : {"a=1", "a=1,b", "a=1,b=x", "a=1,b=-2", "a=1,b=2.5", "=1,b=2", ""}) {
    EXPECT_THROW(parse_counts_inline(bad), DataError) << bad;
  }
  EXPECT_THROW(parse_counts_csv("a,1,2\nb,2\n"), DataError);
}

// Properties over random counts.
TEST(ClassWeightsProperty, MassConservationScalingAndSide) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = std::uniform_int_distribution<int>(2, 8)(rng);
    std::vector<ClassCount> entries;
    for (int i = 0; i < k; ++i) {
      entries.push_back({"c" + std::to_string(i),
                         std::uniform_int_distribution<std::uint64_t>(1, 100000)(rng)});
    }
    const ClassCounts counts(entries);
    const auto w = class_weights(counts);
    const double n = static_cast<double>(counts.total());

    double mass = 0.0;
    for (int i = 0; i < k; ++i) mass += w[i].weight * static_cast<double>(entries[i].count);
    EXPECT_NEAR(mass, n, 1e-9 * n);

    const std::uint64_t factor = std::uniform_int_distribution<std::uint64_t>(2, 1000)(rng);
    auto scaled_entries = entries;
    for (auto& e : scaled_entries) e.count *= factor;
    const auto scaled = class_weights(ClassCounts(scaled_entries));
    for (int i = 0; i < k; ++i) {
      EXPECT_NEAR(scaled[i].weight, w[i].weight, 1e-15 * w[i].weight);
    }

    for (int i = 0; i < k; ++i) {
      // Integer form of samples_i > N / K avoids a rounding-dependent check.
      const bool above_mean = entries[i].count * static_cast<std::uint64_t>(k) > counts.total();
      EXPECT_EQ(w[i].weight < 1.0, above_mean) << trial << " " << i;
    }
  }
}

}  // namespace
}  // namespace padeval
