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

#include "padeval/format.h"

namespace padeval {
namespace {

TEST(FormatFixed, RoundsHalfAwayFromZeroInDecimal) {
  EXPECT_EQ(format_fixed(1.68305, 4), "1.6831");
  EXPECT_EQ(format_fixed(1.33865, 4), "1.3387");
  EXPECT_EQ(format_fixed(0.98465, 4), "0.9847");
  EXPECT_EQ(format_fixed(-0.00005, 4), "-0.0001");
  EXPECT_EQ(format_fixed(2.5, 0), "3");
  EXPECT_EQ(format_fixed(0.125, 2), "0.13");
}

TEST(FormatFixed, PlainValues) {
  EXPECT_EQ(format_fixed(1.0, 4), "1.0000");
  EXPECT_EQ(format_fixed(0.0, 4), "0.0000");
  EXPECT_EQ(format_fixed(-0.0, 4), "0.0000");
  EXPECT_EQ(format_fixed(-0.00001, 4), "0.0000");
  EXPECT_EQ(format_fixed(30.745831, 4), "30.7458");
  EXPECT_EQ(format_fixed(123456.789, 2), "123456.79");
  EXPECT_EQ(format_percent(0.016823), "1.6823");
  EXPECT_EQ(format_percent(1.0), "100.0000");
}

TEST(FormatFixed, RoundFixedMatchesText) {
  EXPECT_EQ(round_fixed(1.68305, 4), 1.6831);
  EXPECT_EQ(round_fixed(0.97054, 4), 0.9705);
}

}  // namespace
}  // namespace padeval
