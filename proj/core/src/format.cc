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

#include "padeval/format.h"

#include <charconv>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "padeval/error.h"

namespace padeval {

std::string format_fixed(double value, int decimals) {
  if (decimals < 0 || decimals > 8) {
    throw ArgumentError("format_fixed supports 0..8 decimals");
  }
  if (!std::isfinite(value)) return fmt::format("{}", value);

  const bool negative = std::signbit(value);
  std::string digits = fmt::format("{:.9f}", std::abs(value));
  const auto point = digits.find('.');
  std::string whole = digits.substr(0, point);
  std::string frac = digits.substr(point + 1);  // 9 digits

  std::string kept = whole + frac.substr(0, static_cast<std::size_t>(decimals));
  if (frac[static_cast<std::size_t>(decimals)] >= '5') {
    int i = static_cast<int>(kept.size()) - 1;
    while (i >= 0 && kept[static_cast<std::size_t>(i)] == '9') {
      kept[static_cast<std::size_t>(i)] = '0';
      --i;
    }
    if (i < 0) {
      kept.insert(kept.begin(), '1');
    } else {
      ++kept[static_cast<std::size_t>(i)];
    }
  }
  const auto whole_len = kept.size() - static_cast<std::size_t>(decimals);
  std::string out = kept.substr(0, whole_len);
  if (decimals > 0) out += "." + kept.substr(whole_len);
  if (negative && out.find_first_not_of("0.") != std::string::npos) {
    out.insert(out.begin(), '-');
  }
  return out;
}

double round_fixed(double value, int decimals) {
  const std::string text = format_fixed(value, decimals);
  double out = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

}  // namespace padeval
