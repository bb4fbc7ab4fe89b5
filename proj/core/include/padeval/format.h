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

namespace padeval {

// Fixed-point text with decimals (0..8) digits after the point, rounded half
// away from zero in decimal. The value is first snapped to 9 decimals so that
// binary noise does not decide ties: 1.68305 is stored as 1.6830499999...
// yet formats to "1.6831" at 4 decimals. Locale-independent.
std::string format_fixed(double value, int decimals);

// Percent of a rate in [0,1], e.g. 0.016823 -> "1.6823".
inline std::string format_percent(double rate, int decimals = 4) {
  return format_fixed(rate * 100.0, decimals);
}

// Parses format_fixed output back into a double.
double round_fixed(double value, int decimals);

}  // namespace padeval
