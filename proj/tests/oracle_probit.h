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

#ifndef PADEVAL_TESTS_ORACLE_PROBIT_H_
#define PADEVAL_TESTS_ORACLE_PROBIT_H_

#include <cmath>

namespace padeval::oracle {

// Quantile by bisection on Phi(x) = erfc(-x / sqrt 2) / 2. Runs until the
// bracket stops shrinking in double precision.
inline double probit_bisect(double p) {
  auto cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace padeval::oracle

#endif  // PADEVAL_TESTS_ORACLE_PROBIT_H_
