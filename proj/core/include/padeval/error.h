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
#include <stdexcept>
#include <string>

namespace padeval {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid input data: malformed files, invariant violations, metrics requested
// on empty classes. row() is the 1-based line of the offending record when
// known, 0 otherwise.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what, std::size_t row = 0)
      : Error(row == 0 ? what : "row " + std::to_string(row) + ": " + what),
        row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

// A caller-supplied parameter is out of its domain (threshold outside [0,1],
// attack potential < 2, unknown species name, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace padeval
