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

#ifndef PADEVAL_TESTS_TEST_UTIL_H_
#define PADEVAL_TESTS_TEST_UTIL_H_

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "padeval/score_set.h"
#include "padeval/taxonomy.h"

namespace padeval::testing {

inline std::string data_path(const std::string& name) {
  return std::string(PADEVAL_TEST_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

// Set whose records carry only a bona-fide-class score plus filler attack
// scores; labels are given by name.
inline ScoreSet simple_set(
    const ClassTaxonomy& taxonomy,
    std::initializer_list<std::pair<std::string, double>> rows) {
  std::vector<ScoreRecord> records;
  std::size_t i = 0;
  for (const auto& [label, score] : rows) {
    std::vector<double> scores(taxonomy.score_class_count(), 0.0);
    scores[0] = score;
    for (std::size_t c = 1; c < scores.size(); ++c) {
      scores[c] = (1.0 - score) / static_cast<double>(scores.size() - 1);
    }
    records.push_back(
        make_record(taxonomy, "x" + std::to_string(i++), label, scores));
  }
  return ScoreSet(taxonomy, std::move(records));
}

// Fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("padeval-test-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string operator/(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

}  // namespace padeval::testing

#endif  // PADEVAL_TESTS_TEST_UTIL_H_
