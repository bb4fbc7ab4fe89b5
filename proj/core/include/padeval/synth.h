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
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "padeval/score_set.h"

namespace padeval {

// Portable random stream: std::mt19937_64 (its state transition and output
// are fixed by the C++ standard), uniforms (k + 0.5) / 2^52 from the top 52
// bits of each word, and normals from Marsaglia's polar method.
class SynthStream {
 public:
  explicit SynthStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0,1).
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Strictly increasing map from the reals onto (0,1).
struct Squash {
  enum class Kind { kLogistic, kNormalCdf };
  Kind kind = Kind::kLogistic;
  double midpoint = 0.5;
  double scale = 0.1;

  double operator()(double x) const;
};

// Throws ArgumentError for names other than "logistic" / "normal-cdf".
Squash::Kind parse_squash_kind(std::string_view name);

struct ClassGenerator {
  std::string label;
  double location = 0.0;  // before squashing
  double scale = 1.0;
  std::size_t count = 0;
};

struct SynthSpec {
  ClassGenerator bona_fide;
  std::vector<ClassGenerator> attack_species;
  std::uint64_t seed = 0;
  Squash squash;
  // Extra weight on the true species when spreading the remaining score mass
  // over the attack classes.
  double species_affinity = 2.0;
};

// Raw (pre-squash) draws of gen_two_class, in generation order.
struct TwoClassDraws {
  std::vector<double> bona_fide;
  std::vector<double> attack;
};

TwoClassDraws draw_two_class(double mu_bf, double mu_attack, double sigma,
                             std::size_t n_per_class, std::uint64_t seed);

// Bona fide and a single "attack" species, both N(mu, sigma^2) before the
// squash. The expected EER is Phi(-(mu_bf - mu_attack) / (2 sigma)).
ScoreSet gen_two_class(double mu_bf, double mu_attack, double sigma,
                       std::size_t n_per_class, std::uint64_t seed,
                       const Squash& squash = {});

// Per record: bona-fide score from its class generator, then the remaining
// mass 1 - s split over the attack classes in proportion to uniforms drawn
// from the same stream (plus species_affinity on the true species).
ScoreSet gen_multiclass(const SynthSpec& spec);

// JSON form of SynthSpec:
// {"seed": 7, "squash": {"kind": "logistic", "midpoint": 0.5, "scale": 0.1},
//  "bona_fide": {"name": "bonafide", "location": 0.8, "scale": 0.1,
//                "count": 1000},
//  "attack_species": [{"name": "print", ...}, ...]}
SynthSpec parse_synth_spec(std::string_view json);

}  // namespace padeval
