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

#include "padeval/synth.h"

#include <cmath>
#include <string>
#include <utility>

#include "json.hpp"
#include "padeval/error.h"
#include "padeval/probit.h"

namespace padeval {
namespace {

std::string sample_id(std::size_t index) {
  std::string digits = std::to_string(index);
  return "s" + std::string(digits.size() < 7 ? 7 - digits.size() : 0, '0') +
         digits;
}

void check_generator(const ClassGenerator& g) {
  if (g.label.empty()) throw ArgumentError("generator label must be non-empty");
  if (!(g.scale > 0.0) || !std::isfinite(g.scale) || !std::isfinite(g.location)) {
    throw ArgumentError("generator '" + g.label +
                        "' needs a finite location and a positive scale");
  }
  if (g.count < 1) throw ArgumentError("generator '" + g.label + "' needs count >= 1");
}

}  // namespace

double SynthStream::uniform() {
  // Midpoints of a 2^52 lattice: exact in double and never 0 or 1.
  return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52;
}

double SynthStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  has_spare_ = true;
  return u * m;
}

double Squash::operator()(double x) const {
  const double z = (x - midpoint) / scale;
  return kind == Kind::kLogistic ? 1.0 / (1.0 + std::exp(-z)) : normal_cdf(z);
}

Squash::Kind parse_squash_kind(std::string_view name) {
  if (name == "logistic") return Squash::Kind::kLogistic;
  if (name == "normal-cdf") return Squash::Kind::kNormalCdf;
  throw ArgumentError("unknown squash '" + std::string(name) +
                      "' (expected logistic or normal-cdf)");
}

TwoClassDraws draw_two_class(double mu_bf, double mu_attack, double sigma,
                             std::size_t n_per_class, std::uint64_t seed) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ArgumentError("sigma must be positive");
  }
  if (!std::isfinite(mu_bf) || !std::isfinite(mu_attack)) {
    throw ArgumentError("means must be finite");
  }
  if (n_per_class < 1) throw ArgumentError("n must be >= 1");
  SynthStream stream(seed);
  TwoClassDraws d;
  d.bona_fide.reserve(n_per_class);
  d.attack.reserve(n_per_class);
  for (std::size_t i = 0; i < n_per_class; ++i) {
    d.bona_fide.push_back(mu_bf + sigma * stream.normal());
  }
  for (std::size_t i = 0; i < n_per_class; ++i) {
    d.attack.push_back(mu_attack + sigma * stream.normal());
  }
  return d;
}

ScoreSet gen_two_class(double mu_bf, double mu_attack, double sigma,
                       std::size_t n_per_class, std::uint64_t seed,
                       const Squash& squash) {
  const auto draws = draw_two_class(mu_bf, mu_attack, sigma, n_per_class, seed);
  ClassTaxonomy taxonomy("bonafide", {"attack"});
  std::vector<ScoreRecord> records;
  records.reserve(2 * n_per_class);
  std::size_t index = 0;
  auto emit = [&](double raw, LabelId label) {
    const double s = squash(raw);
    records.push_back({sample_id(index++), label, {s, 1.0 - s}});
  };
  for (double raw : draws.bona_fide) emit(raw, 0);
  for (double raw : draws.attack) emit(raw, 1);
  return ScoreSet(std::move(taxonomy), std::move(records));
}

ScoreSet gen_multiclass(const SynthSpec& spec) {
  check_generator(spec.bona_fide);
  if (spec.attack_species.empty()) {
    throw ArgumentError("synth spec needs at least one attack species");
  }
  for (const auto& g : spec.attack_species) check_generator(g);
  if (!(spec.squash.scale > 0.0)) throw ArgumentError("squash scale must be positive");
  if (!(spec.species_affinity >= 0.0)) {
    throw ArgumentError("species affinity must be non-negative");
  }

  std::vector<std::string> species;
  for (const auto& g : spec.attack_species) species.push_back(g.label);
  ClassTaxonomy taxonomy(spec.bona_fide.label, std::move(species));

  std::vector<const ClassGenerator*> generators{&spec.bona_fide};
  for (const auto& g : spec.attack_species) generators.push_back(&g);

  SynthStream stream(spec.seed);
  std::vector<ScoreRecord> records;
  std::size_t index = 0;
  const std::size_t n_attack = spec.attack_species.size();
  std::vector<double> weights(n_attack);
  for (LabelId label = 0; label < generators.size(); ++label) {
    const auto& g = *generators[label];
    for (std::size_t i = 0; i < g.count; ++i) {
      const double s = spec.squash(g.location + g.scale * stream.normal());
      double total = 0.0;
      for (std::size_t j = 0; j < n_attack; ++j) {
        weights[j] = stream.uniform();
        if (label == j + 1) weights[j] += spec.species_affinity;
        total += weights[j];
      }
      ScoreRecord r{sample_id(index++), label, {}};
      r.scores.reserve(n_attack + 1);
      r.scores.push_back(s);
      for (double w : weights) r.scores.push_back((1.0 - s) * (w / total));
      records.push_back(std::move(r));
    }
  }
  return ScoreSet(std::move(taxonomy), std::move(records));
}

SynthSpec parse_synth_spec(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed synth spec: ") + e.what());
  }
  auto fail = [](const std::string& msg) -> void {
    throw DataError("synth spec: " + msg);
  };
  if (!doc.is_object()) fail("expected a JSON object");
  auto generator = [&](const json& obj) {
    if (!obj.is_object()) fail("class generators must be objects");
    for (const auto& [key, value] : obj.items()) {
      if (key != "name" && key != "location" && key != "scale" && key != "count") {
        fail("unknown key '" + key + "'");
      }
    }
    if (!obj.contains("name") || !obj["name"].is_string()) fail("'name' must be a string");
    for (const char* key : {"location", "scale"}) {
      if (!obj.contains(key) || !obj[key].is_number()) {
        fail(std::string("'") + key + "' must be a number");
      }
    }
    if (!obj.contains("count") || !obj["count"].is_number_unsigned()) {
      fail("'count' must be a positive integer");
    }
    return ClassGenerator{obj["name"].get<std::string>(),
                          obj["location"].get<double>(),
                          obj["scale"].get<double>(),
                          obj["count"].get<std::size_t>()};
  };

  SynthSpec spec;
  for (const auto& [key, value] : doc.items()) {
    if (key == "seed") {
      if (!value.is_number_unsigned()) fail("'seed' must be a non-negative integer");
      spec.seed = value.get<std::uint64_t>();
    } else if (key == "bona_fide") {
      spec.bona_fide = generator(value);
    } else if (key == "attack_species") {
      if (!value.is_array()) fail("'attack_species' must be an array");
      for (const auto& g : value) spec.attack_species.push_back(generator(g));
    } else if (key == "species_affinity") {
      if (!value.is_number()) fail("'species_affinity' must be a number");
      spec.species_affinity = value.get<double>();
    } else if (key == "squash") {
      if (!value.is_object()) fail("'squash' must be an object");
      for (const auto& [skey, sval] : value.items()) {
        if (skey == "kind" && sval.is_string()) {
          spec.squash.kind = parse_squash_kind(sval.get<std::string>());
        } else if ((skey == "midpoint" || skey == "scale") && sval.is_number()) {
          (skey == "midpoint" ? spec.squash.midpoint : spec.squash.scale) =
              sval.get<double>();
        } else {
          fail("bad squash entry '" + skey + "'");
        }
      }
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!doc.contains("bona_fide")) fail("missing 'bona_fide'");
  if (!doc.contains("attack_species")) fail("missing 'attack_species'");
  return spec;
}

}  // namespace padeval
