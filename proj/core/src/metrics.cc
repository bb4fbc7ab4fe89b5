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

#include "padeval/metrics.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <utility>

#include "padeval/error.h"

namespace padeval {
namespace {

void check_tau(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw ArgumentError("threshold must lie in [0,1]");
  }
}

double rate(std::size_t count, std::size_t total) {
  return static_cast<double>(count) / static_cast<double>(total);
}

std::size_t count_at_most(std::span<const double> sorted, double tau) {
  return static_cast<std::size_t>(
      std::upper_bound(sorted.begin(), sorted.end(), tau) - sorted.begin());
}

LabelId nonempty_species(const ScoreSet& set, std::string_view species) {
  LabelId id = set.taxonomy().species_id(species);
  if (set.count(id) == 0) {
    throw DataError("species '" + std::string(species) + "' has no samples");
  }
  return id;
}

// Non-empty scored species, in manifest order.
std::vector<LabelId> worst_case_species(const ScoreSet& set) {
  std::vector<LabelId> ids;
  const auto n = set.taxonomy().attack_species().size();
  for (LabelId id = 1; id <= n; ++id) {
    if (set.count(id) > 0) ids.push_back(id);
  }
  if (ids.empty()) throw DataError("every attack species is empty");
  return ids;
}

std::vector<LabelId> selected_species(const ScoreSet& set,
                                      const SpeciesSelector& species) {
  if (species.is_worst_case()) return worst_case_species(set);
  return {nonempty_species(set, species.name())};
}

double apcer_of(const ScoreSet& set, LabelId id, double tau) {
  auto sorted = set.sorted_scores(id);
  return rate(sorted.size() - count_at_most(sorted, tau), sorted.size());
}

}  // namespace

SpeciesSelector SpeciesSelector::parse(std::string_view text) {
  if (text.empty()) throw ArgumentError("empty species selector");
  if (text == "worst" || text == "worst-case") return worst_case();
  return species(std::string(text));
}

ThresholdGrid::ThresholdGrid(const ScoreSet& set) {
  auto scores = set.distinct_scores();
  values_.reserve(scores.size() + 2);
  if (scores.empty() || scores.front() > 0.0) values_.push_back(0.0);
  values_.insert(values_.end(), scores.begin(), scores.end());
  if (values_.back() < 1.0) values_.push_back(1.0);
}

ThresholdGrid::ThresholdGrid(std::span<const double> scores, double lo,
                             double hi) {
  if (!(lo < hi)) throw ArgumentError("grid bounds must satisfy lo < hi");
  values_.assign(scores.begin(), scores.end());
  for (double s : values_) {
    if (!(s >= lo && s <= hi)) {
      throw ArgumentError("score outside the grid domain");
    }
  }
  values_.push_back(lo);
  values_.push_back(hi);
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
}

double bpcer(const ScoreSet& set, double tau) {
  check_tau(tau);
  auto sorted = set.sorted_scores(kBonaFideLabel);
  return rate(count_at_most(sorted, tau), sorted.size());
}

double apcer_pais(const ScoreSet& set, std::string_view species, double tau) {
  check_tau(tau);
  return apcer_of(set, nonempty_species(set, species), tau);
}

SpeciesRate apcer_worst(const ScoreSet& set, double tau) {
  check_tau(tau);
  SpeciesRate worst;
  bool first = true;
  for (LabelId id : worst_case_species(set)) {
    double a = apcer_of(set, id, tau);
    if (first || a > worst.rate) {
      worst = {set.taxonomy().label_name(id), a};
      first = false;
    }
  }
  return worst;
}

double acer(double apcer_worst, double bpcer) {
  return (apcer_worst + bpcer) / 2.0;
}

double acer(const ScoreSet& set, double tau) {
  return acer(apcer_worst(set, tau).rate, bpcer(set, tau));
}

OperatingPoint operating_point(const ScoreSet& set, double tau) {
  OperatingPoint op;
  op.tau = tau;
  op.bpcer = bpcer(set, tau);
  for (LabelId id : worst_case_species(set)) {
    op.apcer_per_species.push_back(
        {set.taxonomy().label_name(id), apcer_of(set, id, tau)});
  }
  const SpeciesRate* worst = &op.apcer_per_species.front();
  for (const auto& s : op.apcer_per_species) {
    if (s.rate > worst->rate) worst = &s;
  }
  op.apcer_worst = worst->rate;
  op.worst_species = worst->species;
  op.acer = acer(op.apcer_worst, op.bpcer);
  return op;
}

RateCurve rate_curve(std::span<const double> bona_fide,
                     std::span<const std::span<const double>> attacks,
                     std::span<const double> grid) {
  if (bona_fide.empty()) throw DataError("no bona fide scores");
  if (attacks.empty()) throw DataError("no attack scores");
  for (auto a : attacks) {
    if (a.empty()) throw DataError("empty attack group");
  }
  RateCurve curve;
  curve.tau.assign(grid.begin(), grid.end());
  curve.apcer.resize(grid.size());
  curve.bpcer.resize(grid.size());

  std::size_t bf_pos = 0;
  std::vector<std::size_t> attack_pos(attacks.size(), 0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid[k];
    while (bf_pos < bona_fide.size() && bona_fide[bf_pos] <= t) ++bf_pos;
    curve.bpcer[k] = rate(bf_pos, bona_fide.size());
    double worst = 0.0;
    for (std::size_t g = 0; g < attacks.size(); ++g) {
      auto a = attacks[g];
      auto& pos = attack_pos[g];
      while (pos < a.size() && a[pos] <= t) ++pos;
      worst = std::max(worst, rate(a.size() - pos, a.size()));
    }
    curve.apcer[k] = worst;
  }
  return curve;
}

RateCurve rate_curve(const ScoreSet& set, const SpeciesSelector& species) {
  std::vector<std::span<const double>> attacks;
  for (LabelId id : selected_species(set, species)) {
    attacks.push_back(set.sorted_scores(id));
  }
  ThresholdGrid grid(set);
  return rate_curve(set.sorted_scores(kBonaFideLabel), attacks, grid.values());
}

EerResult eer(const RateCurve& curve) {
  const auto n = curve.tau.size();
  if (n == 0) throw DataError("empty rate curve");
  auto diff = [&](std::size_t k) { return curve.apcer[k] - curve.bpcer[k]; };

  for (std::size_t k = 0; k < n; ++k) {
    const double d = diff(k);
    if (d > 0.0) continue;
    if (d == 0.0) return {curve.apcer[k], curve.tau[k], true};
    if (k == 0) break;
    const double prev = diff(k - 1);
    const double s = prev / (prev - d);
    return {curve.apcer[k - 1] + s * (curve.apcer[k] - curve.apcer[k - 1]),
            curve.tau[k - 1] + s * (curve.tau[k] - curve.tau[k - 1]), false};
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < n; ++k) {
    if (std::abs(diff(k)) < std::abs(diff(best))) best = k;
  }
  return {(curve.apcer[best] + curve.bpcer[best]) / 2.0, curve.tau[best],
          false};
}

EerResult eer(const ScoreSet& set, const SpeciesSelector& species) {
  return eer(rate_curve(set, species));
}

BpcerApResult bpcer_at_ap(const RateCurve& curve, int ap, ApSearch search) {
  if (ap < 2) throw ArgumentError("attack potential must be >= 2");
  const auto n = curve.tau.size();
  if (n < 2) throw DataError("rate curve needs at least two thresholds");

  BpcerApResult r;
  r.ap = ap;
  r.target_apcer = 1.0 / static_cast<double>(ap);

  // The last grid point rejects every sample; it is not an operating point.
  const std::size_t last = n - 2;
  std::size_t k = 0;
  while (k <= last && curve.apcer[k] > r.target_apcer) ++k;
  if (k > last) {
    r.saturated = true;
    k = last;
  }
  r.tau = curve.tau[k];
  r.bpcer = curve.bpcer[k];
  r.apcer = curve.apcer[k];

  if (search == ApSearch::kInterpolated && !r.saturated && k > 0 &&
      curve.apcer[k] < r.target_apcer) {
    const double a0 = curve.apcer[k - 1];
    const double a1 = curve.apcer[k];
    const double s = (a0 - r.target_apcer) / (a0 - a1);
    r.bpcer = curve.bpcer[k - 1] + s * (curve.bpcer[k] - curve.bpcer[k - 1]);
    r.tau = curve.tau[k - 1] + s * (curve.tau[k] - curve.tau[k - 1]);
    r.apcer = r.target_apcer;
    r.interpolated = true;
  }
  return r;
}

BpcerApResult bpcer_at_ap(const ScoreSet& set, int ap,
                          const SpeciesSelector& species, ApSearch search) {
  if (ap < 2) throw ArgumentError("attack potential must be >= 2");
  return bpcer_at_ap(rate_curve(set, species), ap, search);
}

std::size_t ConfusionMatrix::row_total(std::size_t row) const {
  std::size_t sum = 0;
  for (std::size_t c = 0; c < predicted_labels.size(); ++c) sum += at(row, c);
  return sum;
}

std::size_t ConfusionMatrix::total() const {
  std::size_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

std::size_t predict_class(const ScoreRecord& record, double tau) {
  if (decide(record, tau) == Decision::kBonaFide) return 0;
  std::size_t best = 1;
  for (std::size_t c = 2; c < record.scores.size(); ++c) {
    if (record.scores[c] > record.scores[best]) best = c;
  }
  return best;
}

ConfusionMatrix confusion_matrix(const ScoreSet& set, double tau,
                                 MatrixMode mode) {
  check_tau(tau);
  const auto& taxonomy = set.taxonomy();
  ConfusionMatrix m;
  if (mode == MatrixMode::kBinary) {
    m.true_labels = {taxonomy.bona_fide(), std::string(kBinaryAttackLabel)};
    m.predicted_labels = m.true_labels;
  } else {
    m.true_labels.assign(taxonomy.labels().begin(), taxonomy.labels().end());
    m.predicted_labels.assign(taxonomy.score_classes().begin(),
                              taxonomy.score_classes().end());
  }
  m.counts.assign(m.true_labels.size() * m.predicted_labels.size(), 0);
  for (const auto& r : set.records()) {
    std::size_t predicted = predict_class(r, tau);
    std::size_t truth = r.label;
    if (mode == MatrixMode::kBinary) {
      predicted = predicted == 0 ? 0 : 1;
      truth = truth == kBonaFideLabel ? 0 : 1;
    }
    ++m.at(truth, predicted);
  }
  return m;
}

ThresholdSelector ThresholdSelector::literal(double tau) {
  check_tau(tau);
  ThresholdSelector s;
  s.tau_ = tau;
  return s;
}

ThresholdSelector ThresholdSelector::auto_bpcer(int ap) {
  if (std::find(kApLadder.begin(), kApLadder.end(), ap) == kApLadder.end()) {
    throw ArgumentError("auto:bpcerN requires N in {10,20,50,100,200,500,1000,10000}");
  }
  ThresholdSelector s;
  s.ap_ = ap;
  return s;
}

ThresholdSelector ThresholdSelector::parse(std::string_view text) {
  constexpr std::string_view kPrefix = "auto:bpcer";
  auto parse_full = [&](std::string_view digits, auto& out) {
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), out);
    return !digits.empty() && ec == std::errc() &&
           ptr == digits.data() + digits.size();
  };
  if (text.starts_with(kPrefix)) {
    int ap = 0;
    if (!parse_full(text.substr(kPrefix.size()), ap)) {
      throw ArgumentError("malformed threshold selector '" + std::string(text) + "'");
    }
    return auto_bpcer(ap);
  }
  double tau = 0.0;
  if (!parse_full(text, tau)) {
    throw ArgumentError("malformed threshold selector '" + std::string(text) +
                        "' (expected a number in [0,1] or auto:bpcerN)");
  }
  return literal(tau);
}

std::string ThresholdSelector::to_string() const {
  if (is_auto()) return "auto:bpcer" + std::to_string(ap_);
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, tau_);
  return std::string(buf, ptr);
}

ResolvedThreshold resolve_threshold(const ScoreSet& set,
                                    const ThresholdSelector& selector,
                                    const SpeciesSelector& species) {
  if (!selector.is_auto()) return {selector.tau(), std::nullopt};
  auto op = bpcer_at_ap(set, selector.ap(), species);
  return {op.tau, op};
}

}  // namespace padeval
