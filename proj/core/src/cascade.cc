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

#include "padeval/cascade.h"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <utility>

#include "padeval/error.h"

namespace padeval {
namespace {

void check_tau(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw ArgumentError("threshold must lie in [0,1]");
  }
}

}  // namespace

CascadeConfig::CascadeConfig(ScoreSet border, ScoreSet source,
                             double tau_border, double tau_source)
    : border_(std::move(border)),
      source_(std::move(source)),
      tau_border_(tau_border),
      tau_source_(tau_source) {
  check_tau(tau_border_);
  check_tau(tau_source_);
  const auto& bt = border_.taxonomy();
  const auto& st = source_.taxonomy();
  if (bt.bona_fide() != st.bona_fide()) {
    throw DataError("stages disagree on the bona fide class ('" +
                    bt.bona_fide() + "' vs '" + st.bona_fide() + "')");
  }
  if (border_.size() == 0) throw DataError("cascade join is empty");
  if (border_.size() != source_.size()) {
    throw DataError("stages cover different sample sets (" +
                    std::to_string(border_.size()) + " vs " +
                    std::to_string(source_.size()) + " samples)");
  }

  std::unordered_map<std::string_view, std::size_t> source_index;
  source_index.reserve(source_.size());
  for (std::size_t i = 0; i < source_.size(); ++i) {
    source_index.emplace(source_.records()[i].sample_id, i);
  }
  joined_.reserve(border_.size());
  for (std::size_t i = 0; i < border_.size(); ++i) {
    const auto& b = border_.records()[i];
    auto it = source_index.find(b.sample_id);
    if (it == source_index.end()) {
      throw DataError("sample '" + b.sample_id +
                      "' is missing from the source stage");
    }
    const auto& s = source_.records()[it->second];
    if (bt.label_name(b.label) != st.label_name(s.label)) {
      throw DataError("sample '" + b.sample_id + "' is labelled '" +
                      bt.label_name(b.label) + "' by the border stage but '" +
                      st.label_name(s.label) + "' by the source stage");
    }
    joined_.push_back({i, it->second});
  }

  for (const auto* tax : {&bt, &st}) {
    for (LabelId id = 1; id < tax->label_count(); ++id) {
      const auto& name = tax->label_name(id);
      if (std::find(species_.begin(), species_.end(), name) == species_.end()) {
        species_.push_back(name);
      }
    }
  }
}

CascadeConfig CascadeConfig::with_thresholds(double tau_border,
                                             double tau_source) const {
  check_tau(tau_border);
  check_tau(tau_source);
  CascadeConfig copy = *this;
  copy.tau_border_ = tau_border;
  copy.tau_source_ = tau_source;
  return copy;
}

Decision combined_decide(const ScoreRecord& border, const ScoreRecord& source,
                         double tau_border, double tau_source) {
  if (border.sample_id != source.sample_id) {
    throw DataError("cannot combine '" + border.sample_id + "' with '" +
                    source.sample_id + "'");
  }
  const bool accepted = decide(border, tau_border) == Decision::kBonaFide &&
                        decide(source, tau_source) == Decision::kBonaFide;
  return accepted ? Decision::kBonaFide : Decision::kAttack;
}

CascadeRates cascade_rates(const CascadeConfig& config) {
  const auto& species = config.species();
  std::unordered_map<std::string_view, std::size_t> species_index;
  for (std::size_t i = 0; i < species.size(); ++i) species_index[species[i]] = i;

  std::size_t bf_total = 0, bf_rejected = 0;
  std::vector<std::size_t> totals(species.size(), 0), accepted(species.size(), 0);
  const auto& bt = config.border().taxonomy();
  for (const auto& j : config.joined()) {
    const auto& b = config.border().records()[j.border];
    const auto& s = config.source().records()[j.source];
    const bool bona_fide_decision =
        combined_decide(b, s, config.tau_border(), config.tau_source()) ==
        Decision::kBonaFide;
    if (b.label == kBonaFideLabel) {
      ++bf_total;
      if (!bona_fide_decision) ++bf_rejected;
    } else {
      const auto idx = species_index.at(bt.label_name(b.label));
      ++totals[idx];
      if (bona_fide_decision) ++accepted[idx];
    }
  }
  if (bf_total == 0) throw DataError("cascade has no bona fide samples");

  CascadeRates r;
  r.tau_border = config.tau_border();
  r.tau_source = config.tau_source();
  r.bpcer = static_cast<double>(bf_rejected) / static_cast<double>(bf_total);
  bool first = true;
  for (std::size_t i = 0; i < species.size(); ++i) {
    if (totals[i] == 0) continue;
    const double a =
        static_cast<double>(accepted[i]) / static_cast<double>(totals[i]);
    r.apcer_per_species.push_back({species[i], a});
    if (first || a > r.apcer_worst) {
      r.apcer_worst = a;
      r.worst_species = species[i];
      first = false;
    }
  }
  if (first) throw DataError("cascade has no attack samples");
  r.acer = acer(r.apcer_worst, r.bpcer);
  return r;
}

ConfusionMatrix cascade_confusion(const CascadeConfig& config,
                                  MatrixMode mode) {
  const auto& bt = config.border().taxonomy();
  const auto& st = config.source().taxonomy();

  // Predicted columns: bona fide, border attack classes, new source classes.
  std::vector<std::string> columns{bt.bona_fide()};
  for (const auto& name : bt.attack_species()) columns.push_back(name);
  std::vector<std::size_t> source_column(st.score_class_count(), 0);
  for (std::size_t c = 1; c < st.score_class_count(); ++c) {
    const auto& name = st.score_classes()[c];
    auto it = std::find(columns.begin(), columns.end(), name);
    source_column[c] = static_cast<std::size_t>(it - columns.begin());
    if (it == columns.end()) columns.push_back(name);
  }

  ConfusionMatrix m;
  if (mode == MatrixMode::kBinary) {
    m.true_labels = {bt.bona_fide(), std::string(kBinaryAttackLabel)};
    m.predicted_labels = m.true_labels;
  } else {
    m.true_labels = {bt.bona_fide()};
    m.true_labels.insert(m.true_labels.end(), config.species().begin(),
                         config.species().end());
    m.predicted_labels = columns;
  }
  m.counts.assign(m.true_labels.size() * m.predicted_labels.size(), 0);

  for (const auto& j : config.joined()) {
    const auto& b = config.border().records()[j.border];
    const auto& s = config.source().records()[j.source];
    std::size_t predicted = 0;
    if (combined_decide(b, s, config.tau_border(), config.tau_source()) ==
        Decision::kAttack) {
      // Strict '>' keeps the earlier column on ties: border before source.
      double best = -1.0;
      for (std::size_t c = 1; c < b.scores.size(); ++c) {
        if (b.scores[c] > best) {
          best = b.scores[c];
          predicted = c;
        }
      }
      for (std::size_t c = 1; c < s.scores.size(); ++c) {
        if (s.scores[c] > best) {
          best = s.scores[c];
          predicted = source_column[c];
        }
      }
    }
    std::size_t truth = 0;
    if (b.label != kBonaFideLabel) {
      const auto& name = bt.label_name(b.label);
      truth = 1 + static_cast<std::size_t>(
                      std::find(config.species().begin(),
                                config.species().end(), name) -
                      config.species().begin());
    }
    if (mode == MatrixMode::kBinary) {
      truth = truth == 0 ? 0 : 1;
      predicted = predicted == 0 ? 0 : 1;
    }
    ++m.at(truth, predicted);
  }
  return m;
}

std::vector<CascadeRow> cascade_table(const CascadeConfig& config,
                                      std::span<const int> aps) {
  std::vector<CascadeRow> rows;
  const auto worst = SpeciesSelector::worst_case();
  const RateCurve border_curve = rate_curve(config.border(), worst);
  const RateCurve source_curve = rate_curve(config.source(), worst);

  rows.push_back({"EER", cascade_rates(config.with_thresholds(
                             eer(border_curve).tau, eer(source_curve).tau))});
  for (int ap : aps) {
    rows.push_back(
        {"BPCER" + std::to_string(ap),
         cascade_rates(config.with_thresholds(bpcer_at_ap(border_curve, ap).tau,
                                              bpcer_at_ap(source_curve, ap).tau))});
  }
  return rows;
}

}  // namespace padeval
