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

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "cascade_pairs.h"
#include "oracle.h"
#include "padeval/cascade.h"
#include "padeval/error.h"
#include "padeval/metrics.h"
#include "padeval/report.h"
#include "padeval/synth.h"
#include "test_util.h"

namespace padeval {
namespace {

using testing::simple_set;

std::vector<std::string> table_rows(const std::string& markdown) {
  std::vector<std::string> rows;
  std::istringstream in(markdown);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("| ", 0) == 0 && line.rfind("| Metric", 0) != 0) rows.push_back(line);
  }
  return rows;
}

ScoreSet two_species_set() {
  SynthSpec spec;
  spec.seed = 77;
  spec.bona_fide = {"bonafide", 0.85, 0.12, 600};
  spec.attack_species = {{"composite", 0.25, 0.15, 400}, {"synthetic", 0.2, 0.1, 300}};
  return gen_multiclass(spec);
}

TEST(BuildReport, TableTwoShape) {
  const auto set = two_species_set();
  const auto report = build_report(set, SpeciesSelector::worst_case(),
                                   ThresholdSelector::auto_bpcer(100), "exp1");
  ASSERT_EQ(report.ladder.size(), 8u);
  for (std::size_t i = 0; i < kApLadder.size(); ++i) EXPECT_EQ(report.ladder[i].ap, kApLadder[i]);
  ASSERT_EQ(report.per_species_apcer.size(), 2u);

  const auto rows = table_rows(render_report(report, ReportFormat::kMarkdown));
  // 1 EER row + 8 ladder rows + 2 species APCERs + BPCER + ACER.
  ASSERT_EQ(rows.size(), 13u);
  EXPECT_EQ(rows[0].rfind("| EER_worst", 0), 0u);
  EXPECT_NE(rows[1].find("BPCER10 (APCER_worst = 10%)"), std::string::npos);
  EXPECT_NE(rows[8].find("BPCER10000 (APCER_worst = 0.01%)"), std::string::npos);
  EXPECT_EQ(rows[9].rfind("| APCER_composite(τ)", 0), 0u);
  EXPECT_EQ(rows[10].rfind("| APCER_synthetic(τ)", 0), 0u);
  EXPECT_EQ(rows[11].rfind("| BPCER(τ)", 0), 0u);
  EXPECT_EQ(rows[12].rfind("| ACER(τ)", 0), 0u);
}

TEST(BuildReport, PerfectClassifier) {
  const ClassTaxonomy t("bonafide", {"attack"});
  const auto set = simple_set(t, {{"bonafide", 0.9}, {"bonafide", 0.8},
                                  {"attack", 0.1}, {"attack", 0.2}});
  const auto report = build_report(set);
  for (const auto& row : report.ladder) EXPECT_EQ(row.bpcer, 0.0);
  EXPECT_EQ(report.acer_at_tau, 0.0);
  EXPECT_EQ(report.eer.eer, 0.0);
}

TEST(BuildReport, RecomputationReproducesEveryField) {
  for (std::uint64_t seed = 40; seed < 70; ++seed) {
    const auto set = oracle::random_set(seed);
    const auto report = build_report(set);
    const auto e = oracle::eer(set);
    EXPECT_NEAR(report.eer.eer, e.eer, 1e-12);
    for (const auto& row : report.ladder) {
      const auto o = oracle::bpcer_at_ap(set, row.ap);
      EXPECT_EQ(row.bpcer, o.bpcer);
      EXPECT_EQ(row.tau, o.tau);
      EXPECT_EQ(row.saturated, o.saturated);
    }
    EXPECT_EQ(report.chosen_tau, oracle::bpcer_at_ap(set, 100).tau);
    EXPECT_EQ(report.bpcer_at_tau, oracle::bpcer(set, report.chosen_tau));
    double worst = 0.0;
    for (const auto& s : report.per_species_apcer) {
      EXPECT_EQ(s.rate, oracle::apcer(set, set.taxonomy().label_id(s.species),
                                      report.chosen_tau));
      worst = std::max(worst, s.rate);
    }
    EXPECT_EQ(report.acer_at_tau, (worst + report.bpcer_at_tau) / 2.0);
    for (std::size_t i = 1; i < report.ladder.size(); ++i) {
      EXPECT_LE(report.ladder[i - 1].bpcer, report.ladder[i].bpcer);
    }
  }
}

TEST(BuildReport, LiteralTauAndNamedSpecies) {
  const auto set = two_species_set();
  const auto report = build_report(set, SpeciesSelector::species("synthetic"),
                                   ThresholdSelector::literal(0.5));
  EXPECT_EQ(report.chosen_tau, 0.5);
  EXPECT_EQ(report.eer, eer(set, SpeciesSelector::species("synthetic")));
  EXPECT_EQ(report.metadata.species_selector, "synthetic");
  EXPECT_EQ(report.metadata.tau_selector, "0.5");
  const auto md = render_report(report, ReportFormat::kMarkdown);
  EXPECT_NE(md.find("| EER_synthetic"), std::string::npos);
  EXPECT_NE(md.find("APCER_synthetic = 10%"), std::string::npos);
}

TEST(RenderReport, DeterministicAndRoundTrips) {
  const auto report = build_report(two_species_set(), SpeciesSelector::worst_case(),
                                   ThresholdSelector::auto_bpcer(100), "exp1");
  for (auto format : {ReportFormat::kJson, ReportFormat::kMarkdown}) {
    EXPECT_EQ(render_report(report, format), render_report(report, format));
  }
  const auto json = render_report(report, ReportFormat::kJson);
  EXPECT_EQ(parse_report_json(json), report);
  EXPECT_EQ(render_report(parse_report_json(json), ReportFormat::kJson), json);
}

TEST(RenderReport, RoundTripsOnRandomSets) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto report = build_report(oracle::random_set(seed));
    EXPECT_EQ(parse_report_json(render_report(report, ReportFormat::kJson)), report)
        << seed;
  }
}

TEST(RenderReport, SaturationIsFlagged) {
  const ClassTaxonomy t("bonafide", {"attack"});
  std::vector<ScoreRecord> records;
  for (int i = 0; i < 50; ++i) {
    records.push_back(make_record(t, "b" + std::to_string(i), "bonafide", {0.5 + 0.01 * i, 0.0}));
    records.push_back(make_record(t, "a" + std::to_string(i), "attack", {i < 2 ? 1.0 : 0.1, 0.0}));
  }
  const auto report = build_report(ScoreSet(t, records));
  EXPECT_TRUE(report.tau_saturated);
  const auto md = render_report(report, ReportFormat::kMarkdown);
  EXPECT_NE(md.find("BPCER100 (APCER_worst = 1%) [saturated]"), std::string::npos);
  EXPECT_NE(md.find("BPCER(τ) [saturated]"), std::string::npos);
}

TEST(ParseReport, RejectsUnknownAndMissingFields) {
  const auto json = render_report(build_report(two_species_set()), ReportFormat::kJson);
  auto with = [&](const std::string& from, const std::string& to) {
    std::string s = json;
    const auto pos = s.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    s.replace(pos, from.size(), to);
    return s;
  };
  EXPECT_THROW(parse_report_json(with("\"schema_version\": 1", "\"schema_version\": 2")),
               DataError);
  EXPECT_THROW(parse_report_json(with("\"schema\": \"padeval.report\"",
                                      "\"schema\": \"other\"")),
               DataError);
  EXPECT_THROW(parse_report_json(with("\"ladder\": [", "\"bogus\": 1, \"ladder\": [")),
               DataError);
  EXPECT_THROW(parse_report_json(with("\"exact\":", "\"exactly\":")), DataError);
  EXPECT_THROW(parse_report_json(with("\"acer\":", "\"acer\": \"x\", \"old_acer\":")),
               DataError);
  EXPECT_THROW(parse_report_json("[]"), DataError);
  EXPECT_THROW(parse_report_json("{"), DataError);
}

TEST(CascadeReport, RowsAndRendering) {
  auto [border, source] = testing::random_pair(9);
  const double tb = resolve_threshold(border, ThresholdSelector::auto_bpcer(100)).tau;
  const double ts = resolve_threshold(source, ThresholdSelector::auto_bpcer(100)).tau;
  const CascadeConfig cfg(border, source, tb, ts);
  const auto report = build_cascade_report(cfg, "auto:bpcer100", "auto:bpcer100", "b", "s");
  ASSERT_EQ(report.rows.size(), 5u);
  EXPECT_EQ(report.rows[0].metric, "EER");
  EXPECT_EQ(report.rows[4].metric, "BPCER100");
  EXPECT_EQ(report.selected.tau_border, tb);
  EXPECT_EQ(report.selected.bpcer, cascade_rates(cfg).bpcer);
  // The BPCER100 row and the default selection coincide.
  EXPECT_EQ(report.rows[4].rates.bpcer, report.selected.bpcer);
  const auto md = render_cascade_report(report, ReportFormat::kMarkdown);
  EXPECT_EQ(md, render_cascade_report(report, ReportFormat::kMarkdown));
  EXPECT_NE(md.find("| BPCER50 |"), std::string::npos);
  EXPECT_NE(md.find("| **Selected** |"), std::string::npos);
  const auto json = render_cascade_report(report, ReportFormat::kJson);
  EXPECT_NE(json.find("\"schema\": \"padeval.cascade-report\""), std::string::npos);
}

}  // namespace
}  // namespace padeval
