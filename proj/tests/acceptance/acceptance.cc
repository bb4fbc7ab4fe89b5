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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cascade_pairs.h"
#include "cli_harness.h"
#include "oracle.h"
#include "oracle_probit.h"
#include "padeval/cascade.h"
#include "padeval/class_weights.h"
#include "padeval/format.h"
#include "padeval/metrics.h"
#include "padeval/probit.h"
#include "padeval/report.h"
#include "padeval/score_io.h"
#include "padeval/synth.h"
#include "test_util.h"

namespace padeval {
namespace {

namespace fs = std::filesystem;

// Collects the first few failure messages of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (messages_.size() < 5) messages_.push_back(what);
  }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    std::string s = fmt::format("{} failure(s)", failures_);
    for (const auto& m : messages_) s += "; " + m;
    return s;
  }
  std::string note;

 private:
  int failures_ = 0;
  std::vector<std::string> messages_;
};

std::vector<std::string> rounded_weights(std::vector<ClassCount> counts) {
  std::vector<std::string> out;
  for (const auto& w : class_weights(ClassCounts(std::move(counts)))) {
    out.push_back(format_fixed(w.weight, 4));
  }
  return out;
}

void class_weight_reproduction(Check& c) {
  const auto exp1 = rounded_weights(
      {{"bonafide", 21139}, {"composite", 21448}, {"synthetic", 19862}});
  const auto exp2 = rounded_weights(
      {{"bonafide", 21139}, {"print_plastic", 25761}, {"display", 25423}});
  const std::vector<std::string> want1 = {"0.9847", "0.9705", "1.0480"};
  const std::vector<std::string> want2 = {"1.1404", "0.9358", "0.9483"};
  c.expect(exp1 == want1, "experiment 1 weights differ");
  c.expect(exp2 == want2, "experiment 2 weights differ");
  c.note = fmt::format("{} {} {} / {} {} {}", exp1[0], exp1[1], exp1[2], exp2[0],
                       exp2[1], exp2[2]);
}

void acer_reproduction(Check& c) {
  const auto a = format_percent(acer(0.009950, 0.016823));
  const auto b = format_percent(acer(0.009994, 0.023667));
  c.expect(a == "1.3387", "table 2 ACER " + a);
  c.expect(b == "1.6831", "table 3 ACER " + b);
  c.note = a + "% / " + b + "%";
}

void analytic_eer(Check& c) {
  constexpr std::uint64_t kSeed = 7;
  constexpr std::size_t kN = 100000;
  const auto set = gen_two_class(0.6, 0.4, 0.1, kN, kSeed);
  const double measured = eer(set).eer;
  const double analytic = normal_cdf(-1.0);
  c.expect(std::abs(measured - analytic) <= 0.004,
           fmt::format("EER {:.6f} vs {:.6f}", measured, analytic));

  // Same draws before the squash: the EER must not move at all.
  const auto draws = draw_two_class(0.6, 0.4, 0.1, kN, kSeed);
  auto bf = draws.bona_fide, at = draws.attack;
  std::sort(bf.begin(), bf.end());
  std::sort(at.begin(), at.end());
  std::vector<double> all = bf;
  all.insert(all.end(), at.begin(), at.end());
  const double lo = std::min(bf.front(), at.front()) - 1.0;
  const double hi = std::max(bf.back(), at.back()) + 1.0;
  const ThresholdGrid grid(all, lo, hi);
  const std::span<const double> attacks[] = {at};
  const double raw = eer(rate_curve(bf, attacks, grid.values())).eer;
  c.expect(raw == measured, fmt::format("raw EER {:.17g} != squashed {:.17g}", raw, measured));
  const auto cdf_set = gen_two_class(0.6, 0.4, 0.1, kN, kSeed,
                                     {Squash::Kind::kNormalCdf, 0.5, 0.1});
  c.expect(eer(cdf_set).eer == raw, "normal-cdf squash moved the EER");
  c.note = fmt::format("EER {}% (analytic {}%)", format_percent(measured),
                       format_percent(analytic));
}

void oracle_equivalence(Check& c) {
  constexpr int kSets = 60;
  std::size_t thresholds = 0;
  for (int i = 0; i < kSets; ++i) {
    const auto set = oracle::random_set(9000 + i);
    const auto& t = set.taxonomy();
    c.expect(set.size() <= 1000, "set too large");
    for (double tau : oracle::grid(set)) {
      ++thresholds;
      const double b = oracle::bpcer(set, tau);
      c.expect(bpcer(set, tau) == b, fmt::format("set {} bpcer at {}", i, tau));
      for (LabelId id = 1; id < t.score_class_count(); ++id) {
        const double a = oracle::apcer(set, id, tau);
        if (a >= 0) {
          c.expect(apcer_pais(set, t.label_name(id), tau) == a,
                   fmt::format("set {} apcer {} at {}", i, t.label_name(id), tau));
        }
      }
      const auto w = oracle::apcer_worst(set, tau);
      const auto got = apcer_worst(set, tau);
      c.expect(got.rate == w.rate && got.species == t.label_name(w.label),
               fmt::format("set {} apcer_worst at {}", i, tau));
      c.expect(acer(set, tau) == (w.rate + b) / 2.0, fmt::format("set {} acer", i));
    }
    const auto e = eer(set);
    const auto oe = oracle::eer(set);
    c.expect(std::abs(e.eer - oe.eer) <= 1e-12 && e.exact == oe.exact,
             fmt::format("set {} eer {} vs {}", i, e.eer, oe.eer));
    for (int ap : kApLadder) {
      const auto r = bpcer_at_ap(set, ap);
      const auto o = oracle::bpcer_at_ap(set, ap);
      c.expect(r.bpcer == o.bpcer && r.tau == o.tau && r.saturated == o.saturated,
               fmt::format("set {} bpcer_at_ap {}", i, ap));
    }
    for (double tau : {0.0, 0.3, 0.5, 0.8, 1.0}) {
      c.expect(confusion_matrix(set, tau).counts == oracle::confusion(set, tau),
               fmt::format("set {} confusion at {}", i, tau));
    }
  }
  c.note = fmt::format("{} sets, {} thresholds", kSets, thresholds);
}

void ladder_monotone_and_saturation(Check& c) {
  int sets = 0;
  for (int i = 0; i < 60; ++i) {
    const auto set = oracle::random_set(12000 + i);
    double prev = -1.0;
    for (int ap : kApLadder) {
      const double b = bpcer_at_ap(set, ap).bpcer;
      c.expect(b >= prev, fmt::format("set {} ladder drops at {}", i, ap));
      prev = b;
    }
    ++sets;
  }
  // Attack scores saturating at 1.0: 5 of 2000 attacks score exactly 1.
  const ClassTaxonomy t("bonafide", {"composite", "synthetic"});
  SynthStream stream(30);
  std::vector<ScoreRecord> records;
  for (int i = 0; i < 2000; ++i) {
    const double b = std::min(1.0, 0.5 + 0.5 * stream.uniform());
    records.push_back(make_record(t, fmt::format("b{}", i), "bonafide", {b, 0.0, 1.0 - b}));
    const double a = i < 5 ? 1.0 : 0.9 * stream.uniform();
    records.push_back(make_record(t, fmt::format("c{}", i), "composite", {a, 1.0 - a, 0.0}));
    records.push_back(make_record(t, fmt::format("s{}", i), "synthetic",
                                  {0.3 * stream.uniform(), 0.0, 0.5}));
  }
  const ScoreSet set(t, records);
  const auto report = build_report(set);
  const auto& ladder = report.ladder;
  // 5/2000 = 0.25%: AP 10..200 reachable, 500 and up saturate.
  for (const auto& row : ladder) {
    const bool expect_saturated = row.ap >= 500;
    c.expect(row.saturated == expect_saturated, fmt::format("AP {} saturation flag", row.ap));
  }
  c.expect(ladder[6].bpcer == ladder[7].bpcer && ladder[5].bpcer == ladder[6].bpcer,
           "saturated rows differ");
  c.expect(ladder[6].tau == ladder[7].tau, "saturated thresholds differ");
  const auto md = render_report(report, ReportFormat::kMarkdown);
  c.expect(md.find("BPCER10000 (APCER_worst = 0.01%) [saturated]") != std::string::npos,
           "markdown lacks the saturated flag");
  c.note = fmt::format("{} sets monotone; BPCER1000 = BPCER10000 = {}% [saturated]", sets,
                       format_percent(ladder[7].bpcer));
}

void cascade_bounds(Check& c) {
  constexpr int kPairs = 30;
  for (int i = 0; i < kPairs; ++i) {
    auto [border, source] = testing::random_pair(31000 + i);
    const double tb = bpcer_at_ap(border, 100).tau;
    const double ts = bpcer_at_ap(source, 100).tau;
    for (auto [b_tau, s_tau] : {std::pair{tb, ts}, std::pair{0.35, 0.6}}) {
      const auto r = cascade_rates(CascadeConfig(border, source, b_tau, s_tau));
      const double bb = bpcer(border, b_tau), bs = bpcer(source, s_tau);
      // Union bound compared on counts: k1/n + k2/n may round below k/n.
      const double n = static_cast<double>(border.n_bona_fide());
      c.expect(std::max(bb, bs) <= r.bpcer &&
                   std::round(r.bpcer * n) <= std::round(bb * n) + std::round(bs * n),
               fmt::format("pair {} BPCER bounds", i));
      for (const auto& sr : r.apcer_per_species) {
        const double ab = oracle::apcer(border, border.taxonomy().label_id(sr.species), b_tau);
        const double as = oracle::apcer(source, source.taxonomy().label_id(sr.species), s_tau);
        c.expect(sr.rate <= std::min(ab, as), fmt::format("pair {} APCER {}", i, sr.species));
      }
    }
    // Degenerate source stage: tau_source = 0 with every source score > 0.
    std::vector<ScoreRecord> lifted(source.records().begin(), source.records().end());
    for (auto& rec : lifted) rec.scores[0] = std::max(rec.scores[0], 0.01);
    const ScoreSet positive(source.taxonomy(), lifted);
    const auto d = cascade_rates(CascadeConfig(border, positive, tb, 0.0));
    bool identical = d.bpcer == bpcer(border, tb);
    for (const auto& sr : d.apcer_per_species) {
      identical &= sr.rate == oracle::apcer(border, border.taxonomy().label_id(sr.species), tb);
    }
    c.expect(identical, fmt::format("pair {} degenerate-stage identity", i));
  }
  c.note = fmt::format("{} joined pairs", kPairs);
}

void probit_accuracy(Check& c) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(1e-6, 1.0 - 1e-6);
  std::uniform_real_distribution<double> lg(-6.0, std::log10(0.5));
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double p = u(rng);
    // Half of the draws cover the tails on a log scale.
    if (i % 2) p = std::pow(10.0, lg(rng)), p = (i % 4 == 1) ? p : 1.0 - p;
    const double err = std::abs(probit(p) - oracle::probit_bisect(p));
    worst = std::max(worst, err);
    c.expect(err < 1e-8, fmt::format("p = {:.17g}: error {:.3g}", p, err));
  }
  c.note = fmt::format("10000 samples, max error {:.2e}", worst);
}

void determinism(Check& c) {
  testing::TempDir dir;
  unsetenv("PADEVAL_OUT");
  auto [border, source] = testing::random_pair(5150, 500);
  testing::spit(dir / "b.csv", serialize_scores(border));
  testing::spit(dir / "s.csv", serialize_scores(source));
  testing::spit(dir / "b.json", serialize_manifest(testing::border_taxonomy()));
  testing::spit(dir / "s.json", serialize_manifest(testing::source_taxonomy()));
  const std::string b = dir / "b.csv", bm = dir / "b.json";
  int files = 0;
  for (const auto* tag : {"1", "2"}) {
    const auto o = [&](const std::string& name) { return dir / (name + tag); };
    const std::vector<std::vector<std::string>> runs = {
        {"synth", "--two-class", "--n", "1000", "--seed", "7", "--out", o("synth")},
        {"eval", "--scores", b, "--manifest", bm, "--out", o("r.json"), "--cm-out", o("cm.svg")},
        {"det", "--scores", b, "--manifest", bm, "--out", o("det.svg"), "--eer-out", o("eer.svg")},
        {"kde", "--scores", b, "--manifest", bm, "--out", o("kde.svg")},
        {"kde", "--scores", b, "--manifest", bm, "--out", o("kdelog.svg"), "--scale", "log"},
        {"cascade", "--border-scores", b, "--border-manifest", bm, "--source-scores",
         dir / "s.csv", "--source-manifest", dir / "s.json", "--out", o("c.json")},
        {"weights", "--counts", "a=3,b=5", "--out", o("w.csv")},
    };
    for (const auto& args : runs) {
      const auto r = testing::run_cli(args);
      c.expect(r.status == 0, args[0] + " failed: " + r.err);
    }
  }
  for (const auto& name : {"r.json", "cm.svg", "det.svg", "eer.svg", "kde.svg", "kdelog.svg",
                           "c.json", "w.csv", "synth/scores.csv", "synth/manifest.json"}) {
    std::string n = name;
    std::string first, second;
    if (n.rfind("synth/", 0) == 0) {
      first = testing::slurp(dir / ("synth1/" + n.substr(6)));
      second = testing::slurp(dir / ("synth2/" + n.substr(6)));
    } else {
      first = testing::slurp(dir / (n + "1"));
      second = testing::slurp(dir / (n + "2"));
    }
    c.expect(!first.empty() && first == second, n + " differs between runs");
    ++files;
  }
  // Frozen generator output: the same bytes on every platform.
  c.expect(serialize_scores(gen_two_class(0.6, 0.4, 0.1, 8, 7)) ==
               testing::slurp(testing::data_path("golden_two_class_seed7.csv")),
           "two-class generator drifted from the golden file");
  c.expect(serialize_scores(gen_multiclass(parse_synth_spec(
               testing::slurp(testing::data_path("three_class_spec.json"))))) ==
               testing::slurp(testing::data_path("golden_three_class.csv")),
           "multi-class generator drifted from the golden file");
  c.note = fmt::format("{} CLI outputs identical over two runs, 2 golden streams", files);
}

void report_shape(Check& c) {
  testing::TempDir dir;
  unsetenv("PADEVAL_OUT");
  SynthSpec spec;
  spec.seed = 2;
  spec.bona_fide = {"bonafide", 0.8, 0.12, 3000};
  spec.attack_species = {{"composite", 0.3, 0.15, 2000}, {"synthetic", 0.25, 0.1, 2000}};
  const auto set = gen_multiclass(spec);
  testing::spit(dir / "s.csv", serialize_scores(set));
  testing::spit(dir / "m.json", serialize_manifest(set.taxonomy()));
  const auto r = testing::run_cli({"eval", "--scores", dir / "s.csv", "--manifest",
                                   dir / "m.json", "--tau", "auto:bpcer100", "--out",
                                   dir / "report.json"});
  c.expect(r.status == 0, "eval failed: " + r.err);
  const auto report = parse_report_json(testing::slurp(dir / "report.json"));
  c.expect(report.ladder.size() == 8, "ladder rows");
  for (std::size_t i = 0; i < report.ladder.size() && i < kApLadder.size(); ++i) {
    c.expect(report.ladder[i].ap == kApLadder[i], "ladder order");
  }
  c.expect(report.per_species_apcer.size() == 2, "per-species APCER rows");
  c.expect(report.chosen_tau == report.ladder[3].tau, "tau is the BPCER100 threshold");
  double worst = 0.0;
  for (const auto& s : report.per_species_apcer) worst = std::max(worst, s.rate);
  c.expect(report.acer_at_tau == (worst + report.bpcer_at_tau) / 2.0, "ACER consistency");

  const auto md = testing::run_cli({"eval", "--scores", dir / "s.csv", "--manifest",
                                    dir / "m.json"});
  std::istringstream in(md.out);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.rfind("| ", 0) == 0 && line.rfind("| Metric", 0) != 0) ++rows;
  }
  c.expect(rows == 13, fmt::format("markdown has {} rows, expected 13", rows));
  c.note = fmt::format("1 EER + 8 ladder + {} species + BPCER + ACER rows at tau {}",
                       report.per_species_apcer.size(), format_fixed(report.chosen_tau, 4));
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0: no runtime bound
  std::function<void(Check&)> run;
};

}  // namespace
}  // namespace padeval

int main() {
  using namespace padeval;
  const std::vector<Criterion> criteria = {
      {1, "class-weight reproduction", 1.0, class_weight_reproduction},
      {2, "ACER arithmetic reproduction", 1.0, acer_reproduction},
      {3, "analytic EER and squash invariance", 5.0, analytic_eer},
      {4, "oracle equivalence", 30.0, oracle_equivalence},
      {5, "BPCER_AP ladder monotonicity and saturation", 0.0, ladder_monotone_and_saturation},
      {6, "cascade bounds", 0.0, cascade_bounds},
      {7, "probit accuracy", 5.0, probit_accuracy},
      {8, "determinism", 0.0, determinism},
      {9, "report shape", 0.0, report_shape},
  };
  int failed = 0;
  for (const auto& criterion : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criterion.budget_s > 0 && seconds >= criterion.budget_s) {
      check.expect(false, fmt::format("runtime {:.2f}s exceeds {:.0f}s", seconds,
                                      criterion.budget_s));
    }
    const bool ok = check.ok();
    failed += ok ? 0 : 1;
    std::cout << fmt::format("[{}] criterion {}: {} ({:.3f}s) - {}\n", ok ? "PASS" : "FAIL",
                             criterion.id, criterion.name, seconds,
                             ok ? check.note : check.summary());
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failed,
                           criteria.size());
  return failed == 0 ? 0 : 1;
}
