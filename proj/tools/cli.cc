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

#include "cli.h"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "padeval/cascade.h"
#include "padeval/class_weights.h"
#include "padeval/curves.h"
#include "padeval/error.h"
#include "padeval/format.h"
#include "padeval/kde.h"
#include "padeval/metrics.h"
#include "padeval/report.h"
#include "padeval/score_io.h"
#include "padeval/svg.h"
#include "padeval/synth.h"

namespace padeval::cli {
namespace {

namespace fs = std::filesystem;

// Bad paths, unreadable inputs and refused overwrites: exit status 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path, std::string_view flag) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(std::string(flag) + ": cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Output files are only written once every output of the invocation has been
// computed; each goes to a sibling temporary first and is renamed into place.
class Outputs {
 public:
  explicit Outputs(bool force) : force_(force) {}

  // Reserve a path before doing any work so refusals happen up front.
  void claim(const fs::path& path, std::string_view flag) {
    if (path.empty()) throw UsageError(std::string(flag) + ": empty path");
    if (fs::exists(path) && !force_) {
      throw UsageError(std::string(flag) + ": '" + path.string() +
                       "' exists (pass --force to overwrite)");
    }
  }

  void add(fs::path path, std::string content) {
    pending_.emplace_back(std::move(path), std::move(content));
  }

  void commit() {
    for (const auto& [path, content] : pending_) {
      if (path.has_parent_path()) fs::create_directories(path.parent_path());
      fs::path tmp = path;
      tmp += ".tmp";
      {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        out.close();
        if (!out) {
          std::error_code ec;
          fs::remove(tmp, ec);
          throw UsageError("cannot write '" + path.string() + "'");
        }
      }
      fs::rename(tmp, path);
    }
    pending_.clear();
  }

 private:
  bool force_;
  std::vector<std::pair<fs::path, std::string>> pending_;
};

// --out if given, otherwise fallback inside $PADEVAL_OUT, otherwise none.
std::optional<fs::path> output_path(const std::string& flag_value,
                                    std::string_view fallback_name) {
  if (!flag_value.empty()) return fs::path(flag_value);
  if (const char* dir = std::getenv("PADEVAL_OUT"); dir && *dir) {
    return fs::path(dir) / fallback_name;
  }
  return std::nullopt;
}

struct ScoreInput {
  std::string scores;
  std::string manifest;
  std::string format;  // "", "csv" or "jsonl"

  void add_to(CLI::App* cmd, const std::string& prefix = {}) {
    const std::string p = prefix.empty() ? "" : prefix + "-";
    cmd->add_option("--" + p + "scores", scores, "Score file (CSV or JSONL)")
        ->required();
    cmd->add_option("--" + p + "manifest", manifest, "Class manifest (JSON)")
        ->required();
    if (prefix.empty()) {
      cmd->add_option("--format", format, "Score file format")
          ->check(CLI::IsMember({"csv", "jsonl"}));
    }
  }

  ScoreFormat score_format() const {
    if (format == "csv") return ScoreFormat::kCsv;
    if (format == "jsonl") return ScoreFormat::kJsonl;
    return format_for_path(scores);
  }

  ClassTaxonomy taxonomy() const {
    return parse_manifest(read_file(manifest, "--manifest"));
  }

  ScoreSet load(const ClassTaxonomy& taxonomy) const {
    return parse_scores(read_file(scores, "--scores"), taxonomy, score_format());
  }

  ScoreSet load() const { return load(taxonomy()); }

  std::string dataset_name() const { return fs::path(scores).stem().string(); }
};

struct PlotFlags {
  std::string title;
  int width = 640;
  int height = 480;
  std::optional<double> x_min, x_max, y_min, y_max;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--title", title, "Plot title");
    cmd->add_option("--width", width, "Plot width in pixels")->capture_default_str();
    cmd->add_option("--height", height, "Plot height in pixels")->capture_default_str();
    cmd->add_option("--x-min", x_min, "Lower x-axis bound");
    cmd->add_option("--x-max", x_max, "Upper x-axis bound");
    cmd->add_option("--y-min", y_min, "Lower y-axis bound");
    cmd->add_option("--y-max", y_max, "Upper y-axis bound");
  }

  PlotOptions options() const {
    return {title, width, height, x_min, x_max, y_min, y_max};
  }
};

// Selector parse errors carry the flag and the offending text.
template <typename Parse>
auto parse_flag(std::string_view flag, const std::string& text, Parse parse) {
  try {
    return parse(text);
  } catch (const ArgumentError& e) {
    throw ArgumentError(std::string(flag) + " '" + text + "': " + e.what());
  }
}

ThresholdSelector tau_flag(std::string_view flag, const std::string& text) {
  return parse_flag(flag, text, ThresholdSelector::parse);
}

SpeciesSelector species_flag(const std::string& text) {
  return parse_flag("--species", text, SpeciesSelector::parse);
}

ReportFormat report_format_for(const std::string& choice,
                               const std::optional<fs::path>& path) {
  if (choice == "json") return ReportFormat::kJson;
  if (choice == "markdown") return ReportFormat::kMarkdown;
  if (path && (path->extension() == ".md" || path->extension() == ".markdown")) {
    return ReportFormat::kMarkdown;
  }
  return path ? ReportFormat::kJson : ReportFormat::kMarkdown;
}

PlotOptions titled(std::string title) {
  PlotOptions options;
  options.title = std::move(title);
  return options;
}

MatrixMode matrix_mode(const std::string& mode) {
  return mode == "binary" ? MatrixMode::kBinary : MatrixMode::kFull;
}

// ---------------------------------------------------------------- eval

struct EvalCommand {
  ScoreInput input;
  std::string tau = "auto:bpcer100";
  std::string species = "worst-case";
  std::string out;
  std::string report_format;
  std::string dataset;
  std::string cm_out;
  std::string cm_mode = "full";
  bool force = false;

  void add_to(CLI::App& app, std::function<void()>& action, std::ostream& stdout_) {
    auto* cmd = app.add_subcommand("eval", "Evaluate a score set and write a report");
    input.add_to(cmd);
    cmd->add_option("--tau", tau, "Operating point: a threshold in [0,1] or auto:bpcerN")
        ->capture_default_str();
    cmd->add_option("--species", species, "APCER driving EER/BPCER_AP: worst-case or a species")
        ->capture_default_str();
    cmd->add_option("--out", out, "Report path (.json or .md); stdout when omitted");
    cmd->add_option("--report-format", report_format, "Override the report format")
        ->check(CLI::IsMember({"json", "markdown"}));
    cmd->add_option("--dataset", dataset, "Dataset name recorded in the report");
    cmd->add_option("--cm-out", cm_out, "Also render the confusion matrix at tau as SVG");
    cmd->add_option("--cm-mode", cm_mode, "Confusion matrix mode")
        ->check(CLI::IsMember({"full", "binary"}))
        ->capture_default_str();
    cmd->add_flag("--force", force, "Overwrite existing outputs");
    cmd->callback([this, &action, &stdout_] { action = [this, &stdout_] { run(stdout_); }; });
  }

  void run(std::ostream& stdout_) {
    const auto tau_selector = tau_flag("--tau", tau);
    const auto species_selector = species_flag(species);
    Outputs outputs(force);
    const auto report_path = output_path(out, "report.json");
    if (report_path) outputs.claim(*report_path, "--out");
    if (!cm_out.empty()) outputs.claim(cm_out, "--cm-out");

    const ScoreSet set = input.load();
    const auto report = build_report(set, species_selector, tau_selector,
                                     dataset.empty() ? input.dataset_name() : dataset);
    const auto text = render_report(report, report_format_for(report_format, report_path));
    if (!cm_out.empty()) {
      outputs.add(cm_out,
                  render_svg(ConfusionPlot{confusion_matrix(set, report.chosen_tau,
                                                            matrix_mode(cm_mode))},
                             titled("Confusion matrix at τ = " + format_fixed(report.chosen_tau, 4))));
    }
    if (report_path) {
      outputs.add(*report_path, text);
    } else {
      stdout_ << text;
    }
    outputs.commit();
  }
};

// ---------------------------------------------------------------- det

struct DetCommand {
  ScoreInput input;
  PlotFlags plot;
  std::string out;
  std::string eer_out;
  std::string species = "worst-case";
  bool force = false;

  void add_to(CLI::App& app, std::function<void()>& action) {
    auto* cmd = app.add_subcommand("det", "Render DET curves (one per species) as SVG");
    input.add_to(cmd);
    plot.add_to(cmd);
    cmd->add_option("--out", out, "DET SVG path");
    cmd->add_option("--eer-out", eer_out, "Also render the APCER/BPCER-vs-threshold plot");
    cmd->add_option("--species", species, "APCER used by the EER plot")
        ->capture_default_str();
    cmd->add_flag("--force", force, "Overwrite existing outputs");
    cmd->callback([this, &action] { action = [this] { run(); }; });
  }

  void run() {
    const auto species_selector = species_flag(species);
    Outputs outputs(force);
    const auto det_path = output_path(out, "det.svg");
    if (!det_path) throw UsageError("--out is required (or set PADEVAL_OUT)");
    outputs.claim(*det_path, "--out");
    if (!eer_out.empty()) outputs.claim(eer_out, "--eer-out");

    const ScoreSet set = input.load();
    outputs.add(*det_path, render_svg(DetPlot{det_entries(set)}, plot.options()));
    if (!eer_out.empty()) {
      PlotOptions eer_options = plot.options();
      eer_options.x_min = eer_options.x_max = eer_options.y_min =
          eer_options.y_max = std::nullopt;
      outputs.add(eer_out, render_svg(EerPlot{eer_curve(set, species_selector)},
                                      eer_options));
    }
    outputs.commit();
  }
};

// ---------------------------------------------------------------- kde

struct KdeCommand {
  ScoreInput input;
  PlotFlags plot;
  std::string out;
  std::string scale = "linear";
  std::optional<double> bandwidth;
  std::string tau;
  std::string grouping = "species";
  bool force = false;

  void add_to(CLI::App& app, std::function<void()>& action) {
    auto* cmd = app.add_subcommand("kde", "Render bona-fide score densities as SVG");
    input.add_to(cmd);
    plot.add_to(cmd);
    cmd->add_option("--out", out, "KDE SVG path");
    cmd->add_option("--scale", scale, "Density axis scale")
        ->check(CLI::IsMember({"linear", "log"}))
        ->capture_default_str();
    cmd->add_option("--bandwidth", bandwidth, "Kernel bandwidth (Silverman when omitted)");
    cmd->add_option("--tau", tau, "Mark a threshold: a value in [0,1] or auto:bpcerN");
    cmd->add_option("--group", grouping, "One curve per species, or bona fide vs all attacks")
        ->check(CLI::IsMember({"species", "binary"}))
        ->capture_default_str();
    cmd->add_flag("--force", force, "Overwrite existing outputs");
    cmd->callback([this, &action] { action = [this] { run(); }; });
  }

  void run() {
    if (bandwidth && !(*bandwidth > 0.0)) {
      throw ArgumentError("--bandwidth: must be positive");
    }
    std::optional<ThresholdSelector> tau_selector;
    if (!tau.empty()) tau_selector = tau_flag("--tau", tau);
    Outputs outputs(force);
    const auto path = output_path(out, "kde.svg");
    if (!path) throw UsageError("--out is required (or set PADEVAL_OUT)");
    outputs.claim(*path, "--out");

    const ScoreSet set = input.load();
    const auto& taxonomy = set.taxonomy();
    std::vector<std::pair<std::string, std::vector<double>>> groups;
    if (grouping == "binary") {
      auto bf = set.sorted_scores(kBonaFideLabel);
      groups.push_back({taxonomy.bona_fide(), {bf.begin(), bf.end()}});
      std::vector<double> attacks;
      for (LabelId id = 1; id < taxonomy.label_count(); ++id) {
        auto s = set.sorted_scores(id);
        attacks.insert(attacks.end(), s.begin(), s.end());
      }
      groups.push_back({std::string(kBinaryAttackLabel), std::move(attacks)});
    } else {
      for (LabelId id = 0; id < taxonomy.label_count(); ++id) {
        auto s = set.sorted_scores(id);
        groups.push_back({taxonomy.label_name(id), {s.begin(), s.end()}});
      }
    }
    KdePlot kde_plot;
    kde_plot.scale = scale == "log" ? DensityScale::kLog : DensityScale::kLinear;
    for (auto& [label, samples] : groups) {
      if (samples.size() < 2) continue;  // nothing to estimate
      const double h = bandwidth ? *bandwidth : silverman_bandwidth(samples);
      kde_plot.series.push_back(kde(samples, unit_grid_for(h), h, label));
    }
    if (tau_selector) kde_plot.threshold = resolve_threshold(set, *tau_selector).tau;
    outputs.add(*path, render_svg(kde_plot, plot.options()));
    outputs.commit();
  }
};

// ---------------------------------------------------------------- cascade

struct CascadeCommand {
  ScoreInput border;
  ScoreInput source;
  std::string tau_border = "auto:bpcer100";
  std::string tau_source = "auto:bpcer100";
  std::string out;
  std::string report_format;
  std::string cm_out;
  std::string cm_mode = "full";
  bool force = false;

  void add_to(CLI::App& app, std::function<void()>& action, std::ostream& stdout_) {
    auto* cmd = app.add_subcommand("cascade", "Evaluate a two-stage (border + source) system");
    border.add_to(cmd, "border");
    source.add_to(cmd, "source");
    cmd->add_option("--tau-border", tau_border, "Border threshold: value or auto:bpcerN")
        ->capture_default_str();
    cmd->add_option("--tau-source", tau_source, "Source threshold: value or auto:bpcerN")
        ->capture_default_str();
    cmd->add_option("--out", out, "Report path (.json or .md); stdout when omitted");
    cmd->add_option("--report-format", report_format, "Override the report format")
        ->check(CLI::IsMember({"json", "markdown"}));
    cmd->add_option("--cm-out", cm_out, "Also render the cascade confusion matrix as SVG");
    cmd->add_option("--cm-mode", cm_mode, "Confusion matrix mode")
        ->check(CLI::IsMember({"full", "binary"}))
        ->capture_default_str();
    cmd->add_flag("--force", force, "Overwrite existing outputs");
    cmd->callback([this, &action, &stdout_] { action = [this, &stdout_] { run(stdout_); }; });
  }

  void run(std::ostream& stdout_) {
    const auto border_selector = tau_flag("--tau-border", tau_border);
    const auto source_selector = tau_flag("--tau-source", tau_source);
    Outputs outputs(force);
    const auto report_path = output_path(out, "cascade.json");
    if (report_path) outputs.claim(*report_path, "--out");
    if (!cm_out.empty()) outputs.claim(cm_out, "--cm-out");

    // Each stage also accepts the other stage's species as (unscored) labels.
    const ClassTaxonomy bt = border.taxonomy();
    const ClassTaxonomy st = source.taxonomy();
    const auto border_set = border.load(bt.with_unscored(st.attack_species()));
    const auto source_set = source.load(st.with_unscored(bt.attack_species()));
    const double tb = resolve_threshold(border_set, border_selector).tau;
    const double ts = resolve_threshold(source_set, source_selector).tau;
    const CascadeConfig config(border_set, source_set, tb, ts);

    const auto report = build_cascade_report(config, tau_border, tau_source,
                                             border.dataset_name(), source.dataset_name());
    const auto text =
        render_cascade_report(report, report_format_for(report_format, report_path));
    if (!cm_out.empty()) {
      outputs.add(cm_out, render_svg(ConfusionPlot{cascade_confusion(config, matrix_mode(cm_mode))},
                                     titled("Two-stage confusion matrix")));
    }
    if (report_path) {
      outputs.add(*report_path, text);
    } else {
      stdout_ << text;
    }
    outputs.commit();
  }
};

// ---------------------------------------------------------------- weights

struct WeightsCommand {
  std::string counts;
  std::string counts_file;
  std::string out;
  bool force = false;

  void add_to(CLI::App& app, std::function<void()>& action, std::ostream& stdout_) {
    auto* cmd = app.add_subcommand("weights", "Balanced class weights from sample counts");
    auto* inline_opt = cmd->add_option("--counts", counts, "Inline counts, e.g. \"bonafide=100,print=250\"");
    auto* file_opt = cmd->add_option("--counts-file", counts_file, "CSV with columns class,count");
    inline_opt->excludes(file_opt);
    cmd->add_option("--out", out, "Write class,weight CSV here instead of stdout");
    cmd->add_flag("--force", force, "Overwrite existing outputs");
    cmd->callback([this, &action, &stdout_] { action = [this, &stdout_] { run(stdout_); }; });
  }

  void run(std::ostream& stdout_) {
    if (counts.empty() && counts_file.empty()) {
      throw UsageError("one of --counts or --counts-file is required");
    }
    Outputs outputs(force);
    if (!out.empty()) outputs.claim(out, "--out");
    const ClassCounts parsed = counts.empty()
                                   ? parse_counts_csv(read_file(counts_file, "--counts-file"))
                                   : parse_counts_inline(counts);
    std::string text = "class,weight\n";
    for (const auto& w : class_weights(parsed)) {
      text += w.name + "," + format_fixed(w.weight, 4) + "\n";
    }
    if (out.empty()) {
      stdout_ << text;
    } else {
      outputs.add(out, text);
      outputs.commit();
    }
  }
};

// ---------------------------------------------------------------- synth

struct SynthCommand {
  bool two_class = false;
  std::string spec_file;
  double mu_bf = 0.6;
  double mu_attack = 0.4;
  double sigma = 0.1;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::string squash = "logistic";
  double squash_midpoint = 0.5;
  double squash_scale = 0.1;
  std::string format = "csv";
  std::string out;
  bool force = false;

  void add_to(CLI::App& app, std::function<void()>& action) {
    auto* cmd = app.add_subcommand("synth", "Generate a seeded synthetic score set");
    auto* two = cmd->add_flag("--two-class", two_class,
                              "Bona fide vs one attack species, equal-variance Gaussians");
    auto* spec = cmd->add_option("--spec", spec_file, "Multi-class generator spec (JSON)");
    two->excludes(spec);
    cmd->add_option("--mu-bf", mu_bf, "Bona fide mean (before squashing)")->capture_default_str();
    cmd->add_option("--mu-attack", mu_attack, "Attack mean (before squashing)")->capture_default_str();
    cmd->add_option("--sigma", sigma, "Common standard deviation")->capture_default_str();
    cmd->add_option("--n", n, "Samples per class")->capture_default_str();
    cmd->add_option("--seed", seed, "mt19937_64 seed")->capture_default_str();
    cmd->add_option("--squash", squash, "Map onto (0,1)")
        ->check(CLI::IsMember({"logistic", "normal-cdf"}))
        ->capture_default_str();
    cmd->add_option("--squash-midpoint", squash_midpoint, "Squash midpoint")->capture_default_str();
    cmd->add_option("--squash-scale", squash_scale, "Squash scale")->capture_default_str();
    cmd->add_option("--format", format, "Score file format")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->capture_default_str();
    cmd->add_option("--out", out, "Output directory (scores + manifest.json)");
    cmd->add_flag("--force", force, "Overwrite existing outputs");
    cmd->callback([this, &action] { action = [this] { run(); }; });
  }

  void run() {
    if (!two_class && spec_file.empty()) {
      throw UsageError("one of --two-class or --spec is required");
    }
    fs::path dir;
    if (!out.empty()) {
      dir = out;
    } else if (const char* env = std::getenv("PADEVAL_OUT"); env && *env) {
      dir = env;
    } else {
      throw UsageError("--out is required (or set PADEVAL_OUT)");
    }
    const bool jsonl = format == "jsonl";
    const fs::path scores_path = dir / (jsonl ? "scores.jsonl" : "scores.csv");
    const fs::path manifest_path = dir / "manifest.json";
    Outputs outputs(force);
    outputs.claim(scores_path, "--out");
    outputs.claim(manifest_path, "--out");

    std::optional<ScoreSet> set;
    if (two_class) {
      if (!(squash_scale > 0.0)) throw ArgumentError("--squash-scale: must be positive");
      Squash map{parse_squash_kind(squash), squash_midpoint, squash_scale};
      set = gen_two_class(mu_bf, mu_attack, sigma, n, seed, map);
    } else {
      set = gen_multiclass(parse_synth_spec(read_file(spec_file, "--spec")));
    }
    outputs.add(scores_path,
                serialize_scores(*set, jsonl ? ScoreFormat::kJsonl : ScoreFormat::kCsv));
    outputs.add(manifest_path, serialize_manifest(set->taxonomy()));
    outputs.commit();
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"padeval: presentation attack detection evaluation toolkit",
               "padeval"};
  app.set_version_flag("--version", std::string(toolkit_version()));
  app.require_subcommand(1);

  std::function<void()> action;
  EvalCommand eval_cmd;
  DetCommand det_cmd;
  KdeCommand kde_cmd;
  CascadeCommand cascade_cmd;
  WeightsCommand weights_cmd;
  SynthCommand synth_cmd;
  eval_cmd.add_to(app, action, out);
  det_cmd.add_to(app, action);
  kde_cmd.add_to(app, action);
  cascade_cmd.add_to(app, action, out);
  weights_cmd.add_to(app, action, out);
  synth_cmd.add_to(app, action);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << toolkit_version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "padeval: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const DataError& e) {
    err << "padeval: invalid data: " << e.what() << "\n";
    return kExitData;
  } catch (const ArgumentError& e) {
    err << "padeval: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "padeval: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "padeval: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace padeval::cli
