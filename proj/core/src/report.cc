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

#include "padeval/report.h"

#include <initializer_list>
#include <string>
#include <utility>

#include <fmt/format.h>

#include "json.hpp"
#include "padeval/error.h"
#include "padeval/format.h"

#ifndef PADEVAL_VERSION
#define PADEVAL_VERSION "0.0.0"
#endif

namespace padeval {
namespace {

using Json = nlohmann::ordered_json;

std::string md_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '|') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

// Percent target of an attack potential: 100/AP, shortest form ("0.5").
std::string target_percent(int ap) {
  return fmt::format("{}", 100.0 / static_cast<double>(ap));
}

void expect_keys(const Json& obj, std::string_view where,
                 std::initializer_list<std::string_view> keys) {
  if (!obj.is_object()) {
    throw DataError("report: '" + std::string(where) + "' must be an object");
  }
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto k : keys) known = known || key == k;
    if (!known) {
      throw DataError("report: unknown field '" + std::string(where) + "." +
                      key + "'");
    }
  }
  for (auto k : keys) {
    if (!obj.contains(k)) {
      throw DataError("report: missing field '" + std::string(where) + "." +
                      std::string(k) + "'");
    }
  }
}

template <typename T>
T get_field(const Json& obj, const char* key) {
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DataError(std::string("report: field '") + key +
                    "' has the wrong type");
  }
}

Json species_rates_json(const std::vector<SpeciesRate>& rates) {
  Json obj = Json::object();
  for (const auto& r : rates) obj[r.species] = r.rate;
  return obj;
}

std::vector<SpeciesRate> species_rates_from_json(const Json& obj,
                                                 const char* where) {
  if (!obj.is_object()) {
    throw DataError(std::string("report: '") + where + "' must be an object");
  }
  std::vector<SpeciesRate> out;
  for (const auto& [key, value] : obj.items()) {
    if (!value.is_number()) {
      throw DataError(std::string("report: '") + where + "." + key +
                      "' must be a number");
    }
    out.push_back({key, value.get<double>()});
  }
  return out;
}

std::string render_json(const EvaluationReport& r) {
  Json doc;
  doc["schema"] = kReportSchema;
  doc["schema_version"] = kReportSchemaVersion;
  Json meta;
  meta["dataset"] = r.metadata.dataset;
  meta["toolkit_version"] = r.metadata.toolkit_version;
  meta["n_records"] = r.metadata.n_records;
  meta["n_bona_fide"] = r.metadata.n_bona_fide;
  Json counts = Json::object();
  for (const auto& c : r.metadata.n_per_species) counts[c.label] = c.count;
  meta["n_per_species"] = counts;
  meta["species_selector"] = r.metadata.species_selector;
  meta["tau_selector"] = r.metadata.tau_selector;
  doc["metadata"] = meta;
  doc["eer"] = {{"rate", r.eer.eer}, {"tau", r.eer.tau}, {"exact", r.eer.exact}};
  Json ladder = Json::array();
  for (const auto& row : r.ladder) {
    ladder.push_back({{"ap", row.ap},
                      {"target_apcer", row.target_apcer},
                      {"bpcer", row.bpcer},
                      {"tau", row.tau},
                      {"apcer", row.apcer},
                      {"saturated", row.saturated},
                      {"interpolated", row.interpolated}});
  }
  doc["ladder"] = ladder;
  Json op;
  op["tau"] = r.chosen_tau;
  op["saturated"] = r.tau_saturated;
  op["apcer_per_species"] = species_rates_json(r.per_species_apcer);
  op["worst_species"] = r.worst_species;
  op["bpcer"] = r.bpcer_at_tau;
  op["acer"] = r.acer_at_tau;
  doc["operating_point"] = op;
  return doc.dump(2) + "\n";
}

std::string render_markdown(const EvaluationReport& r) {
  const auto& m = r.metadata;
  const bool worst = m.species_selector == "worst-case";
  const std::string apcer_name =
      worst ? "APCER_worst" : "APCER_" + md_escape(m.species_selector);
  std::string out;
  out += "# PAD evaluation";
  if (!m.dataset.empty()) out += ": " + md_escape(m.dataset);
  out += "\n\n";
  out += fmt::format("Records: {} (bona fide {}", m.n_records, m.n_bona_fide);
  for (const auto& c : m.n_per_species) {
    out += fmt::format(", {} {}", md_escape(c.label), c.count);
  }
  out += ")  \n";
  out += fmt::format("APCER selector: {}. Operating point: {}.  \n",
                     md_escape(m.species_selector), md_escape(m.tau_selector));
  out += fmt::format("padeval {}\n\n", md_escape(m.toolkit_version));

  out += "| Metric | Score (%) | Threshold (τ) |\n";
  out += "|:---|---:|---:|\n";
  out += fmt::format("| EER{} {}| {} | {} |\n",
                     worst ? "_worst" : "_" + md_escape(m.species_selector),
                     r.eer.exact ? "" : "(interpolated) ",
                     format_percent(r.eer.eer), format_fixed(r.eer.tau, 4));
  for (const auto& row : r.ladder) {
    std::string flags;
    if (row.saturated) flags += " [saturated]";
    if (row.interpolated) flags += " [interpolated]";
    out += fmt::format("| BPCER{} ({} = {}%){} | {} | {} |\n", row.ap,
                       apcer_name, target_percent(row.ap), flags,
                       format_percent(row.bpcer), format_fixed(row.tau, 4));
  }
  const std::string tau = format_fixed(r.chosen_tau, 4);
  const std::string tau_flag = r.tau_saturated ? " [saturated]" : "";
  for (const auto& s : r.per_species_apcer) {
    out += fmt::format("| APCER_{}(τ){} | {} | {} |\n", md_escape(s.species),
                       s.species == r.worst_species ? " (worst)" : "",
                       format_percent(s.rate), tau);
  }
  out += fmt::format("| BPCER(τ){} | {} | {} |\n", tau_flag,
                     format_percent(r.bpcer_at_tau), tau);
  out += fmt::format("| ACER(τ){} | {} | {} |\n", tau_flag,
                     format_percent(r.acer_at_tau), tau);
  return out;
}

Json cascade_rates_json(const std::string& metric, const CascadeRates& r) {
  Json row;
  if (!metric.empty()) row["metric"] = metric;
  row["tau_border"] = r.tau_border;
  row["tau_source"] = r.tau_source;
  row["apcer"] = r.apcer_worst;
  row["worst_species"] = r.worst_species;
  row["bpcer"] = r.bpcer;
  row["acer"] = r.acer;
  row["apcer_per_species"] = species_rates_json(r.apcer_per_species);
  return row;
}

}  // namespace

std::string_view toolkit_version() { return PADEVAL_VERSION; }

EvaluationReport build_report(const ScoreSet& set,
                              const SpeciesSelector& species,
                              const ThresholdSelector& tau,
                              std::string dataset) {
  const RateCurve curve = rate_curve(set, species);
  EvaluationReport r;
  r.metadata.dataset = std::move(dataset);
  r.metadata.toolkit_version = std::string(toolkit_version());
  r.metadata.n_records = set.size();
  r.metadata.n_bona_fide = set.n_bona_fide();
  const auto& taxonomy = set.taxonomy();
  for (LabelId id = 1; id < taxonomy.label_count(); ++id) {
    r.metadata.n_per_species.push_back({taxonomy.label_name(id), set.count(id)});
  }
  r.metadata.species_selector = species.to_string();
  r.metadata.tau_selector = tau.to_string();

  r.eer = eer(curve);
  for (int ap : kApLadder) r.ladder.push_back(bpcer_at_ap(curve, ap));

  if (tau.is_auto()) {
    const auto op = bpcer_at_ap(curve, tau.ap());
    r.chosen_tau = op.tau;
    r.tau_saturated = op.saturated;
  } else {
    r.chosen_tau = tau.tau();
  }
  OperatingPoint op = operating_point(set, r.chosen_tau);
  r.per_species_apcer = std::move(op.apcer_per_species);
  r.worst_species = std::move(op.worst_species);
  r.bpcer_at_tau = op.bpcer;
  r.acer_at_tau = op.acer;
  return r;
}

std::string render_report(const EvaluationReport& report, ReportFormat format) {
  return format == ReportFormat::kJson ? render_json(report)
                                       : render_markdown(report);
}

EvaluationReport parse_report_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
  expect_keys(doc, "$", {"schema", "schema_version", "metadata", "eer",
                         "ladder", "operating_point"});
  if (get_field<std::string>(doc, "schema") != kReportSchema) {
    throw DataError("report: unexpected schema");
  }
  if (get_field<int>(doc, "schema_version") != kReportSchemaVersion) {
    throw DataError("report: unsupported schema_version");
  }

  EvaluationReport r;
  const auto& meta = doc.at("metadata");
  expect_keys(meta, "metadata",
              {"dataset", "toolkit_version", "n_records", "n_bona_fide",
               "n_per_species", "species_selector", "tau_selector"});
  r.metadata.dataset = get_field<std::string>(meta, "dataset");
  r.metadata.toolkit_version = get_field<std::string>(meta, "toolkit_version");
  r.metadata.n_records = get_field<std::size_t>(meta, "n_records");
  r.metadata.n_bona_fide = get_field<std::size_t>(meta, "n_bona_fide");
  const auto& counts = meta.at("n_per_species");
  if (!counts.is_object()) throw DataError("report: 'n_per_species' must be an object");
  for (const auto& [key, value] : counts.items()) {
    if (!value.is_number_unsigned()) {
      throw DataError("report: species counts must be non-negative integers");
    }
    r.metadata.n_per_species.push_back({key, value.get<std::size_t>()});
  }
  r.metadata.species_selector = get_field<std::string>(meta, "species_selector");
  r.metadata.tau_selector = get_field<std::string>(meta, "tau_selector");

  const auto& e = doc.at("eer");
  expect_keys(e, "eer", {"rate", "tau", "exact"});
  r.eer = {get_field<double>(e, "rate"), get_field<double>(e, "tau"),
           get_field<bool>(e, "exact")};

  const auto& ladder = doc.at("ladder");
  if (!ladder.is_array()) throw DataError("report: 'ladder' must be an array");
  for (const auto& row : ladder) {
    expect_keys(row, "ladder[]", {"ap", "target_apcer", "bpcer", "tau", "apcer",
                                  "saturated", "interpolated"});
    r.ladder.push_back({get_field<int>(row, "ap"),
                        get_field<double>(row, "target_apcer"),
                        get_field<double>(row, "bpcer"),
                        get_field<double>(row, "tau"),
                        get_field<double>(row, "apcer"),
                        get_field<bool>(row, "saturated"),
                        get_field<bool>(row, "interpolated")});
  }

  const auto& op = doc.at("operating_point");
  expect_keys(op, "operating_point", {"tau", "saturated", "apcer_per_species",
                                      "worst_species", "bpcer", "acer"});
  r.chosen_tau = get_field<double>(op, "tau");
  r.tau_saturated = get_field<bool>(op, "saturated");
  r.per_species_apcer =
      species_rates_from_json(op.at("apcer_per_species"), "apcer_per_species");
  r.worst_species = get_field<std::string>(op, "worst_species");
  r.bpcer_at_tau = get_field<double>(op, "bpcer");
  r.acer_at_tau = get_field<double>(op, "acer");
  return r;
}

CascadeReport build_cascade_report(const CascadeConfig& config,
                                   std::string tau_border_selector,
                                   std::string tau_source_selector,
                                   std::string border_dataset,
                                   std::string source_dataset) {
  constexpr int kCascadeAps[] = {10, 20, 50, 100};
  CascadeReport r;
  r.border_dataset = std::move(border_dataset);
  r.source_dataset = std::move(source_dataset);
  r.toolkit_version = std::string(toolkit_version());
  r.n_samples = config.joined().size();
  r.tau_border_selector = std::move(tau_border_selector);
  r.tau_source_selector = std::move(tau_source_selector);
  r.rows = cascade_table(config, kCascadeAps);
  r.selected = cascade_rates(config);
  return r;
}

std::string render_cascade_report(const CascadeReport& r, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    Json doc;
    doc["schema"] = kCascadeReportSchema;
    doc["schema_version"] = kReportSchemaVersion;
    doc["metadata"] = {{"border_dataset", r.border_dataset},
                       {"source_dataset", r.source_dataset},
                       {"toolkit_version", r.toolkit_version},
                       {"n_samples", r.n_samples},
                       {"tau_border_selector", r.tau_border_selector},
                       {"tau_source_selector", r.tau_source_selector}};
    Json rows = Json::array();
    for (const auto& row : r.rows) rows.push_back(cascade_rates_json(row.metric, row.rates));
    doc["rows"] = rows;
    doc["selected"] = cascade_rates_json({}, r.selected);
    return doc.dump(2) + "\n";
  }

  std::string out = "# Two-stage PAD evaluation\n\n";
  out += fmt::format("Samples: {}. Border: {}. Source: {}.  \n", r.n_samples,
                     r.border_dataset.empty() ? "-" : md_escape(r.border_dataset),
                     r.source_dataset.empty() ? "-" : md_escape(r.source_dataset));
  out += fmt::format("Selected thresholds: border {}, source {}.  \n",
                     md_escape(r.tau_border_selector),
                     md_escape(r.tau_source_selector));
  out += fmt::format("padeval {}\n\n", md_escape(r.toolkit_version));
  out += "| Metric | Border threshold (τ) | Source threshold (τ) | "
         "Combined APCER (%) | Combined BPCER (%) | Worst species |\n";
  out += "|:---|---:|---:|---:|---:|:---|\n";
  auto row_line = [](std::string_view metric, const CascadeRates& c) {
    return fmt::format("| {} | {} | {} | {} | {} | {} |\n", metric,
                       format_fixed(c.tau_border, 4),
                       format_fixed(c.tau_source, 4),
                       format_percent(c.apcer_worst), format_percent(c.bpcer),
                       md_escape(c.worst_species));
  };
  for (const auto& row : r.rows) out += row_line(row.metric, row.rates);
  out += row_line("**Selected**", r.selected);
  out += "\n| Species | Combined APCER (%) at selected τ |\n|:---|---:|\n";
  for (const auto& s : r.selected.apcer_per_species) {
    out += fmt::format("| {} | {} |\n", md_escape(s.species),
                       format_percent(s.rate));
  }
  out += fmt::format("| BPCER | {} |\n| ACER | {} |\n",
                     format_percent(r.selected.bpcer),
                     format_percent(r.selected.acer));
  return out;
}

}  // namespace padeval
