// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bugdestiny/app/config.hpp"

namespace bugdestiny::app {

/// File names inside the output directory.
inline constexpr const char* kCorpusCacheFile = "corpus.bdcorp";
inline constexpr const char* kIngestSummaryFile = "ingest_summary.json";
inline constexpr const char* kTopicModelFile = "topics.bdtopic";

/// Writes manifest_<command>.json (effective config, digest, seed, version)
/// into the output directory, creating it if needed.
void write_manifest(const RunConfig& config, std::string_view command);

struct IngestResult {
  std::string summary_json;
  std::size_t reports = 0;
  std::size_t train = 0;
  std::size_t test = 0;
};

/// Parses the export, writes the BDCORP/1 cache and an ingest summary.
IngestResult cmd_ingest(const RunConfig& config, std::ostream& log);

struct ReportTable {
  std::filesystem::path file;  // relative to the output directory
  std::string text;
};

struct ExperimentResult {
  std::vector<ReportTable> tables;
};

/// Runs the model grid of config.task over the cached corpus and writes
/// tables, JSON reports, models and test-set predictions.
ExperimentResult cmd_experiment(const RunConfig& config, std::ostream& log);

struct PredictInput {
  /// Inline report; used when `file` is empty.
  std::string id = "inline";
  std::string text;
  std::string priority;
  /// JSON lines ({"id", "description", "priority"}) or a CSV export using
  /// the configured column names (".csv" extension).
  std::filesystem::path file;
};

/// Writes one JSON record per report to `out`, input order preserved.
std::size_t cmd_predict(const RunConfig& config, const PredictInput& input, std::ostream& out);

struct ScatterResult {
  std::size_t rows = 0;
  double slope = 0.0;
  double intercept = 0.0;
  std::optional<double> r2;
};

/// Writes scatter/scatter.csv (test-split emotionality and hours),
/// scatter/scatter.json (fitted SVR line, R^2) and optionally scatter.svg.
ScatterResult cmd_plot_scatter(const RunConfig& config, bool svg, std::ostream& log);

}  // namespace bugdestiny::app
