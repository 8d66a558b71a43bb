// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bugdestiny/corpus.hpp"
#include "bugdestiny/features.hpp"
#include "bugdestiny/learn.hpp"
#include "bugdestiny/textprep.hpp"
#include "bugdestiny/topics.hpp"

namespace bugdestiny::app {

enum class Task { TimeToResolution, TimeToFix, NumericTime, Destiny, Correlation };
enum class Balancing { None, Smote, ClassWeights };
enum class Subset { Full, Short, Long };

std::string_view to_string(Task t);
std::string_view to_string(Balancing b);
std::string_view to_string(Subset s);
std::optional<Task> parse_task(std::string_view text);
std::optional<Balancing> parse_balancing(std::string_view text);
std::optional<Subset> parse_subset(std::string_view text);

std::string_view to_string(Normalization n);
std::string_view to_string(EmotionEncoding e);
std::optional<Normalization> parse_normalization(std::string_view text);
std::optional<EmotionEncoding> parse_emotion_encoding(std::string_view text);
std::optional<ModelKind> parse_model_kind(std::string_view text);

/// Lower-case file stem for a task ("time_to_resolution").
std::string task_slug(Task t);

struct RunPaths {
  std::filesystem::path corpus;
  std::filesystem::path lexicon;
  std::filesystem::path stopwords;  // empty: builtin list
  std::filesystem::path vectors;    // empty: hashed tf-idf embeddings
  std::filesystem::path output_dir;
};

/// Models used by the predict command, relative to the output directory.
/// An empty path disables that part of the prediction record.
struct PredictModels {
  std::filesystem::path time_class = "models/time_to_resolution/mlp.bdmodel";
  std::filesystem::path destiny = "models/destiny/mlp.bdmodel";
  std::filesystem::path hours = "models/numeric_time_resolution/cnn_full.bdmodel";
};

struct RunConfig {
  RunPaths paths;
  ColumnMapping columns;
  Task task = Task::TimeToResolution;

  std::vector<ModelKind> classification_models = {ModelKind::Mlp, ModelKind::Cnn1d};
  std::vector<ModelKind> regression_models = {ModelKind::Cnn1d, ModelKind::LinReg};
  /// Unset runs both the NONE and SMOTE rows of the classification grid.
  std::optional<Balancing> balancing;
  /// Unset runs FULL, SHORT and LONG for NUMERIC_TIME.
  std::optional<Subset> subset;

  /// use_topic applies to regression models; the classification grid runs
  /// with and without topics.
  FeatureConfig features;
  Normalization normalization = Normalization::PorterStem;
  std::size_t min_token_length = 2;

  double train_fraction = 0.80;
  double short_fraction = 0.70;
  QuantileBasis quantile_basis = QuantileBasis::TrainOnly;

  TopicFitOptions topics;
  std::size_t embedding_dimension = EmbeddingBackend::kDefaultDimension;

  std::vector<std::size_t> mlp_hidden = {32, 16};
  ConvSpec conv;
  TrainConfig train;
  SvrOptions svr;
  std::size_t smote_neighbors = 5;

  bool export_features = false;
  PredictModels predict;

  std::uint64_t seed = 42;

  /// Reads a JSON config. Relative paths resolve against the file's
  /// directory. Unknown keys and bad values raise ConfigError.
  static RunConfig load(const std::filesystem::path& path);
  static RunConfig from_json_text(std::string_view text, const std::filesystem::path& base_dir = {});

  /// Effective configuration as JSON, every field spelled out.
  std::string to_json() const;
  std::string digest() const;

  /// Seed for an independent stream of randomness (topics, SMOTE, each model).
  std::uint64_t stream_seed(std::uint64_t stream) const;
};

/// Throws ConfigError unless every input path needed by `command` exists.
void require_paths(const RunConfig& config, std::string_view command);

}  // namespace bugdestiny::app
