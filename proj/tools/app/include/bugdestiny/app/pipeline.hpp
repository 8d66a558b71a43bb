// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "bugdestiny/app/config.hpp"
#include "bugdestiny/corpus.hpp"
#include "bugdestiny/eval.hpp"
#include "bugdestiny/features.hpp"
#include "bugdestiny/learn.hpp"
#include "bugdestiny/sentiment.hpp"
#include "bugdestiny/textprep.hpp"
#include "bugdestiny/topics.hpp"

namespace bugdestiny::app {

/// Text preprocessing settings shared by training and prediction.
PrepConfig make_prep_config(const RunConfig& config, const SentimentLexicon& lexicon);

/// Everything derived from the cached reports that every task shares.
struct Workspace {
  std::vector<BugReport> reports;  // chronological
  std::unordered_map<std::string, std::size_t> index;  // id -> position in reports
  CorpusSplit split;
  std::unordered_set<std::string> train_ids;
  std::vector<LabeledExample> examples;  // labeled reports, chronological
  std::size_t unlabeled = 0;
  std::vector<TokenStream> streams;     // per report
  std::vector<SentimentScore> scores;   // per report
  std::optional<TopicModel> topics;
  std::vector<int> topic_of;  // per report, filled by fit_workspace_topics

  const BugReport& report(const LabeledExample& e) const { return reports[index.at(e.report_id)]; }
  bool in_train(const LabeledExample& e) const { return train_ids.contains(e.report_id); }
};

Workspace prepare_workspace(const RunConfig& config, std::vector<BugReport> reports, const SentimentLexicon& lexicon);

/// Fits the topic model on the training reports and assigns every report.
void fit_workspace_topics(Workspace& ws, const RunConfig& config);

/// Builds the embedding backend named by the config (external vectors when
/// paths.vectors is set).
EmbeddingBackend make_embedding_backend(const RunConfig& config);

FeatureVector featurize(const SentimentScore& score, int priority, std::optional<int> topic,
                        const FeatureConfig& features);
FeatureVector featurize(const Workspace& ws, const LabeledExample& e, const FeatureConfig& features);

struct ClassificationTask {
  Task task = Task::TimeToResolution;
  std::string title;
  std::vector<std::string> class_names;
  std::vector<LabeledExample> train;
  std::vector<LabeledExample> test;
  std::vector<int> train_labels;
  std::vector<int> test_labels;
  std::optional<double> threshold_hours;
  std::vector<std::string> notes;
};

/// TIME_TO_RESOLUTION, TIME_TO_FIX (FIXED reports, threshold recomputed on
/// them) or DESTINY (test labels unseen in train pruned).
ClassificationTask make_classification_task(const Workspace& ws, const RunConfig& config, Task task);

struct RegressionTask {
  std::string title;
  std::string slug;  // "numeric_time_resolution" or "numeric_time_fix"
  double threshold_hours = 0.0;
  std::vector<LabeledExample> examples;  // with time_class assigned
};

/// Duration regression over all labeled reports, or FIXED reports only.
RegressionTask make_regression_task(const Workspace& ws, const RunConfig& config, bool fixed_only);

/// Rows of `examples` that fall in `subset` (time class for SHORT/LONG).
std::vector<LabeledExample> select_subset(std::span<const LabeledExample> examples, Subset subset);

std::string model_display_name(ModelKind kind);
std::string subset_display_name(Subset subset);
std::string model_slug(ModelKind kind, bool use_topic, Balancing balancing);

ModelSpec make_model_spec(const RunConfig& config, ModelKind kind, std::size_t input_dim, OutputSpec output);

/// A trained model with everything needed to featurize new reports.
struct ModelBundle {
  TrainedModel model;
  FeatureConfig features;
  Standardizer standardizer;
  bool standardized = false;
  std::vector<std::string> class_names;  // empty for regressors
  Normalization normalization = Normalization::PorterStem;
  std::size_t min_token_length = 2;
  std::string topics_file;  // relative to the output directory; empty when unused

  FeatureVector prepare(FeatureVector row) const;
};

std::string encode_bundle_sidecar(const ModelBundle& bundle, const std::string& task, const std::string& label);
/// Reads `<model>.bdmodel` and its `<model>.json` sidecar.
ModelBundle load_bundle(const std::filesystem::path& model_path);
void save_bundle(const ModelBundle& bundle, const std::filesystem::path& model_path, const std::string& task,
                 const std::string& label);

struct ClassificationOutcome {
  ClassificationRow row;
  std::string slug;
  ModelKind kind = ModelKind::Mlp;
  bool use_topic = false;
  Balancing balancing = Balancing::None;
  ConfusionMatrix confusion;
  std::vector<int> predicted;  // per test example
  ModelBundle bundle;
  std::size_t train_rows = 0;      // after balancing
  std::size_t synthetic_rows = 0;  // SMOTE
  std::vector<std::string> warnings;
};

ClassificationOutcome run_classifier(const Workspace& ws, const RunConfig& config, const ClassificationTask& task,
                                     ModelKind kind, bool use_topic, Balancing balancing);

struct RegressionOutcome {
  RegressionRow row;
  std::string slug;
  ModelKind kind = ModelKind::LinReg;
  Subset subset = Subset::Full;
  std::vector<std::string> test_ids;
  std::vector<double> truth;
  std::vector<double> predicted;
  ModelBundle bundle;
  std::size_t train_rows = 0;
};

RegressionOutcome run_regressor(const Workspace& ws, const RunConfig& config, const RegressionTask& task,
                                ModelKind kind, Subset subset);

struct CorrelationData {
  std::vector<double> train_x, train_hours, test_x, test_hours;
};

/// Emotionality against time-to-resolution hours over the chronological split.
CorrelationData make_correlation_data(const Workspace& ws);

}  // namespace bugdestiny::app
