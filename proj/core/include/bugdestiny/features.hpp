// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bugdestiny/sentiment.hpp"

namespace bugdestiny {

enum class EmotionEncoding {
  SignedValue,  // pos_score - neg_score
  Binary,       // +1 POSITIVE, -1 NEGATIVE
};

struct FeatureConfig {
  bool use_topic = false;
  std::size_t topic_count = 20;
  EmotionEncoding emotion_encoding = EmotionEncoding::SignedValue;
  bool standardize = true;

  /// Columns: emotion, emotionality, priority, then topic one-hot.
  std::size_t width() const { return kContinuousColumns + (use_topic ? topic_count : 0); }
  std::vector<std::string> column_names() const;

  static constexpr std::size_t kContinuousColumns = 3;
};

using FeatureVector = std::vector<double>;

/// Layout [emotion, emotionality, priority, one-hot(topic)...]. `topic` must
/// be present iff config.use_topic; a topic id >= topic_count throws.
FeatureVector build_features(const SentimentScore& score, int priority, std::optional<int> topic,
                             const FeatureConfig& config);

/// Z-score scaling of the continuous columns. Statistics come from training
/// rows only; the one-hot block passes through untouched. A constant column
/// is centred but not scaled.
class Standardizer {
 public:
  Standardizer() = default;
  Standardizer(std::vector<double> mean, std::vector<double> scale);

  static Standardizer fit(std::span<const FeatureVector> rows,
                          std::size_t columns = FeatureConfig::kContinuousColumns);

  void apply(FeatureVector& row) const;
  void apply(std::span<FeatureVector> rows) const;

  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& scale() const { return scale_; }

 private:
  std::vector<double> mean_;
  std::vector<double> scale_;
};

struct LabeledRow {
  FeatureVector x;
  int label = 0;
};

struct SmoteOptions {
  std::size_t k_neighbors = 5;
  std::uint64_t seed = 42;
  /// Leading columns that are interpolated; later columns (the topic
  /// one-hot block) are copied from the base row.
  std::size_t interpolated_columns = FeatureConfig::kContinuousColumns;
};

struct SmoteResult {
  std::vector<LabeledRow> rows;  // originals first, in input order, then synthetic rows
  std::size_t synthetic = 0;
  std::vector<std::string> warnings;
};

/// Oversamples every minority class up to the majority count. Each synthetic
/// row is x + u * (nn - x), u ~ U[0, 1], x a random member of the class and
/// nn one of its k nearest same-class neighbours (Euclidean over the
/// interpolated columns). Input that is already balanced is returned as is.
SmoteResult smote_oversample(std::vector<LabeledRow> rows, const SmoteOptions& options = {});

/// Per-class weights N / (C * n_c) for loss weighting.
std::vector<double> balanced_class_weights(std::span<const int> labels, std::size_t classes);

/// Header row of feature names followed by `class_columns`, one row per example.
void write_feature_table(std::ostream& out, const FeatureConfig& config, std::span<const LabeledRow> rows,
                         const std::string& class_column, std::span<const std::string> class_names,
                         std::span<const std::string> ids = {});

}  // namespace bugdestiny
