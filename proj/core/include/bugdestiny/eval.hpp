// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bugdestiny {

/// Rows are true labels, columns predicted labels, both in `classes` order.
struct ConfusionMatrix {
  std::vector<std::string> classes;
  std::vector<std::uint64_t> counts;  // n x n, row-major

  std::size_t size() const { return classes.size(); }
  std::uint64_t at(std::size_t truth, std::size_t predicted) const { return counts[truth * size() + predicted]; }
  std::uint64_t total() const;
};

/// Labels are indices into `classes`; an index out of range throws DataError.
ConfusionMatrix confusion(std::span<const int> truth, std::span<const int> predicted,
                          std::vector<std::string> classes);
/// Labels are names; a name missing from `classes` throws DataError naming it.
ConfusionMatrix confusion(std::span<const std::string> truth, std::span<const std::string> predicted,
                          std::vector<std::string> classes);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;  // true instances of the class
};

/// Per-class metrics use 0/0 = 0. Weighted metrics are sum_i (T_i / T) * m_i
/// with T_i the support of class i and T the total.
struct ClassificationReport {
  std::vector<std::string> classes;
  std::vector<ClassMetrics> per_class;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  std::uint64_t total = 0;
};

/// Throws DataError when the matrix is empty.
ClassificationReport classification_report(const ConfusionMatrix& cm);

struct RegressionReport {
  std::size_t n = 0;
  double mae = 0.0;
  double mse = 0.0;
  std::optional<double> r2;  // absent when the true values have zero variance or n < 2
};

RegressionReport regression_report(std::span<const double> truth, std::span<const double> predicted);

/// "MLP (Emotion, Emotionality, Priority, Predicted Topic) Weighted"
std::string classification_row_label(std::string_view model, bool use_topic, bool balanced);
/// "CNN (Full Dataset)", "Linear Regression (Short)"
std::string regression_row_label(std::string_view model, std::string_view subset);

struct ClassificationRow {
  std::string label;
  ClassificationReport report;
};

struct RegressionRow {
  std::string label;
  RegressionReport report;
};

/// Plain-text tables with a title line and left-aligned model column.
/// Metrics are printed with `decimals` places; regression errors are rounded
/// to whole hours with thousands separators.
std::string format_classification_table(std::string_view title, std::span<const ClassificationRow> rows,
                                        int decimals = 4);
std::string format_regression_table(std::string_view title, std::span<const RegressionRow> rows);
std::string format_confusion_matrix(const ConfusionMatrix& cm);

/// 1234567.4 -> "1,234,567"
std::string thousands(double value);

}  // namespace bugdestiny
