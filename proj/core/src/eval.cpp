// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include "bugdestiny/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "bugdestiny/error.hpp"

namespace bugdestiny {
namespace {

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string render(std::string_view title, const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  const auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) out += "  ";
      const std::size_t pad = width[c] - cells[c].size();
      // Model names left-aligned, numbers right-aligned.
      if (c == 0) {
        out += cells[c] + std::string(pad, ' ');
      } else {
        out += std::string(pad, ' ') + cells[c];
      }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };
  std::size_t total = 0;
  for (std::size_t w : width) total += w;
  total += 2 * (width.size() - 1);

  std::string out(title);
  out += "\n" + line(header) + std::string(total, '-') + "\n";
  for (const auto& r : rows) out += line(r);
  return out;
}

}  // namespace

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

ConfusionMatrix confusion(std::span<const int> truth, std::span<const int> predicted,
                          std::vector<std::string> classes) {
  if (truth.size() != predicted.size()) {
    throw DataError("confusion: " + std::to_string(truth.size()) + " true labels but " +
                    std::to_string(predicted.size()) + " predictions");
  }
  ConfusionMatrix cm;
  const std::size_t n = classes.size();
  cm.classes = std::move(classes);
  cm.counts.assign(n * n, 0);
  const auto check = [n](int label) {
    if (label < 0 || static_cast<std::size_t>(label) >= n) {
      throw DataError("confusion: unknown label " + std::to_string(label));
    }
    return static_cast<std::size_t>(label);
  };
  for (std::size_t i = 0; i < truth.size(); ++i) cm.counts[check(truth[i]) * n + check(predicted[i])] += 1;
  return cm;
}

ConfusionMatrix confusion(std::span<const std::string> truth, std::span<const std::string> predicted,
                          std::vector<std::string> classes) {
  std::unordered_map<std::string_view, int> index;
  for (std::size_t i = 0; i < classes.size(); ++i) index.emplace(classes[i], static_cast<int>(i));
  const auto lookup = [&](const std::string& label) {
    const auto it = index.find(label);
    if (it == index.end()) throw DataError("confusion: unknown label '" + label + "'");
    return it->second;
  };
  std::vector<int> t, p;
  t.reserve(truth.size());
  p.reserve(predicted.size());
  for (const auto& s : truth) t.push_back(lookup(s));
  for (const auto& s : predicted) p.push_back(lookup(s));
  return confusion(t, p, std::move(classes));
}

ClassificationReport classification_report(const ConfusionMatrix& cm) {
  const std::size_t n = cm.size();
  const std::uint64_t total = cm.total();
  if (total == 0) throw DataError("classification report of an empty confusion matrix");

  ClassificationReport r;
  r.classes = cm.classes;
  r.total = total;
  r.per_class.resize(n);
  std::uint64_t trace = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t row = 0, col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      row += cm.at(i, j);
      col += cm.at(j, i);
    }
    const double tp = static_cast<double>(cm.at(i, i));
    trace += cm.at(i, i);
    ClassMetrics& m = r.per_class[i];
    m.support = row;
    m.precision = ratio(tp, static_cast<double>(col));
    m.recall = ratio(tp, static_cast<double>(row));
    m.f1 = ratio(2.0 * m.precision * m.recall, m.precision + m.recall);
  }
  const double t = static_cast<double>(total);
  for (const auto& m : r.per_class) {
    const double w = static_cast<double>(m.support) / t;
    r.precision += w * m.precision;
    r.f1 += w * m.f1;
  }
  // Support weights cancel the recall denominators, leaving trace / total.
  // Summing the weighted terms would only agree to rounding.
  r.accuracy = static_cast<double>(trace) / t;
  r.recall = r.accuracy;
  return r;
}

RegressionReport regression_report(std::span<const double> truth, std::span<const double> predicted) {
  if (truth.size() != predicted.size()) {
    throw DataError("regression report: " + std::to_string(truth.size()) + " true values but " +
                    std::to_string(predicted.size()) + " predictions");
  }
  RegressionReport r;
  r.n = truth.size();
  if (r.n == 0) throw DataError("regression report of an empty sample");
  double abs_sum = 0.0, sq_sum = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < r.n; ++i) {
    const double e = truth[i] - predicted[i];
    abs_sum += std::abs(e);
    sq_sum += e * e;
    mean += truth[i];
  }
  const double n = static_cast<double>(r.n);
  r.mae = abs_sum / n;
  r.mse = sq_sum / n;
  mean /= n;
  double ss_tot = 0.0;
  for (double y : truth) ss_tot += (y - mean) * (y - mean);
  if (r.n >= 2 && ss_tot > 0.0) r.r2 = 1.0 - sq_sum / ss_tot;
  return r;
}

std::string classification_row_label(std::string_view model, bool use_topic, bool balanced) {
  std::string s(model);
  s += use_topic ? " (Emotion, Emotionality, Priority, Predicted Topic)" : " (Emotion, Emotionality, Priority)";
  if (balanced) s += " Weighted";
  return s;
}

std::string regression_row_label(std::string_view model, std::string_view subset) {
  return std::string(model) + " (" + std::string(subset) + ")";
}

std::string thousands(double value) {
  const double rounded = std::round(value);
  if (!std::isfinite(rounded)) return fixed(value, 0);
  const bool negative = rounded < 0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.0f", std::abs(rounded));
  const std::string digits = buf;
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return negative ? "-" + out : out;
}

std::string format_classification_table(std::string_view title, std::span<const ClassificationRow> rows,
                                        int decimals) {
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    const auto& r = row.report;
    cells.push_back({row.label, fixed(r.precision, decimals), fixed(r.recall, decimals), fixed(r.f1, decimals),
                     fixed(r.accuracy, decimals)});
  }
  return render(title, {"Model", "Precision", "Recall", "F1 Score", "Accuracy"}, cells);
}

std::string format_regression_table(std::string_view title, std::span<const RegressionRow> rows) {
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    cells.push_back({row.label, thousands(row.report.mae), thousands(row.report.mse)});
  }
  return render(title, {"Model", "Mean Absolute Error", "Mean Squared Error"}, cells);
}

std::string format_confusion_matrix(const ConfusionMatrix& cm) {
  std::vector<std::string> header{"true \\ predicted"};
  header.insert(header.end(), cm.classes.begin(), cm.classes.end());
  std::vector<std::vector<std::string>> cells;
  for (std::size_t i = 0; i < cm.size(); ++i) {
    std::vector<std::string> row{cm.classes[i]};
    for (std::size_t j = 0; j < cm.size(); ++j) row.push_back(std::to_string(cm.at(i, j)));
    cells.push_back(std::move(row));
  }
  return render("Confusion matrix", header, cells);
}

}  // namespace bugdestiny
