// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include "bugdestiny/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "bugdestiny/csv.hpp"
#include "bugdestiny/error.hpp"
#include "bugdestiny/random.hpp"

namespace bugdestiny {

std::vector<std::string> FeatureConfig::column_names() const {
  std::vector<std::string> names = {"emotion", "emotionality", "priority"};
  if (use_topic) {
    for (std::size_t t = 0; t < topic_count; ++t) names.push_back("topic_" + std::to_string(t));
  }
  return names;
}

FeatureVector build_features(const SentimentScore& score, int priority, std::optional<int> topic,
                             const FeatureConfig& config) {
  if (topic.has_value() != config.use_topic) {
    throw ConfigError(config.use_topic ? "topic feature enabled but no topic given"
                                       : "topic given but the topic feature is disabled");
  }
  FeatureVector v;
  v.reserve(config.width());
  v.push_back(config.emotion_encoding == EmotionEncoding::SignedValue
                  ? score.emotion_value
                  : (score.emotion_class == EmotionClass::Positive ? 1.0 : -1.0));
  v.push_back(score.emotionality);
  v.push_back(static_cast<double>(priority));
  if (config.use_topic) {
    if (*topic < 0 || static_cast<std::size_t>(*topic) >= config.topic_count) {
      throw DataError("topic id " + std::to_string(*topic) + " out of range for k=" +
                      std::to_string(config.topic_count));
    }
    for (std::size_t t = 0; t < config.topic_count; ++t) {
      v.push_back(static_cast<std::size_t>(*topic) == t ? 1.0 : 0.0);
    }
  }
  return v;
}

Standardizer::Standardizer(std::vector<double> mean, std::vector<double> scale)
    : mean_(std::move(mean)), scale_(std::move(scale)) {
  if (mean_.size() != scale_.size()) throw ConfigError("standardizer: mean/scale size mismatch");
}

Standardizer Standardizer::fit(std::span<const FeatureVector> rows, std::size_t columns) {
  if (rows.empty()) throw DataError("cannot standardize an empty training set");
  const double n = static_cast<double>(rows.size());
  std::vector<double> mean(columns, 0.0);
  std::vector<double> scale(columns, 0.0);
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < columns; ++j) mean[j] += r.at(j);
  }
  for (double& m : mean) m /= n;
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < columns; ++j) scale[j] += (r[j] - mean[j]) * (r[j] - mean[j]);
  }
  for (double& s : scale) {
    s = std::sqrt(s / n);
    if (!(s > 0.0)) s = 1.0;
  }
  return Standardizer(std::move(mean), std::move(scale));
}

void Standardizer::apply(FeatureVector& row) const {
  for (std::size_t j = 0; j < mean_.size(); ++j) row.at(j) = (row[j] - mean_[j]) / scale_[j];
}

void Standardizer::apply(std::span<FeatureVector> rows) const {
  for (auto& r : rows) apply(r);
}

SmoteResult smote_oversample(std::vector<LabeledRow> rows, const SmoteOptions& options) {
  SmoteResult out;
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < rows.size(); ++i) by_class[rows[i].label].push_back(i);
  std::size_t majority = 0;
  for (const auto& [label, members] : by_class) majority = std::max(majority, members.size());

  Rng rng(options.seed);
  for (const auto& [label, members] : by_class) {
    const std::size_t needed = majority - members.size();
    if (needed == 0) continue;
    if (members.size() == 1) {
      out.warnings.push_back("class " + std::to_string(label) +
                             " has a single member; duplicating it instead of interpolating");
      for (std::size_t j = 0; j < needed; ++j) rows.push_back(rows[members[0]]);
      out.synthetic += needed;
      continue;
    }
    const std::size_t k = std::min(options.k_neighbors, members.size() - 1);
    const std::size_t cols = std::min(options.interpolated_columns, rows[members[0]].x.size());
    std::map<std::size_t, std::vector<std::size_t>> neighbour_cache;
    const auto neighbours = [&](std::size_t base) -> const std::vector<std::size_t>& {
      auto it = neighbour_cache.find(base);
      if (it != neighbour_cache.end()) return it->second;
      std::vector<std::pair<double, std::size_t>> d;
      d.reserve(members.size() - 1);
      const auto& xb = rows[base].x;
      for (std::size_t m : members) {
        if (m == base) continue;
        double sq = 0.0;
        for (std::size_t j = 0; j < cols; ++j) {
          const double diff = rows[m].x[j] - xb[j];
          sq += diff * diff;
        }
        d.emplace_back(sq, m);
      }
      std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k), d.end());
      std::vector<std::size_t> nn(k);
      for (std::size_t j = 0; j < k; ++j) nn[j] = d[j].second;
      return neighbour_cache.emplace(base, std::move(nn)).first->second;
    };
    for (std::size_t j = 0; j < needed; ++j) {
      const std::size_t base = members[rng.below(members.size())];
      const auto& nn = neighbours(base);
      const std::size_t other = nn[rng.below(nn.size())];
      const double u = rng.uniform_closed();
      LabeledRow synth = rows[base];
      for (std::size_t c = 0; c < cols; ++c) {
        synth.x[c] = rows[base].x[c] + u * (rows[other].x[c] - rows[base].x[c]);
      }
      rows.push_back(std::move(synth));
      ++out.synthetic;
    }
  }
  out.rows = std::move(rows);
  return out;
}

std::vector<double> balanced_class_weights(std::span<const int> labels, std::size_t classes) {
  std::vector<double> count(classes, 0.0);
  for (int l : labels) {
    if (l < 0 || static_cast<std::size_t>(l) >= classes) throw DataError("class label out of range");
    count[static_cast<std::size_t>(l)] += 1.0;
  }
  const double n = static_cast<double>(labels.size());
  std::vector<double> w(classes, 0.0);
  for (std::size_t c = 0; c < classes; ++c) {
    w[c] = count[c] > 0.0 ? n / (static_cast<double>(classes) * count[c]) : 0.0;
  }
  return w;
}

void write_feature_table(std::ostream& out, const FeatureConfig& config, std::span<const LabeledRow> rows,
                         const std::string& class_column, std::span<const std::string> class_names,
                         std::span<const std::string> ids) {
  const bool with_ids = !ids.empty();
  if (with_ids && ids.size() != rows.size()) throw ConfigError("feature table: one id per row required");
  if (with_ids) out << "id,";
  for (const auto& name : config.column_names()) out << name << ',';
  out << class_column << '\n';
  char buf[40];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (with_ids) out << csv::escape(ids[i]) << ',';
    for (double v : rows[i].x) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << buf << ',';
    }
    const int label = rows[i].label;
    if (label >= 0 && static_cast<std::size_t>(label) < class_names.size()) {
      out << csv::escape(class_names[static_cast<std::size_t>(label)]) << '\n';
    } else {
      out << label << '\n';
    }
  }
}

}  // namespace bugdestiny
