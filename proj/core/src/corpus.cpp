// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include "bugdestiny/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "bugdestiny/csv.hpp"
#include "bugdestiny/error.hpp"

namespace bugdestiny {
namespace {

std::string upper_alnum(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::size_t ceil_fraction(double fraction, std::size_t n) {
  // Guard against 0.8 * 10 landing a hair above 8.
  return static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
}

}  // namespace

std::string_view to_string(Resolution r) {
  switch (r) {
    case Resolution::Fixed: return "FIXED";
    case Resolution::WontFix: return "WONTFIX";
    case Resolution::Duplicate: return "DUPLICATE";
    case Resolution::WorksForMe: return "WORKSFORME";
    case Resolution::NDuplicate: return "NDUPLICATE";
    case Resolution::Invalid: return "INVALID";
    case Resolution::NotEclipse: return "NOT_ECLIPSE";
  }
  return "?";
}

std::optional<Resolution> parse_resolution(std::string_view text) {
  const std::string key = upper_alnum(text);
  if (key == "FIXED") return Resolution::Fixed;
  if (key == "WONTFIX") return Resolution::WontFix;
  if (key == "DUPLICATE") return Resolution::Duplicate;
  if (key == "WORKSFORME") return Resolution::WorksForMe;
  if (key == "NDUPLICATE") return Resolution::NDuplicate;
  if (key == "INVALID") return Resolution::Invalid;
  if (key == "NOTECLIPSE") return Resolution::NotEclipse;
  return std::nullopt;
}

std::optional<int> parse_priority(std::string_view text) {
  std::string_view s = trim(text);
  if (!s.empty() && (s.front() == 'P' || s.front() == 'p')) s.remove_prefix(1);
  if (s.size() == 1 && s[0] >= '1' && s[0] <= '5') return s[0] - '0';
  return std::nullopt;
}

std::string_view to_string(TimeClass c) { return c == TimeClass::Short ? "SHORT" : "LONG"; }

bool id_less(std::string_view a, std::string_view b) {
  if (all_digits(a) && all_digits(b)) {
    const auto strip = [](std::string_view s) {
      while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
      return s;
    };
    a = strip(a);
    b = strip(b);
    if (a.size() != b.size()) return a.size() < b.size();
  }
  return a < b;
}

bool chronological_less(const BugReport& a, const BugReport& b) {
  if (a.created_at != b.created_at) return a.created_at < b.created_at;
  return id_less(a.id, b.id);
}

ParsedCorpus parse_corpus(std::istream& in, const ColumnMapping& mapping) {
  csv::Reader reader(in, mapping.delimiter);
  std::vector<std::string> fields;
  if (!reader.next(fields) || (fields.size() == 1 && trim(fields[0]).empty())) {
    throw DataError("corpus is empty (no header row)");
  }
  if (!fields.empty() && fields[0].starts_with("\xEF\xBB\xBF")) fields[0].erase(0, 3);

  std::unordered_map<std::string, std::size_t> header;
  for (std::size_t i = 0; i < fields.size(); ++i) header.emplace(std::string(trim(fields[i])), i);

  const auto column = [&](const std::string& name, bool required) -> std::optional<std::size_t> {
    if (name.empty() && !required) return std::nullopt;
    const auto it = header.find(name);
    if (it == header.end()) {
      if (!required) return std::nullopt;
      throw ConfigError("mapped column '" + name + "' not found in corpus header");
    }
    return it->second;
  };
  const std::size_t c_id = *column(mapping.id, true);
  const std::size_t c_desc = *column(mapping.description, true);
  const std::size_t c_pri = *column(mapping.priority, true);
  const std::size_t c_created = *column(mapping.created, true);
  const std::size_t c_resolved = *column(mapping.resolved, true);
  const std::size_t c_resolution = *column(mapping.resolution, true);
  const auto c_status = column(mapping.status, false);
  const std::size_t needed = 1 + std::max({c_id, c_desc, c_pri, c_created, c_resolved, c_resolution,
                                           c_status.value_or(0)});

  ParsedCorpus out;
  IngestStats& stats = out.stats;
  std::unordered_set<std::string> seen;
  while (reader.next(fields)) {
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;  // blank line
    ++stats.rows_read;
    if (fields.size() < needed) {
      ++stats.rejected_short_row;
      continue;
    }
    BugReport r;
    r.id = std::string(trim(fields[c_id]));
    const auto created = parse_timestamp(fields[c_created], mapping.timestamp_format);
    if (!created) {
      ++stats.rejected_timestamp;
      continue;
    }
    r.created_at = *created;
    if (!trim(fields[c_resolved]).empty()) {
      const auto resolved = parse_timestamp(fields[c_resolved], mapping.timestamp_format);
      if (!resolved) {
        ++stats.rejected_timestamp;
        continue;
      }
      if (*resolved < r.created_at) {
        ++stats.rejected_order;
        continue;
      }
      r.resolved_at = *resolved;
    }
    if (!seen.insert(r.id).second) {
      ++stats.rejected_duplicate_id;
      continue;
    }
    r.description = std::move(fields[c_desc]);
    r.priority = parse_priority(fields[c_pri]);
    if (!r.priority) ++stats.missing_priority;
    if (!trim(fields[c_resolution]).empty()) {
      r.resolution = parse_resolution(fields[c_resolution]);
      if (!r.resolution) ++stats.unknown_resolution;
    }
    if (c_status) r.status = std::string(trim(fields[*c_status]));
    out.reports.push_back(std::move(r));
  }
  if (stats.rows_read == 0) throw DataError("corpus has a header but no records");
  stats.accepted = out.reports.size();
  std::sort(out.reports.begin(), out.reports.end(), chronological_less);
  return out;
}

ParsedCorpus parse_corpus(const std::filesystem::path& path, const ColumnMapping& mapping) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open corpus file " + path.string());
  return parse_corpus(in, mapping);
}

DerivedExamples derive_examples(std::span<const BugReport> reports) {
  DerivedExamples out;
  out.examples.reserve(reports.size());
  for (const auto& r : reports) {
    if (!r.resolved_at || !r.resolution) {
      ++out.skipped;
      continue;
    }
    LabeledExample e;
    e.report_id = r.id;
    e.duration_hours = hours_between(r.created_at, *r.resolved_at);
    e.destiny_label = *r.resolution;
    e.destiny_binary = *r.resolution == Resolution::Fixed ? Destiny::Fixed : Destiny::NotFixed;
    out.examples.push_back(std::move(e));
  }
  return out;
}

double nearest_rank_quantile(std::span<const double> values, double fraction) {
  if (values.empty()) throw DataError("quantile of an empty duration set");
  if (!(fraction > 0.0 && fraction < 1.0)) throw ConfigError("quantile fraction must lie in (0, 1)");
  std::vector<double> sorted(values.begin(), values.end());
  const std::size_t rank = std::max<std::size_t>(1, ceil_fraction(fraction, sorted.size()));
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1), sorted.end());
  return sorted[rank - 1];
}

TimeClassAssignment assign_time_classes(std::span<LabeledExample> examples, double fraction,
                                        QuantileBasis basis, std::span<const std::string> train_ids) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw ConfigError("short fraction must lie in (0, 1)");
  if (examples.empty()) throw DataError("no examples to label");

  std::vector<double> basis_durations;
  if (basis == QuantileBasis::Whole) {
    for (const auto& e : examples) basis_durations.push_back(e.duration_hours);
  } else {
    const std::unordered_set<std::string_view> train(train_ids.begin(), train_ids.end());
    for (const auto& e : examples) {
      if (train.contains(e.report_id)) basis_durations.push_back(e.duration_hours);
    }
    if (basis_durations.empty()) {
      throw DataError("train-only quantile basis selected but no example belongs to the train split");
    }
  }

  TimeClassAssignment out;
  out.threshold_hours = nearest_rank_quantile(basis_durations, fraction);
  const auto [lo, hi] = std::minmax_element(basis_durations.begin(), basis_durations.end());
  if (*lo == *hi) {
    out.warnings.push_back("all basis durations are identical; every example is SHORT");
  }
  for (auto& e : examples) {
    e.time_class = e.duration_hours <= out.threshold_hours ? TimeClass::Short : TimeClass::Long;
    (e.time_class == TimeClass::Short ? out.short_count : out.long_count) += 1;
  }
  return out;
}

CorpusSplit chronological_split(std::span<const BugReport> reports, double train_fraction) {
  if (reports.size() < 2) throw DataError("a chronological split needs at least 2 reports");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train fraction must lie in (0, 1)");
  }
  if (!std::is_sorted(reports.begin(), reports.end(), chronological_less)) {
    throw DataError("reports must be sorted by creation time before splitting");
  }
  const std::size_t n_train =
      std::clamp<std::size_t>(ceil_fraction(train_fraction, reports.size()), 1, reports.size() - 1);
  CorpusSplit split;
  split.train_ids.reserve(n_train);
  split.test_ids.reserve(reports.size() - n_train);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    (i < n_train ? split.train_ids : split.test_ids).push_back(reports[i].id);
  }
  return split;
}

SplitExamples partition_examples(const CorpusSplit& split, std::span<const LabeledExample> examples) {
  const std::unordered_set<std::string_view> train(split.train_ids.begin(), split.train_ids.end());
  const std::unordered_set<std::string_view> test(split.test_ids.begin(), split.test_ids.end());
  SplitExamples out;
  for (const auto& e : examples) {
    if (train.contains(e.report_id)) {
      out.train.push_back(e);
    } else if (test.contains(e.report_id)) {
      out.test.push_back(e);
    }
  }
  return out;
}

PrunedDestiny prune_unseen_labels(const CorpusSplit& split, std::span<const LabeledExample> examples) {
  auto parts = partition_examples(split, examples);
  std::set<Resolution> train_labels;
  for (const auto& e : parts.train) train_labels.insert(e.destiny_label);

  PrunedDestiny out;
  out.split = split;
  out.train = std::move(parts.train);
  for (auto& e : parts.test) {
    if (train_labels.contains(e.destiny_label)) {
      out.test.push_back(std::move(e));
    } else {
      out.split.dropped_labels.insert(e.destiny_label);
      ++out.removed;
    }
  }
  return out;
}

std::vector<LabeledExample> filter_fixed(std::span<const LabeledExample> examples) {
  std::vector<LabeledExample> out;
  std::copy_if(examples.begin(), examples.end(), std::back_inserter(out),
               [](const LabeledExample& e) { return e.destiny_label == Resolution::Fixed; });
  if (out.empty()) throw DataError("no FIXED reports; the time-to-fix task has no data");
  return out;
}

}  // namespace bugdestiny
