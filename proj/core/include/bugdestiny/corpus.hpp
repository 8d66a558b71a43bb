// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bugdestiny/timestamp.hpp"

namespace bugdestiny {

/// Final resolution label of a bug report (its "destiny").
enum class Resolution : std::uint8_t {
  Fixed,
  WontFix,
  Duplicate,
  WorksForMe,
  NDuplicate,
  Invalid,
  NotEclipse,
};

inline constexpr std::array<Resolution, 7> kAllResolutions = {
    Resolution::Fixed,      Resolution::WontFix, Resolution::Duplicate, Resolution::WorksForMe,
    Resolution::NDuplicate, Resolution::Invalid, Resolution::NotEclipse};

/// Canonical upper-case name ("FIXED", "WONTFIX", "NOT_ECLIPSE", ...).
std::string_view to_string(Resolution r);

/// Case-insensitive; accepts the canonical names plus common tracker
/// spellings ("WONT_FIX", "WORKS_FOR_ME", "NOT ECLIPSE").
std::optional<Resolution> parse_resolution(std::string_view text);

/// Priority P1 (most severe) .. P5. Accepts "P3", "p3" or "3".
std::optional<int> parse_priority(std::string_view text);

/// Priority used when a report carries none.
inline constexpr int kImputedPriority = 3;

struct BugReport {
  std::string id;
  std::string description;
  std::optional<int> priority;  // 1..5
  Timestamp created_at;
  std::optional<Timestamp> resolved_at;
  std::optional<Resolution> resolution;
  std::string status;

  int effective_priority() const { return priority.value_or(kImputedPriority); }
  bool priority_imputed() const { return !priority.has_value(); }
};

/// Total order used everywhere reports are sorted: created_at ascending,
/// ties broken by ascending id (numeric when both ids are all digits).
bool chronological_less(const BugReport& a, const BugReport& b);
bool id_less(std::string_view a, std::string_view b);

/// Column names of a tabular export. Defaults match the bughub
/// EclipsePlatform CSV layout.
struct ColumnMapping {
  std::string id = "Issue_id";
  std::string description = "Description";
  std::string priority = "Priority";
  std::string created = "Created_time";
  std::string resolved = "Resolved_time";
  std::string resolution = "Resolution";
  std::string status = "Status";  // optional; empty disables
  char delimiter = ',';
  TimestampFormat timestamp_format = TimestampFormat::Iso8601;
};

struct IngestStats {
  std::size_t rows_read = 0;
  std::size_t accepted = 0;
  std::size_t rejected_timestamp = 0;      // unparseable created/resolved
  std::size_t rejected_order = 0;          // resolved before created
  std::size_t rejected_duplicate_id = 0;
  std::size_t rejected_short_row = 0;      // fewer fields than the header
  std::size_t missing_priority = 0;        // accepted, priority imputed
  std::size_t unknown_resolution = 0;      // accepted, label treated as absent

  std::size_t rejected() const {
    return rejected_timestamp + rejected_order + rejected_duplicate_id + rejected_short_row;
  }
};

struct ParsedCorpus {
  std::vector<BugReport> reports;  // sorted by chronological_less
  IngestStats stats;
};

/// Parses a header-first delimited export. A mapped column absent from the
/// header raises ConfigError; an empty input raises DataError.
ParsedCorpus parse_corpus(std::istream& in, const ColumnMapping& mapping);
ParsedCorpus parse_corpus(const std::filesystem::path& path, const ColumnMapping& mapping);

enum class TimeClass : std::uint8_t { Short, Long };
enum class Destiny : std::uint8_t { Fixed, NotFixed };

std::string_view to_string(TimeClass c);

struct LabeledExample {
  std::string report_id;
  double duration_hours = 0.0;
  TimeClass time_class = TimeClass::Short;
  Destiny destiny_binary = Destiny::NotFixed;
  Resolution destiny_label = Resolution::Fixed;
};

struct DerivedExamples {
  std::vector<LabeledExample> examples;  // same order as the input reports
  std::size_t skipped = 0;               // missing resolved_at or resolution
};

DerivedExamples derive_examples(std::span<const BugReport> reports);

enum class QuantileBasis { TrainOnly, Whole };

/// Nearest-rank quantile: the ceil(fraction * N)-th smallest value.
double nearest_rank_quantile(std::span<const double> values, double fraction);

struct TimeClassAssignment {
  double threshold_hours = 0.0;
  std::size_t short_count = 0;
  std::size_t long_count = 0;
  std::vector<std::string> warnings;
};

/// Sets time_class on every example: SHORT iff duration <= threshold, where
/// threshold is the nearest-rank `fraction` quantile of the basis durations.
/// With QuantileBasis::TrainOnly `train_ids` selects the basis; with Whole
/// the basis is every example and `train_ids` is ignored.
TimeClassAssignment assign_time_classes(std::span<LabeledExample> examples, double fraction,
                                        QuantileBasis basis,
                                        std::span<const std::string> train_ids = {});

struct CorpusSplit {
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
  double short_long_threshold_hours = 0.0;
  std::set<Resolution> dropped_labels;
};

/// Oldest ceil(train_fraction * N) reports go to train. `reports` must be
/// sorted by chronological_less.
CorpusSplit chronological_split(std::span<const BugReport> reports, double train_fraction = 0.80);

struct PrunedDestiny {
  CorpusSplit split;                         // with dropped_labels filled in
  std::vector<LabeledExample> train;         // never filtered
  std::vector<LabeledExample> test;          // unseen labels removed
  std::size_t removed = 0;
};

/// Drops test examples whose destiny label never occurs in train. Used for
/// the destiny task only.
PrunedDestiny prune_unseen_labels(const CorpusSplit& split, std::span<const LabeledExample> examples);

/// Examples whose resolution is FIXED, order preserved. Raises DataError
/// when none remain.
std::vector<LabeledExample> filter_fixed(std::span<const LabeledExample> examples);

/// Partitions examples by split membership, preserving order.
struct SplitExamples {
  std::vector<LabeledExample> train;
  std::vector<LabeledExample> test;
};
SplitExamples partition_examples(const CorpusSplit& split, std::span<const LabeledExample> examples);

}  // namespace bugdestiny
