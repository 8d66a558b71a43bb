// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#pragma once

#include <cstdint>
#include <iosfwd>

namespace bugdestiny {

/// Options for a deterministic, Eclipse-like bug tracker export. The output
/// uses the bughub column layout and "-0400" local timestamps so it flows
/// through the same ingestion path as a real export.
///
/// Durations are log-normal; their location depends on priority, component
/// and the sentiment words in the description, so the features carry a
/// learnable but weak signal. NOT_ECLIPSE only appears near the end of the
/// timeline, which exercises unseen-label pruning.
struct SyntheticCorpusOptions {
  std::size_t reports = 2000;
  std::uint64_t seed = 42;
  double missing_priority_rate = 0.01;
  double unresolved_rate = 0.02;
  /// Fraction of the timeline after which NOT_ECLIPSE may occur.
  double late_label_start = 0.97;
  /// Extra rows with unparseable or inverted timestamps, appended at the end.
  std::size_t corrupt_rows = 0;
};

void write_synthetic_corpus(std::ostream& out, const SyntheticCorpusOptions& options = {});

/// SentiWordNet-format lexicon covering the sentiment vocabulary used by
/// write_synthetic_corpus, plus neutral entries for common tracker terms.
void write_synthetic_lexicon(std::ostream& out);

}  // namespace bugdestiny
