// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "bugdestiny/corpus.hpp"

namespace bugdestiny::app {

/// Parsed reports plus ingestion counters, so later commands never re-read
/// the source export.
struct CorpusCache {
  std::vector<BugReport> reports;  // sorted by chronological_less
  IngestStats stats;
  std::string source_digest;  // FNV-1a of the source bytes and column mapping
};

/// "BDCORP/1" with a CRC-32 trailer.
std::vector<std::uint8_t> encode_corpus_cache(const CorpusCache& cache);
CorpusCache decode_corpus_cache(std::span<const std::uint8_t> bytes);
void save_corpus_cache(const CorpusCache& cache, const std::filesystem::path& path);
CorpusCache load_corpus_cache(const std::filesystem::path& path);

}  // namespace bugdestiny::app
