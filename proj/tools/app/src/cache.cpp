// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include "bugdestiny/app/cache.hpp"

#include "bugdestiny/binio.hpp"
#include "bugdestiny/error.hpp"

namespace bugdestiny::app {

namespace {

constexpr std::string_view kMagic = "BDCORP/1";
constexpr std::uint64_t kMaxReports = std::uint64_t{1} << 28;

void put_stats(binio::Writer& w, const IngestStats& s) {
  for (std::size_t v : {s.rows_read, s.accepted, s.rejected_timestamp, s.rejected_order, s.rejected_duplicate_id,
                        s.rejected_short_row, s.missing_priority, s.unknown_resolution}) {
    w.u64(v);
  }
}

IngestStats get_stats(binio::Reader& r) {
  IngestStats s;
  for (std::size_t* v : {&s.rows_read, &s.accepted, &s.rejected_timestamp, &s.rejected_order,
                         &s.rejected_duplicate_id, &s.rejected_short_row, &s.missing_priority,
                         &s.unknown_resolution}) {
    *v = r.u64();
  }
  return s;
}

}  // namespace

std::vector<std::uint8_t> encode_corpus_cache(const CorpusCache& cache) {
  binio::Writer w;
  w.raw(kMagic);
  w.str(cache.source_digest);
  put_stats(w, cache.stats);
  w.u64(cache.reports.size());
  for (const auto& b : cache.reports) {
    w.str(b.id);
    w.str(b.description);
    w.u8(b.priority ? static_cast<std::uint8_t>(*b.priority) : 0);
    w.i64(b.created_at.time_since_epoch().count());
    w.u8(b.resolved_at.has_value());
    w.i64(b.resolved_at ? b.resolved_at->time_since_epoch().count() : 0);
    w.u8(b.resolution ? static_cast<std::uint8_t>(*b.resolution) + 1 : 0);
    w.str(b.status);
  }
  w.seal();
  return w.bytes();
}

CorpusCache decode_corpus_cache(std::span<const std::uint8_t> bytes) {
  binio::Reader r(binio::open_sealed(bytes, kMagic, "corpus cache"));
  CorpusCache c;
  c.source_digest = r.str();
  c.stats = get_stats(r);
  const std::uint64_t n = r.u64();
  if (n > kMaxReports) throw FormatError("corpus cache: implausible report count");
  c.reports.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    BugReport b;
    b.id = r.str();
    b.description = r.str();
    const auto p = r.u8();
    if (p > 5) throw FormatError("corpus cache: bad priority");
    if (p != 0) b.priority = p;
    b.created_at = Timestamp(std::chrono::seconds(r.i64()));
    const bool resolved = r.u8() != 0;
    const auto resolved_at = r.i64();
    if (resolved) b.resolved_at = Timestamp(std::chrono::seconds(resolved_at));
    const auto res = r.u8();
    if (res > kAllResolutions.size()) throw FormatError("corpus cache: bad resolution code");
    if (res != 0) b.resolution = kAllResolutions[res - 1];
    b.status = r.str();
    c.reports.push_back(std::move(b));
  }
  if (!r.at_end()) throw FormatError("corpus cache: trailing bytes");
  return c;
}

void save_corpus_cache(const CorpusCache& cache, const std::filesystem::path& path) {
  binio::write_file(path, encode_corpus_cache(cache));
}

CorpusCache load_corpus_cache(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw DataError("corpus cache not found: " + path.string() + " (run 'bugdestiny ingest' first)");
  }
  return decode_corpus_cache(binio::read_file(path));
}

}  // namespace bugdestiny::app
