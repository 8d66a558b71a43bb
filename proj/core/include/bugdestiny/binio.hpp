// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bugdestiny::binio {

/// CRC-32 (IEEE 802.3 polynomial, as used by zlib and gzip).
std::uint32_t crc32(std::span<const std::uint8_t> bytes);

/// Little-endian append-only byte buffer.
class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f64(double v);
  void raw(std::string_view bytes);
  /// u32 length prefix followed by the bytes.
  void str(std::string_view s);
  void f64s(std::span<const double> values);

  const std::vector<std::uint8_t>& bytes() const { return buf_; }

  /// Appends the CRC-32 of everything written so far.
  void seal();

 private:
  std::vector<std::uint8_t> buf_;
};

/// Bounds-checked little-endian reader. Every read past the end throws
/// FormatError; nothing is ever returned from a short buffer.
class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  double f64();
  std::string raw(std::size_t n);
  std::string str();
  std::vector<double> f64s(std::size_t n);

  std::size_t remaining() const { return bytes_.size() - pos_; }
  bool at_end() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const;

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// Validates the framing shared by every versioned file format in the
/// project: `magic` (e.g. "BDMODEL/1") at the start, CRC-32 trailer at the
/// end. Returns the payload between the two. A file carrying the same family
/// prefix but a different version raises a version error naming both.
std::span<const std::uint8_t> open_sealed(std::span<const std::uint8_t> file,
                                          std::string_view magic,
                                          std::string_view what);

/// 64-bit FNV-1a. Used for digests recorded in manifests.
std::uint64_t fnv1a64(std::string_view data,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

}  // namespace bugdestiny::binio
