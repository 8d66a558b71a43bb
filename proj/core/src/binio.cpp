// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include "bugdestiny/binio.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>

#include "bugdestiny/error.hpp"

namespace bugdestiny::binio {

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks to stay portable.
  constexpr std::size_t kChunk = 1u << 30;
  for (std::size_t off = 0; off < bytes.size(); off += kChunk) {
    const std::size_t n = std::min(kChunk, bytes.size() - off);
    crc = ::crc32(crc, bytes.data() + off, static_cast<uInt>(n));
  }
  return static_cast<std::uint32_t>(crc);
}

void Writer::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void Writer::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void Writer::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void Writer::raw(std::string_view bytes) { buf_.insert(buf_.end(), bytes.begin(), bytes.end()); }

void Writer::str(std::string_view s) {
  u32(static_cast<std::uint32_t>(s.size()));
  raw(s);
}

void Writer::f64s(std::span<const double> values) {
  for (double v : values) f64(v);
}

void Writer::seal() { u32(crc32(buf_)); }

void Reader::need(std::size_t n) const {
  if (n > remaining()) {
    throw FormatError("unexpected end of data (need " + std::to_string(n) + " bytes, " +
                      std::to_string(remaining()) + " left)");
  }
}

std::uint8_t Reader::u8() {
  need(1);
  return bytes_[pos_++];
}

std::uint32_t Reader::u32() {
  need(4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_++]) << (8 * i);
  return v;
}

std::uint64_t Reader::u64() {
  need(8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_++]) << (8 * i);
  return v;
}

double Reader::f64() { return std::bit_cast<double>(u64()); }

std::string Reader::raw(std::size_t n) {
  need(n);
  std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
  pos_ += n;
  return s;
}

std::string Reader::str() { return raw(u32()); }

std::vector<double> Reader::f64s(std::size_t n) {
  need(n * 8);
  std::vector<double> out(n);
  for (auto& v : out) v = f64();
  return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed for " + path.string());
}

std::span<const std::uint8_t> open_sealed(std::span<const std::uint8_t> file,
                                          std::string_view magic, std::string_view what) {
  const auto slash = magic.find('/');
  const std::string_view family = magic.substr(0, slash + 1);
  auto starts_with = [&](std::string_view prefix) {
    return file.size() >= prefix.size() &&
           std::memcmp(file.data(), prefix.data(), prefix.size()) == 0;
  };
  if (!starts_with(family)) {
    throw FormatError(std::string(what) + ": not a " + std::string(magic) + " file");
  }
  if (!starts_with(magic)) {
    std::size_t end = family.size();
    while (end < file.size() && end < family.size() + 8 && file[end] >= '0' && file[end] <= '9') ++end;
    const std::string found(reinterpret_cast<const char*>(file.data()), end);
    throw FormatError(std::string(what) + ": unsupported version " + found + " (this build reads " +
                      std::string(magic) + ")");
  }
  if (file.size() < magic.size() + 4) {
    throw FormatError(std::string(what) + ": checksum error (file truncated)");
  }
  const auto body = file.first(file.size() - 4);
  Reader trailer(file.subspan(file.size() - 4));
  if (crc32(body) != trailer.u32()) {
    throw FormatError(std::string(what) + ": checksum error (file corrupt or truncated)");
  }
  return body.subspan(magic.size());
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace bugdestiny::binio
