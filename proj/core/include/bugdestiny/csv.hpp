// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace bugdestiny::csv {

/// Streaming reader for delimiter-separated text with RFC 4180 quoting:
/// quoted fields may contain the delimiter, doubled quotes, and newlines.
class Reader {
 public:
  explicit Reader(std::istream& in, char delimiter = ',') : in_(in), delim_(delimiter) {}

  /// Reads the next record into `fields`. Returns false at end of input.
  bool next(std::vector<std::string>& fields);

  /// 1-based physical line on which the last record started.
  std::size_t line() const { return record_line_; }

 private:
  std::istream& in_;
  char delim_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
};

/// Quotes a field when it contains the delimiter, a quote, or a newline.
std::string escape(std::string_view field, char delimiter = ',');

}  // namespace bugdestiny::csv
