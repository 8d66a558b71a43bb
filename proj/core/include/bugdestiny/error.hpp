// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#pragma once

#include <stdexcept>
#include <string>

namespace bugdestiny {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration: missing columns, invalid options, unresolvable paths.
/// The command-line tool maps this to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input data that cannot support the requested computation.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A persisted file (model, topic model, corpus cache) that is corrupt,
/// truncated, or written by an incompatible version.
class FormatError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace bugdestiny
