// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace bugdestiny {

/// UTC instant with one-second resolution.
using Timestamp = std::chrono::sys_seconds;

enum class TimestampFormat { Iso8601, EpochSeconds };

/// Accepts "YYYY-MM-DD", "YYYY-MM-DD[T| ]HH:MM[:SS[.fff]]" with an optional
/// zone suffix "Z", "+HH:MM", "+HHMM", "+HH" or " -0400" (space separated).
/// A missing zone means UTC. Returns nullopt on anything else.
std::optional<Timestamp> parse_iso8601(std::string_view text);

/// Integer or decimal seconds since the Unix epoch; fractions are truncated.
std::optional<Timestamp> parse_epoch_seconds(std::string_view text);

std::optional<Timestamp> parse_timestamp(std::string_view text, TimestampFormat format);

/// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_iso8601(Timestamp t);

/// (later - earlier) in hours as a real number.
inline double hours_between(Timestamp earlier, Timestamp later) {
  return static_cast<double>((later - earlier).count()) / 3600.0;
}

}  // namespace bugdestiny
