// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#pragma once

#include <string>
#include <string_view>

namespace bugdestiny {

/// The original Porter (1980) suffix-stripping algorithm, steps 1a-5b, with
/// no later extensions. Input is expected to be lowercase ASCII.
std::string porter_stem(std::string_view word);

}  // namespace bugdestiny
