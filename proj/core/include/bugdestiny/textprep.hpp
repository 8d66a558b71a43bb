// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace bugdestiny {

using StopWordSet = std::unordered_set<std::string>;

/// The standard 127-word English list shipped in data/stopwords_en.txt.
const StopWordSet& builtin_stopwords();

/// One word per line, UTF-8, '#' starts a comment. Words are lowercased.
StopWordSet parse_stopwords(std::istream& in);
StopWordSet load_stopwords(const std::filesystem::path& path);

enum class Normalization {
  PorterStem,  // default; iterated to a fixed point
  Lemma,       // dictionary-validated suffix detachment
  None,
};

struct PrepConfig {
  /// Null means builtin_stopwords().
  std::shared_ptr<const StopWordSet> stopwords;
  Normalization normalization = Normalization::PorterStem;
  std::size_t min_token_length = 2;
  /// Optional spelling corrector applied to every raw token. Unset = no-op.
  std::function<std::string(std::string_view)> spelling_corrector;
  /// Known word forms for Normalization::Lemma (typically the sentiment
  /// lexicon). Without it lemmatization leaves tokens unchanged.
  std::function<bool(std::string_view)> lemma_dictionary;

  const StopWordSet& stop_words() const { return stopwords ? *stopwords : builtin_stopwords(); }
};

/// Normalized tokens of one document. `surface[i]` is the lowercase token
/// that `tokens[i]` was normalized from.
struct TokenStream {
  std::string report_id;
  std::vector<std::string> tokens;
  std::vector<std::string> surface;
  Normalization normalization = Normalization::PorterStem;

  bool empty() const { return tokens.empty(); }
  std::size_t size() const { return tokens.size(); }
};

/// Lowercases ASCII letters and splits on every non-alphanumeric byte.
std::vector<std::string> tokenize(std::string_view text);

/// Porter stem applied until it no longer changes the token.
std::string stem_to_fixed_point(std::string_view token);

/// WordNet-style detachment: the token itself if known, else the first
/// known candidate from the noun/verb/adjective suffix rules, else the token.
std::string lemmatize(std::string_view token, const std::function<bool(std::string_view)>& known);

/// lowercase -> tokenize -> (spelling) -> drop stop words, pure numbers and
/// short tokens -> normalize -> the same drops on the normalized form.
TokenStream preprocess(std::string_view text, const PrepConfig& config, std::string report_id = {});

}  // namespace bugdestiny
