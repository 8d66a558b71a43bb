// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bugdestiny/textprep.hpp"

namespace bugdestiny {

struct Polarity {
  double pos = 0.0;
  double neg = 0.0;
};

struct LexiconLoadReport {
  std::size_t lines = 0;
  std::size_t synsets = 0;
  std::size_t malformed_lines = 0;
  std::size_t multiword_terms_skipped = 0;
};

/// Word form -> mean (positive, negative) score over every sense in which
/// the form occurs. Parsed from the SentiWordNet 3.0 text format:
///
///   POS <tab> ID <tab> PosScore <tab> NegScore <tab> SynsetTerms <tab> Gloss
///
/// where SynsetTerms is a space-separated list of "word#sense". Lookups are
/// case-insensitive. A second index keyed by Porter stem aggregates every
/// sense of every form sharing that stem.
class SentimentLexicon {
 public:
  /// Throws DataError when no entry survives parsing.
  static SentimentLexicon parse(std::istream& in, LexiconLoadReport* report = nullptr);
  static SentimentLexicon load(const std::filesystem::path& path, LexiconLoadReport* report = nullptr);

  /// Each entry counts as one sense.
  static SentimentLexicon from_entries(const std::vector<std::pair<std::string, Polarity>>& entries);

  const Polarity* find_form(std::string_view word) const;
  const Polarity* find_stem(std::string_view stem) const;
  bool contains(std::string_view word) const { return find_form(word) != nullptr; }

  std::size_t entry_count() const { return forms_.size(); }
  const std::map<std::string, Polarity, std::less<>>& forms() const { return forms_; }

 private:
  struct Accumulator {
    double pos = 0.0;
    double neg = 0.0;
    std::size_t senses = 0;
  };
  static SentimentLexicon finish(const std::map<std::string, Accumulator, std::less<>>& by_form);

  std::map<std::string, Polarity, std::less<>> forms_;
  std::map<std::string, Polarity, std::less<>> stems_;
};

enum class EmotionClass : std::uint8_t { Positive, Negative };

std::string_view to_string(EmotionClass c);

struct SentimentScore {
  double pos_score = 0.0;
  double neg_score = 0.0;
  double emotion_value = 0.0;  // pos - neg
  EmotionClass emotion_class = EmotionClass::Positive;
  double emotionality = 0.0;   // pos + neg
  std::size_t matched_tokens = 0;
};

/// Builds the derived fields from summed polarities. A tie counts as POSITIVE.
SentimentScore make_score(double pos_sum, double neg_sum, std::size_t matched);

/// Sums lexicon polarities over the stream. Stemmed streams look tokens up
/// in the stem index first; every stream then falls back to the surface
/// (unnormalized) token in the word-form index.
SentimentScore score_document(const TokenStream& stream, const SentimentLexicon& lexicon);

}  // namespace bugdestiny
