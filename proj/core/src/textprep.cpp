// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include "bugdestiny/textprep.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <utility>

#include "bugdestiny/error.hpp"
#include "bugdestiny/porter_stemmer.hpp"

namespace bugdestiny {
namespace {

constexpr std::string_view kBuiltinStopwords =
#include "builtin_stopwords.inc"
    ;

bool is_alnum(unsigned char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool pure_number(std::string_view t) {
  return std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool keep(std::string_view t, const PrepConfig& config, const StopWordSet& stop) {
  return t.size() >= config.min_token_length && !pure_number(t) && !stop.contains(std::string(t));
}

}  // namespace

const StopWordSet& builtin_stopwords() {
  static const StopWordSet words = [] {
    std::istringstream in{std::string(kBuiltinStopwords)};
    return parse_stopwords(in);
  }();
  return words;
}

StopWordSet parse_stopwords(std::istream& in) {
  StopWordSet out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string word;
    for (char c : line) {
      if (c == ' ' || c == '\t' || c == '\r') continue;
      word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (!word.empty()) out.insert(std::move(word));
  }
  return out;
}

StopWordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read stop-word file " + path.string());
  return parse_stopwords(in);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : text) {
    if (is_alnum(c)) {
      cur.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string stem_to_fixed_point(std::string_view token) {
  std::string cur(token);
  for (int i = 0; i < 8; ++i) {
    std::string next = porter_stem(cur);
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

std::string lemmatize(std::string_view token, const std::function<bool(std::string_view)>& known) {
  if (!known || known(token)) return std::string(token);
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 18> kDetach = {{
      // nouns
      {"ses", "s"}, {"xes", "x"}, {"zes", "z"}, {"ches", "ch"}, {"shes", "sh"}, {"men", "man"},
      {"ies", "y"}, {"s", ""},
      // verbs
      {"es", "e"}, {"es", ""}, {"ed", "e"}, {"ed", ""}, {"ing", "e"}, {"ing", ""},
      // adjectives
      {"er", ""}, {"est", ""}, {"er", "e"}, {"est", "e"},
  }};
  for (const auto& [suffix, with] : kDetach) {
    if (token.size() > suffix.size() && token.ends_with(suffix)) {
      std::string candidate(token.substr(0, token.size() - suffix.size()));
      candidate.append(with);
      if (known(candidate)) return candidate;
    }
  }
  return std::string(token);
}

TokenStream preprocess(std::string_view text, const PrepConfig& config, std::string report_id) {
  TokenStream out;
  out.report_id = std::move(report_id);
  out.normalization = config.normalization;
  const StopWordSet& stop = config.stop_words();
  for (auto& raw : tokenize(text)) {
    std::string token = config.spelling_corrector ? config.spelling_corrector(raw) : std::move(raw);
    if (!keep(token, config, stop)) continue;
    std::string norm;
    switch (config.normalization) {
      case Normalization::PorterStem: norm = stem_to_fixed_point(token); break;
      case Normalization::Lemma: norm = lemmatize(token, config.lemma_dictionary); break;
      case Normalization::None: norm = token; break;
    }
    if (!keep(norm, config, stop)) continue;
    out.tokens.push_back(std::move(norm));
    out.surface.push_back(std::move(token));
  }
  return out;
}

}  // namespace bugdestiny
