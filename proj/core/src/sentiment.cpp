// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include "bugdestiny/sentiment.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "bugdestiny/error.hpp"

namespace bugdestiny {
namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

bool parse_score(std::string_view s, double& out) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && out >= 0.0 && out <= 1.0;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool blank(std::string_view s) {
  return s.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

SentimentLexicon SentimentLexicon::parse(std::istream& in, LexiconLoadReport* report) {
  LexiconLoadReport local;
  LexiconLoadReport& rep = report ? *report : local;
  rep = {};
  std::map<std::string, Accumulator, std::less<>> by_form;
  std::string line;
  while (std::getline(in, line)) {
    ++rep.lines;
    if (blank(line) || line.front() == '#') continue;
    const auto cols = split(line, '\t');
    double pos = 0.0;
    double neg = 0.0;
    if (cols.size() < 5 || cols[0].empty() || !parse_score(cols[2], pos) || !parse_score(cols[3], neg) ||
        pos + neg > 1.0 + 1e-9) {
      ++rep.malformed_lines;
      continue;
    }
    std::vector<std::string> words;
    bool ok = true;
    for (auto term : split(cols[4], ' ')) {
      if (term.empty()) continue;
      const auto hash = term.rfind('#');
      if (hash == std::string_view::npos || hash == 0) {
        ok = false;
        break;
      }
      const auto word = term.substr(0, hash);
      if (word.find('_') != std::string_view::npos) {
        ++rep.multiword_terms_skipped;
        continue;
      }
      words.push_back(lower(word));
    }
    if (!ok) {
      ++rep.malformed_lines;
      continue;
    }
    ++rep.synsets;
    for (auto& w : words) {
      auto& acc = by_form[w];
      acc.pos += pos;
      acc.neg += neg;
      ++acc.senses;
    }
  }
  return finish(by_form);
}

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& path, LexiconLoadReport* report) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read lexicon file " + path.string());
  return parse(in, report);
}

SentimentLexicon SentimentLexicon::from_entries(const std::vector<std::pair<std::string, Polarity>>& entries) {
  std::map<std::string, Accumulator, std::less<>> by_form;
  for (const auto& [word, p] : entries) {
    auto& acc = by_form[lower(word)];
    acc.pos += p.pos;
    acc.neg += p.neg;
    ++acc.senses;
  }
  return finish(by_form);
}

SentimentLexicon SentimentLexicon::finish(const std::map<std::string, Accumulator, std::less<>>& by_form) {
  if (by_form.empty()) throw DataError("sentiment lexicon has zero entries");
  SentimentLexicon lex;
  std::map<std::string, Accumulator, std::less<>> by_stem;
  for (const auto& [word, acc] : by_form) {
    const double n = static_cast<double>(acc.senses);
    lex.forms_.emplace(word, Polarity{acc.pos / n, acc.neg / n});
    auto& s = by_stem[stem_to_fixed_point(word)];
    s.pos += acc.pos;
    s.neg += acc.neg;
    s.senses += acc.senses;
  }
  for (const auto& [stem, acc] : by_stem) {
    const double n = static_cast<double>(acc.senses);
    lex.stems_.emplace(stem, Polarity{acc.pos / n, acc.neg / n});
  }
  return lex;
}

const Polarity* SentimentLexicon::find_form(std::string_view word) const {
  auto it = forms_.find(word);
  if (it == forms_.end()) {
    const bool has_upper = std::any_of(word.begin(), word.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
    if (!has_upper) return nullptr;
    it = forms_.find(lower(word));
    if (it == forms_.end()) return nullptr;
  }
  return &it->second;
}

const Polarity* SentimentLexicon::find_stem(std::string_view stem) const {
  const auto it = stems_.find(stem);
  return it == stems_.end() ? nullptr : &it->second;
}

std::string_view to_string(EmotionClass c) { return c == EmotionClass::Positive ? "POSITIVE" : "NEGATIVE"; }

SentimentScore make_score(double pos_sum, double neg_sum, std::size_t matched) {
  SentimentScore s;
  s.pos_score = pos_sum;
  s.neg_score = neg_sum;
  s.emotion_value = pos_sum - neg_sum;
  s.emotionality = pos_sum + neg_sum;
  s.emotion_class = s.emotion_value >= 0.0 ? EmotionClass::Positive : EmotionClass::Negative;
  s.matched_tokens = matched;
  return s;
}

SentimentScore score_document(const TokenStream& stream, const SentimentLexicon& lexicon) {
  // Contributions are summed in sorted order so that the score is exactly
  // invariant under token permutation.
  std::vector<double> pos;
  std::vector<double> neg;
  for (std::size_t i = 0; i < stream.tokens.size(); ++i) {
    const Polarity* p = stream.normalization == Normalization::PorterStem
                            ? lexicon.find_stem(stream.tokens[i])
                            : lexicon.find_form(stream.tokens[i]);
    if (!p && i < stream.surface.size()) p = lexicon.find_form(stream.surface[i]);
    if (!p) continue;
    pos.push_back(p->pos);
    neg.push_back(p->neg);
  }
  const auto sorted_sum = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  };
  const std::size_t matched = pos.size();
  return make_score(sorted_sum(pos), sorted_sum(neg), matched);
}

}  // namespace bugdestiny
