// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include <benchmark/benchmark.h>

#include <sstream>
#include <string>
#include <vector>

#include "bugdestiny/corpus.hpp"
#include "bugdestiny/sentiment.hpp"
#include "bugdestiny/synthetic.hpp"
#include "bugdestiny/textprep.hpp"

namespace {

using namespace bugdestiny;

std::vector<std::string> descriptions(std::size_t n) {
  std::ostringstream out;
  SyntheticCorpusOptions opt;
  opt.reports = n;
  write_synthetic_corpus(out, opt);
  std::istringstream in(out.str());
  std::vector<std::string> texts;
  for (auto& r : parse_corpus(in, ColumnMapping{}).reports) texts.push_back(std::move(r.description));
  return texts;
}

void BM_Preprocess(benchmark::State& state, Normalization norm) {
  const auto texts = descriptions(1000);
  PrepConfig config;
  config.normalization = norm;
  std::size_t bytes = 0;
  for (const auto& t : texts) bytes += t.size();
  for (auto _ : state) {
    for (const auto& t : texts) benchmark::DoNotOptimize(preprocess(t, config));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * texts.size()));
}
BENCHMARK_CAPTURE(BM_Preprocess, porter, Normalization::PorterStem);
BENCHMARK_CAPTURE(BM_Preprocess, none, Normalization::None);

void BM_ScoreDocument(benchmark::State& state) {
  const auto texts = descriptions(1000);
  std::stringstream lex;
  write_synthetic_lexicon(lex);
  const auto lexicon = SentimentLexicon::parse(lex);
  std::vector<TokenStream> streams;
  for (const auto& t : texts) streams.push_back(preprocess(t, PrepConfig{}));
  for (auto _ : state) {
    for (const auto& s : streams) benchmark::DoNotOptimize(score_document(s, lexicon));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * streams.size()));
}
BENCHMARK(BM_ScoreDocument);

}  // namespace
