// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include <catch_amalgamated.hpp>

#include <map>
#include <sstream>

#include "bugdestiny/corpus.hpp"
#include "bugdestiny/sentiment.hpp"
#include "bugdestiny/synthetic.hpp"

using namespace bugdestiny;

namespace {

std::string corpus_text(const SyntheticCorpusOptions& opt) {
  std::ostringstream out;
  write_synthetic_corpus(out, opt);
  return out.str();
}

ParsedCorpus parse(const std::string& text) {
  std::istringstream in(text);
  return parse_corpus(in, ColumnMapping{});
}

}  // namespace

TEST_CASE("synthetic corpus is deterministic") {
  SyntheticCorpusOptions opt;
  opt.reports = 300;
  CHECK(corpus_text(opt) == corpus_text(opt));
  auto other = opt;
  other.seed = 43;
  CHECK(corpus_text(opt) != corpus_text(other));
}

TEST_CASE("synthetic corpus parses through ingestion") {
  SyntheticCorpusOptions opt;
  opt.reports = 3000;
  opt.corrupt_rows = 10;
  const auto parsed = parse(corpus_text(opt));
  CHECK(parsed.stats.rows_read == 3010);
  CHECK(parsed.stats.accepted == 3000);
  CHECK(parsed.stats.rejected_timestamp == 5);
  CHECK(parsed.stats.rejected_order == 5);
  CHECK(parsed.stats.missing_priority > 0);
  CHECK(parsed.stats.missing_priority < 100);

  const auto derived = derive_examples(parsed.reports);
  CHECK(derived.skipped > 0);
  CHECK(derived.skipped < 150);

  std::map<Resolution, std::size_t> labels;
  for (const auto& e : derived.examples) {
    ++labels[e.destiny_label];
    CHECK(e.duration_hours >= 0.0);
  }
  CHECK(labels[Resolution::Fixed] > derived.examples.size() / 3);
  CHECK(labels.size() >= 5);
}

TEST_CASE("late-only label is unseen in train") {
  SyntheticCorpusOptions opt;
  opt.reports = 4000;
  const auto parsed = parse(corpus_text(opt));
  const auto split = chronological_split(parsed.reports);
  const auto derived = derive_examples(parsed.reports);
  const auto pruned = prune_unseen_labels(split, derived.examples);
  CHECK(pruned.split.dropped_labels.contains(Resolution::NotEclipse));
  CHECK(pruned.removed > 0);
}

TEST_CASE("synthetic lexicon parses") {
  std::ostringstream out;
  write_synthetic_lexicon(out);
  std::istringstream in(out.str());
  LexiconLoadReport rep;
  const auto lex = SentimentLexicon::parse(in, &rep);
  CHECK(rep.malformed_lines == 0);
  CHECK(rep.multiword_terms_skipped == 1);
  CHECK(lex.entry_count() > 20);
  const auto* crash = lex.find_form("crash");
  REQUIRE(crash);
  CHECK(crash->neg > crash->pos);
  const auto* good = lex.find_form("good");
  REQUIRE(good);
  CHECK(good->pos > good->neg);
}
