// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bugdestiny/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App cli{"Write a deterministic synthetic bug tracker export and a matching sentiment lexicon."};
  bugdestiny::SyntheticCorpusOptions options;
  std::string corpus_path, lexicon_path;
  cli.add_option("--reports", options.reports, "Number of valid reports")->capture_default_str();
  cli.add_option("--seed", options.seed, "Random seed")->capture_default_str();
  cli.add_option("--corrupt-rows", options.corrupt_rows, "Extra rows with broken timestamps")->capture_default_str();
  cli.add_option("--corpus", corpus_path, "Output CSV path")->required();
  cli.add_option("--lexicon", lexicon_path, "Output lexicon path");
  CLI11_PARSE(cli, argc, argv);

  std::ofstream corpus(corpus_path, std::ios::binary);
  if (!corpus) {
    std::cerr << "bugdestiny-synth: cannot write " << corpus_path << "\n";
    return 1;
  }
  bugdestiny::write_synthetic_corpus(corpus, options);
  if (!lexicon_path.empty()) {
    std::ofstream lexicon(lexicon_path, std::ios::binary);
    if (!lexicon) {
      std::cerr << "bugdestiny-synth: cannot write " << lexicon_path << "\n";
      return 1;
    }
    bugdestiny::write_synthetic_lexicon(lexicon);
  }
  return 0;
}
