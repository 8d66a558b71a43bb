// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "bugdestiny/eval.hpp"
#include "bugdestiny/random.hpp"

namespace {

using namespace bugdestiny;

void BM_ClassificationReport(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(9);
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < n; ++i) cm.classes.push_back("c" + std::to_string(i));
  cm.counts.resize(n * n);
  for (auto& c : cm.counts) c = rng.below(1000);
  for (auto _ : state) benchmark::DoNotOptimize(classification_report(cm));
}
BENCHMARK(BM_ClassificationReport)->Arg(2)->Arg(8)->Arg(32);

void BM_RegressionReport(benchmark::State& state) {
  Rng rng(4);
  std::vector<double> truth(17031), pred(17031);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    truth[i] = rng.uniform(0, 5000);
    pred[i] = truth[i] + rng.normal() * 100;
  }
  for (auto _ : state) benchmark::DoNotOptimize(regression_report(truth, pred));
}
BENCHMARK(BM_RegressionReport);

}  // namespace
