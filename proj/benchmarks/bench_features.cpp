// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include <benchmark/benchmark.h>

#include <vector>

#include "bugdestiny/features.hpp"
#include "bugdestiny/random.hpp"

namespace {

using namespace bugdestiny;

// Oversampling a 9:1 binary train split with the default 9-column layout.
void BM_Smote(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(12);
  std::vector<LabeledRow> rows;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x(9);
    for (double& v : x) v = rng.normal();
    rows.push_back({std::move(x), i % 10 == 0 ? 1 : 0});
  }
  SmoteOptions opt;
  opt.interpolated_columns = 9;
  for (auto _ : state) benchmark::DoNotOptimize(smote_oversample(rows, opt));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_Smote)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace
