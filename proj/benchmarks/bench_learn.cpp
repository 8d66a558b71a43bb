// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include <benchmark/benchmark.h>

#include <vector>

#include "bugdestiny/learn.hpp"
#include "bugdestiny/random.hpp"

namespace {

using namespace bugdestiny;

TrainingData random_data(std::size_t rows, std::size_t dim, OutputSpec out) {
  Rng rng(3);
  TrainingData data;
  data.dim = dim;
  std::vector<double> x(dim);
  for (std::size_t r = 0; r < rows; ++r) {
    for (double& v : x) v = rng.normal();
    data.add(x, out.kind == OutputKind::Scalar ? rng.normal() : static_cast<double>(rng.below(out.classes)));
  }
  return data;
}

ModelSpec spec_for(ModelKind kind, OutputSpec out, std::size_t dim) {
  ModelSpec s;
  s.kind = kind;
  s.input_dim = dim;
  s.hidden = {32, 16};
  s.output = out;
  return s;
}

// One epoch over 4096 rows of the default 9-column feature layout.
void BM_TrainEpoch(benchmark::State& state, ModelKind kind, OutputSpec out) {
  const auto data = random_data(4096, 9, out);
  const auto spec = spec_for(kind, out, 9);
  TrainConfig tc;
  tc.epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(train(spec, tc, data));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * 4096));
}
BENCHMARK_CAPTURE(BM_TrainEpoch, mlp_binary, ModelKind::Mlp, OutputSpec::binary());
BENCHMARK_CAPTURE(BM_TrainEpoch, mlp_multiclass, ModelKind::Mlp, OutputSpec::multiclass(8));
BENCHMARK_CAPTURE(BM_TrainEpoch, cnn_binary, ModelKind::Cnn1d, OutputSpec::binary());
BENCHMARK_CAPTURE(BM_TrainEpoch, cnn_scalar, ModelKind::Cnn1d, OutputSpec::scalar());
BENCHMARK_CAPTURE(BM_TrainEpoch, linreg, ModelKind::LinReg, OutputSpec::scalar());

void BM_ObjectiveGradient(benchmark::State& state) {
  const auto out = OutputSpec::binary();
  const auto data = random_data(512, 9, out);
  const auto spec = spec_for(ModelKind::Mlp, out, 9);
  Rng rng(1);
  std::vector<double> w(spec.parameter_count());
  for (double& v : w) v = rng.uniform(-0.5, 0.5);
  std::vector<double> grad;
  for (auto _ : state) benchmark::DoNotOptimize(objective(spec, w, data, {}, &grad));
}
BENCHMARK(BM_ObjectiveGradient);

}  // namespace
