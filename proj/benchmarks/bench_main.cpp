// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include <benchmark/benchmark.h>

BENCHMARK_MAIN();
