// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#pragma once

#include <span>
#include <vector>

#include "bugdestiny/learn.hpp"
#include "bugdestiny/random.hpp"

namespace bugdestiny::detail {

struct Layer {
  enum class Type { Dense, Conv1d } type = Type::Dense;
  std::size_t in = 0;   // input width
  std::size_t out = 0;  // output width
  bool relu = false;
  std::size_t weight_offset = 0;
  std::size_t bias_offset = 0;
  std::size_t weight_count = 0;
  std::size_t bias_count = 0;
  // Conv1d only. Output layout is filter-major: out[f * positions + p].
  std::size_t filters = 0;
  std::size_t kernel = 0;
  std::size_t stride = 1;
  std::size_t positions = 0;

  std::size_t fan_in() const { return type == Type::Dense ? in : kernel; }
};

/// Per-sample activations kept for the backward pass.
struct Trace {
  std::vector<std::vector<double>> act;  // act[0] = input, act[l + 1] = output of layer l
  std::vector<std::vector<double>> pre;  // pre-activation of layer l
  std::vector<double> delta;
  std::vector<double> delta_in;
};

/// Flat-parameter feed-forward network built from a ModelSpec.
class Network {
 public:
  explicit Network(const ModelSpec& spec);

  std::size_t parameter_count() const { return params_; }
  std::size_t output_units() const { return layers_.back().out; }
  const std::vector<Layer>& layers() const { return layers_; }

  /// He-uniform weights U(-sqrt(6 / fan_in), +sqrt(6 / fan_in)), zero biases.
  void init_he_uniform(std::span<double> params, Rng& rng) const;

  void forward(std::span<const double> params, std::span<const double> x, Trace& trace) const;

  /// Accumulates dLoss/dparams into `grad` given dLoss/doutput.
  void backward(std::span<const double> params, Trace& trace, std::span<const double> d_out,
                std::span<double> grad) const;

  /// True for parameters that are weights rather than biases.
  std::vector<bool> weight_mask() const;

 private:
  std::vector<Layer> layers_;
  std::size_t params_ = 0;
};

}  // namespace bugdestiny::detail
