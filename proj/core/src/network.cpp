// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include "network.hpp"

#include <algorithm>
#include <cmath>

#include "bugdestiny/error.hpp"

namespace bugdestiny::detail {

Network::Network(const ModelSpec& spec) {
  spec.validate();
  std::size_t offset = 0;
  const auto add_dense = [&](std::size_t in, std::size_t out, bool relu) {
    Layer l;
    l.type = Layer::Type::Dense;
    l.in = in;
    l.out = out;
    l.relu = relu;
    l.weight_offset = offset;
    l.weight_count = in * out;
    l.bias_offset = offset + l.weight_count;
    l.bias_count = out;
    offset += l.weight_count + l.bias_count;
    layers_.push_back(l);
  };

  const std::size_t units = spec.output.units();
  switch (spec.kind) {
    case ModelKind::Mlp: {
      std::size_t in = spec.input_dim;
      for (std::size_t h : spec.hidden) {
        add_dense(in, h, true);
        in = h;
      }
      add_dense(in, units, false);
      break;
    }
    case ModelKind::Cnn1d: {
      Layer l;
      l.type = Layer::Type::Conv1d;
      l.in = spec.input_dim;
      l.filters = spec.conv.filters;
      l.kernel = spec.conv.kernel;
      l.stride = spec.conv.stride;
      l.positions = (spec.input_dim - spec.conv.kernel) / spec.conv.stride + 1;
      l.out = l.filters * l.positions;
      l.relu = true;
      l.weight_offset = offset;
      l.weight_count = l.filters * l.kernel;
      l.bias_offset = offset + l.weight_count;
      l.bias_count = l.filters;
      offset += l.weight_count + l.bias_count;
      layers_.push_back(l);
      add_dense(l.out, units, false);
      break;
    }
    case ModelKind::LinReg:
    case ModelKind::LogReg:
    case ModelKind::Svr:
      add_dense(spec.input_dim, units, false);
      break;
  }
  params_ = offset;
}

void Network::init_he_uniform(std::span<double> params, Rng& rng) const {
  std::fill(params.begin(), params.end(), 0.0);
  for (const auto& l : layers_) {
    const double limit = std::sqrt(6.0 / static_cast<double>(l.fan_in()));
    for (std::size_t i = 0; i < l.weight_count; ++i) params[l.weight_offset + i] = rng.uniform(-limit, limit);
  }
}

std::vector<bool> Network::weight_mask() const {
  std::vector<bool> mask(params_, false);
  for (const auto& l : layers_) {
    for (std::size_t i = 0; i < l.weight_count; ++i) mask[l.weight_offset + i] = true;
  }
  return mask;
}

void Network::forward(std::span<const double> params, std::span<const double> x, Trace& t) const {
  const std::size_t n = layers_.size();
  t.act.resize(n + 1);
  t.pre.resize(n);
  t.act[0].assign(x.begin(), x.end());
  for (std::size_t li = 0; li < n; ++li) {
    const Layer& l = layers_[li];
    const auto& a = t.act[li];
    auto& z = t.pre[li];
    z.assign(l.out, 0.0);
    const double* w = params.data() + l.weight_offset;
    const double* b = params.data() + l.bias_offset;
    if (l.type == Layer::Type::Dense) {
      for (std::size_t o = 0; o < l.out; ++o) {
        const double* row = w + o * l.in;
        double s = b[o];
        for (std::size_t i = 0; i < l.in; ++i) s += row[i] * a[i];
        z[o] = s;
      }
    } else {
      for (std::size_t f = 0; f < l.filters; ++f) {
        const double* kern = w + f * l.kernel;
        for (std::size_t p = 0; p < l.positions; ++p) {
          const double* in = a.data() + p * l.stride;
          double s = b[f];
          for (std::size_t k = 0; k < l.kernel; ++k) s += kern[k] * in[k];
          z[f * l.positions + p] = s;
        }
      }
    }
    auto& out = t.act[li + 1];
    out = z;
    if (l.relu) {
      for (double& v : out) v = v > 0.0 ? v : 0.0;
    }
  }
}

void Network::backward(std::span<const double> params, Trace& t, std::span<const double> d_out,
                       std::span<double> grad) const {
  t.delta.assign(d_out.begin(), d_out.end());
  for (std::size_t li = layers_.size(); li-- > 0;) {
    const Layer& l = layers_[li];
    if (l.relu) {
      const auto& z = t.pre[li];
      for (std::size_t o = 0; o < l.out; ++o) {
        if (!(z[o] > 0.0)) t.delta[o] = 0.0;
      }
    }
    const auto& a = t.act[li];
    const double* w = params.data() + l.weight_offset;
    double* gw = grad.data() + l.weight_offset;
    double* gb = grad.data() + l.bias_offset;
    const bool need_input_grad = li > 0;
    if (need_input_grad) t.delta_in.assign(l.in, 0.0);
    if (l.type == Layer::Type::Dense) {
      for (std::size_t o = 0; o < l.out; ++o) {
        const double d = t.delta[o];
        if (d == 0.0) continue;
        gb[o] += d;
        double* grow = gw + o * l.in;
        const double* wrow = w + o * l.in;
        for (std::size_t i = 0; i < l.in; ++i) grow[i] += d * a[i];
        if (need_input_grad) {
          for (std::size_t i = 0; i < l.in; ++i) t.delta_in[i] += d * wrow[i];
        }
      }
    } else {
      for (std::size_t f = 0; f < l.filters; ++f) {
        for (std::size_t p = 0; p < l.positions; ++p) {
          const double d = t.delta[f * l.positions + p];
          if (d == 0.0) continue;
          gb[f] += d;
          for (std::size_t k = 0; k < l.kernel; ++k) {
            gw[f * l.kernel + k] += d * a[p * l.stride + k];
            if (need_input_grad) t.delta_in[p * l.stride + k] += d * w[f * l.kernel + k];
          }
        }
      }
    }
    if (need_input_grad) t.delta.swap(t.delta_in);
  }
}

}  // namespace bugdestiny::detail
