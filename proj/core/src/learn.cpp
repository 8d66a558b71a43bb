// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include "bugdestiny/learn.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <sstream>

#include "bugdestiny/binio.hpp"
#include "bugdestiny/error.hpp"
#include "bugdestiny/eval.hpp"
#include "bugdestiny/random.hpp"
#include "network.hpp"

namespace bugdestiny {
namespace {

using detail::Network;
using detail::Trace;

double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void softmax(std::span<const double> z, std::vector<double>& p) {
  const double top = *std::max_element(z.begin(), z.end());
  p.resize(z.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) sum += (p[i] = std::exp(z[i] - top));
  for (double& v : p) v /= sum;
}

bool is_class_output(const ModelSpec& spec) { return spec.output.kind != OutputKind::Scalar; }

/// Loss of one row given the network output; writes dLoss/dz into `dz`.
double head_loss(const ModelSpec& spec, std::span<const double> z, double y, std::vector<double>& dz,
                 std::vector<double>& scratch) {
  dz.assign(z.size(), 0.0);
  switch (spec.output.kind) {
    case OutputKind::Binary:
      dz[0] = sigmoid(z[0]) - y;
      return softplus(z[0]) - y * z[0];
    case OutputKind::Multiclass: {
      const auto label = static_cast<std::size_t>(y);
      softmax(z, scratch);
      const double top = *std::max_element(z.begin(), z.end());
      double sum = 0.0;
      for (double v : z) sum += std::exp(v - top);
      for (std::size_t i = 0; i < z.size(); ++i) dz[i] = scratch[i] - (i == label ? 1.0 : 0.0);
      return top + std::log(sum) - z[label];
    }
    case OutputKind::Scalar:
      break;
  }
  const double r = z[0] - y;
  if (spec.kind == ModelKind::Svr) {
    if (std::abs(r) <= spec.svr_epsilon) return 0.0;
    dz[0] = r > 0.0 ? 1.0 : -1.0;
    return std::abs(r) - spec.svr_epsilon;
  }
  dz[0] = 2.0 * r;
  return r * r;
}

void check_targets(const ModelSpec& spec, std::span<const double> y) {
  for (double t : y) {
    if (!std::isfinite(t)) throw DataError("training target is not finite");
    if (is_class_output(spec)) {
      if (t != std::floor(t) || t < 0.0 || t >= static_cast<double>(spec.output.classes)) {
        throw DataError("class target " + std::to_string(t) + " outside [0, " +
                        std::to_string(spec.output.classes) + ")");
      }
    }
  }
}

/// Shared evaluator for full-data objectives and mini-batches.
class Objective {
 public:
  Objective(const ModelSpec& spec, const Network& net, std::span<const double> class_weights)
      : spec_(spec), net_(net), class_weights_(class_weights), mask_(net.weight_mask()) {
    if (!class_weights_.empty() && class_weights_.size() != spec.output.classes) {
      throw ConfigError("class weights have " + std::to_string(class_weights_.size()) + " entries for " +
                        std::to_string(spec.output.classes) + " classes");
    }
  }

  /// Weighted mean loss over `rows` plus the L2 term; accumulates the
  /// gradient into `grad` (zeroed first) when non-empty.
  double operator()(std::span<const double> w, const TrainingData& data, std::span<const double> y,
                    std::span<const std::size_t> rows, std::span<double> grad) {
    const bool want_grad = !grad.empty();
    if (want_grad) std::fill(grad.begin(), grad.end(), 0.0);
    double weight_sum = 0.0;
    for (std::size_t r : rows) weight_sum += row_weight(y[r]);
    double loss = 0.0;
    for (std::size_t r : rows) {
      net_.forward(w, data.row(r), trace_);
      const double rw = row_weight(y[r]) / weight_sum;
      loss += rw * head_loss(spec_, trace_.act.back(), y[r], dz_, scratch_);
      if (want_grad) {
        for (double& d : dz_) d *= rw;
        net_.backward(w, trace_, dz_, grad);
      }
    }
    if (spec_.kind == ModelKind::Svr && spec_.svr_lambda > 0.0) {
      double sq = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (!mask_[i]) continue;
        sq += w[i] * w[i];
        if (want_grad) grad[i] += spec_.svr_lambda * w[i];
      }
      loss += 0.5 * spec_.svr_lambda * sq;
    }
    return loss;
  }

 private:
  double row_weight(double y) const {
    if (class_weights_.empty() || !is_class_output(spec_)) return 1.0;
    return class_weights_[static_cast<std::size_t>(y)];
  }

  const ModelSpec& spec_;
  const Network& net_;
  std::span<const double> class_weights_;
  std::vector<bool> mask_;
  Trace trace_;
  std::vector<double> dz_;
  std::vector<double> scratch_;
};

std::string bytes_digest(const binio::Writer& w) {
  const auto& b = w.bytes();
  return binio::hex64(binio::fnv1a64(std::string_view(reinterpret_cast<const char*>(b.data()), b.size())));
}

}  // namespace

std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Mlp: return "MLP";
    case ModelKind::Cnn1d: return "CNN1D";
    case ModelKind::LinReg: return "LINREG";
    case ModelKind::LogReg: return "LOGREG";
    case ModelKind::Svr: return "SVR";
  }
  return "?";
}

void ModelSpec::validate() const {
  if (input_dim == 0) throw ConfigError("model input dimension must be positive");
  if (output.kind == OutputKind::Multiclass && output.classes < 2) {
    throw ConfigError("a multiclass output needs at least 2 classes");
  }
  if (output.kind == OutputKind::Binary && output.classes != 2) {
    throw ConfigError("a binary output has exactly 2 classes");
  }
  switch (kind) {
    case ModelKind::Mlp:
      for (std::size_t h : hidden) {
        if (h == 0) throw ConfigError("MLP hidden layer sizes must be positive");
      }
      break;
    case ModelKind::Cnn1d:
      if (conv.filters == 0 || conv.kernel == 0 || conv.stride == 0) {
        throw ConfigError("CNN1D filters, kernel and stride must be positive");
      }
      if (conv.kernel > input_dim) {
        throw ConfigError("CNN1D kernel " + std::to_string(conv.kernel) + " exceeds input length " +
                          std::to_string(input_dim));
      }
      break;
    case ModelKind::LinReg:
    case ModelKind::Svr:
      if (output.kind != OutputKind::Scalar) {
        throw ConfigError(std::string(to_string(kind)) + " requires a scalar output");
      }
      if (kind == ModelKind::Svr && (!(svr_epsilon >= 0.0) || !(svr_lambda >= 0.0))) {
        throw ConfigError("SVR epsilon and lambda must be non-negative");
      }
      break;
    case ModelKind::LogReg:
      if (output.kind == OutputKind::Scalar) throw ConfigError("LOGREG requires a class output");
      break;
  }
}

std::size_t ModelSpec::parameter_count() const { return detail::Network(*this).parameter_count(); }

void TrainConfig::validate() const {
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("batch size must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw ConfigError("learning rate must be > 0");
  if (optimizer == Optimizer::Adam) {
    if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0) || !(adam_epsilon > 0.0)) {
      throw ConfigError("Adam requires beta1, beta2 in [0, 1) and epsilon > 0");
    }
  }
  for (double w : class_weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("class weights must be positive and finite");
  }
}

std::string TrainConfig::digest() const {
  binio::Writer w;
  w.u64(epochs);
  w.u64(batch_size);
  w.f64(learning_rate);
  w.u8(optimizer == Optimizer::Adam ? 1 : 0);
  w.f64(beta1);
  w.f64(beta2);
  w.f64(adam_epsilon);
  w.u64(seed);
  w.u64(class_weights.size());
  w.f64s(class_weights);
  w.u8(inverse_sqrt_decay);
  w.u8(tail_average);
  w.u8(standardize_targets);
  return bytes_digest(w);
}

void TrainingData::add(std::span<const double> features, double target) {
  if (dim == 0 && x.empty()) dim = features.size();
  if (features.size() != dim) {
    throw DataError("row has " + std::to_string(features.size()) + " features; expected " + std::to_string(dim));
  }
  x.insert(x.end(), features.begin(), features.end());
  y.push_back(target);
}

std::string TrainingData::digest() const {
  binio::Writer w;
  w.u64(dim);
  w.u64(y.size());
  w.f64s(x);
  w.f64s(y);
  return bytes_digest(w);
}

TrainedModel::TrainedModel(ModelSpec spec, std::vector<double> weights, double target_offset, double target_scale)
    : spec_(std::move(spec)), weights_(std::move(weights)), target_offset_(target_offset), target_scale_(target_scale) {
  const std::size_t expected = spec_.parameter_count();
  if (weights_.size() != expected) {
    throw DataError("model has " + std::to_string(weights_.size()) + " weights; its spec needs " +
                    std::to_string(expected));
  }
}

std::vector<double> TrainedModel::forward(std::span<const double> row) const {
  if (row.size() != spec_.input_dim) {
    throw DataError("input row has " + std::to_string(row.size()) + " features; the model expects " +
                    std::to_string(spec_.input_dim));
  }
  const Network net(spec_);
  Trace trace;
  net.forward(weights_, row, trace);
  return trace.act.back();
}

std::vector<double> TrainedModel::predict_proba(std::span<const double> row) const {
  const auto z = forward(row);
  switch (spec_.output.kind) {
    case OutputKind::Binary: {
      const double p = sigmoid(z[0]);
      return {1.0 - p, p};
    }
    case OutputKind::Multiclass: {
      std::vector<double> p;
      softmax(z, p);
      return p;
    }
    case OutputKind::Scalar:
      break;
  }
  throw ConfigError("class probabilities requested from a regression model");
}

int TrainedModel::predict_class(std::span<const double> row) const {
  const auto p = predict_proba(row);
  return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

double TrainedModel::predict_value(std::span<const double> row, bool clamp) const {
  if (spec_.output.kind != OutputKind::Scalar) throw ConfigError("value requested from a classification model");
  const double v = forward(row)[0] * target_scale_ + target_offset_;
  return clamp ? std::max(v, 0.0) : v;
}

std::vector<double> TrainedModel::linear_coefficients() const {
  const Network net(spec_);
  if (net.layers().size() != 1 || net.output_units() != 1) {
    throw ConfigError("linear coefficients exist only for single-layer scalar models");
  }
  std::vector<double> out(weights_.begin(), weights_.end());
  for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i] *= target_scale_;
  out.back() = out.back() * target_scale_ + target_offset_;
  return out;
}

bool TrainedModel::operator==(const TrainedModel& o) const {
  const auto same_bits = [](const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
  };
  const ModelSpec& a = spec_;
  const ModelSpec& b = o.spec_;
  const bool spec_equal = a.kind == b.kind && a.input_dim == b.input_dim && a.hidden == b.hidden &&
                          a.conv.filters == b.conv.filters && a.conv.kernel == b.conv.kernel &&
                          a.conv.stride == b.conv.stride && a.output.kind == b.output.kind &&
                          a.output.classes == b.output.classes && a.svr_epsilon == b.svr_epsilon &&
                          a.svr_lambda == b.svr_lambda;
  return spec_equal && same_bits(weights_, o.weights_) && target_offset_ == o.target_offset_ &&
         target_scale_ == o.target_scale_ && manifest.config_digest == o.manifest.config_digest &&
         manifest.feature_digest == o.manifest.feature_digest && manifest.data_digest == o.manifest.data_digest &&
         manifest.epochs == o.manifest.epochs &&
         std::memcmp(&manifest.final_train_loss, &o.manifest.final_train_loss, sizeof(double)) == 0;
}

double objective(const ModelSpec& spec, std::span<const double> weights, const TrainingData& data,
                 std::span<const double> class_weights, std::vector<double>* gradient) {
  const Network net(spec);
  if (weights.size() != net.parameter_count()) throw DataError("weight vector does not match the model spec");
  if (data.dim != spec.input_dim) throw DataError("data width does not match the model input");
  if (data.rows() == 0) throw DataError("objective of an empty data set");
  Objective f(spec, net, class_weights);
  std::vector<std::size_t> rows(data.rows());
  std::iota(rows.begin(), rows.end(), 0);
  std::span<double> grad;
  if (gradient) {
    gradient->assign(weights.size(), 0.0);
    grad = *gradient;
  }
  return f(weights, data, data.y, rows, grad);
}

TrainedModel train(const ModelSpec& spec, const TrainConfig& config, const TrainingData& data) {
  spec.validate();
  config.validate();
  if (data.rows() < 2) throw DataError("training needs at least 2 rows");
  if (data.dim != spec.input_dim) {
    throw DataError("training rows have " + std::to_string(data.dim) + " features; the model expects " +
                    std::to_string(spec.input_dim));
  }
  check_targets(spec, data.y);

  // Regression targets are z-scored so one learning rate fits hours and days alike.
  double offset = 0.0, scale = 1.0;
  std::vector<double> y = data.y;
  if (!is_class_output(spec) && config.standardize_targets) {
    const double n = static_cast<double>(y.size());
    offset = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double var = 0.0;
    for (double t : y) var += (t - offset) * (t - offset);
    const double sd = std::sqrt(var / n);
    const double train_scale = sd > 0.0 ? sd : 1.0;
    for (double& t : y) t = (t - offset) / train_scale;
    // A constant target is predicted exactly: the network output is ignored.
    scale = sd > 0.0 ? sd : 0.0;
  }

  const Network net(spec);
  const std::size_t p = net.parameter_count();
  std::vector<double> w(p);
  Rng init_rng(derive_seed(config.seed, 0));
  net.init_he_uniform(w, init_rng);
  Rng order_rng(derive_seed(config.seed, 1));

  Objective f(spec, net, config.class_weights);
  std::vector<double> grad(p), m(p, 0.0), v(p, 0.0), avg;
  std::size_t averaged = 0;
  if (config.tail_average) avg.assign(p, 0.0);
  const std::size_t tail_start = config.epochs / 2;

  std::vector<std::size_t> order(data.rows());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> all = order;
  TrainManifest manifest;
  std::uint64_t step = 0;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    order_rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      const double loss = f(w, data, y, std::span<const std::size_t>(order).subspan(start, end - start), grad);
      if (!std::isfinite(loss)) {
        std::ostringstream msg;
        msg << "training loss became non-finite in epoch " << epoch + 1 << " (learning rate "
            << config.learning_rate << "); lower the learning rate or check the features for extreme values";
        throw DataError(msg.str());
      }
      ++step;
      double lr = config.learning_rate;
      if (config.inverse_sqrt_decay) lr /= std::sqrt(static_cast<double>(step));
      if (config.optimizer == Optimizer::Adam) {
        const double c1 = 1.0 - std::pow(config.beta1, static_cast<double>(step));
        const double c2 = 1.0 - std::pow(config.beta2, static_cast<double>(step));
        for (std::size_t i = 0; i < p; ++i) {
          m[i] = config.beta1 * m[i] + (1.0 - config.beta1) * grad[i];
          v[i] = config.beta2 * v[i] + (1.0 - config.beta2) * grad[i] * grad[i];
          w[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + config.adam_epsilon);
        }
      } else {
        for (std::size_t i = 0; i < p; ++i) w[i] -= lr * grad[i];
      }
      if (config.tail_average && epoch >= tail_start) {
        ++averaged;
        const double k = static_cast<double>(averaged);
        for (std::size_t i = 0; i < p; ++i) avg[i] += (w[i] - avg[i]) / k;
      }
    }
    if (config.record_history) manifest.loss_history.push_back(f(w, data, y, all, {}));
  }
  if (config.tail_average && averaged > 0) w = avg;

  manifest.final_train_loss = f(w, data, y, all, {});
  if (!std::isfinite(manifest.final_train_loss)) {
    throw DataError("final training loss is non-finite; lower the learning rate");
  }
  manifest.epochs = static_cast<std::uint32_t>(config.epochs);
  manifest.config_digest = config.digest();
  manifest.feature_digest = config.feature_digest;
  manifest.data_digest = data.digest();

  TrainedModel model(spec, std::move(w), offset, scale);
  model.manifest = std::move(manifest);
  return model;
}

GradientCheckResult gradient_check(const ModelSpec& spec, std::uint64_t seed, bool zero_inputs) {
  constexpr std::size_t kRows = 8;
  constexpr double kStep = 1e-5;
  constexpr double kFloor = 1e-7;

  spec.validate();
  const Network net(spec);
  Rng rng(seed);
  std::vector<double> w(net.parameter_count());
  net.init_he_uniform(w, rng);
  // Non-zero biases keep ReLU pre-activations away from the kink at 0.
  const auto mask = net.weight_mask();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!mask[i]) w[i] = rng.uniform(-0.5, 0.5);
  }

  TrainingData data;
  data.dim = spec.input_dim;
  std::vector<double> row(spec.input_dim);
  for (std::size_t r = 0; r < kRows; ++r) {
    for (double& x : row) x = zero_inputs ? 0.0 : rng.normal();
    double target = 0.0;
    switch (spec.output.kind) {
      case OutputKind::Binary: target = static_cast<double>(rng.below(2)); break;
      case OutputKind::Multiclass: target = static_cast<double>(rng.below(spec.output.classes)); break;
      case OutputKind::Scalar: target = rng.normal(); break;
    }
    data.add(row, target);
  }

  std::vector<double> analytic;
  objective(spec, w, data, {}, &analytic);

  GradientCheckResult result;
  result.parameters = w.size();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double keep = w[i];
    w[i] = keep + kStep;
    const double up = objective(spec, w, data);
    w[i] = keep - kStep;
    const double down = objective(spec, w, data);
    w[i] = keep;
    const double numeric = (up - down) / (2.0 * kStep);
    if (!std::isfinite(numeric) || !std::isfinite(analytic[i])) {
      result.finite = false;
      continue;
    }
    const double denom = std::max({std::abs(analytic[i]), std::abs(numeric), kFloor});
    result.max_relative_error = std::max(result.max_relative_error, std::abs(analytic[i] - numeric) / denom);
  }
  return result;
}

SvrOptions::SvrOptions() {
  train.optimizer = Optimizer::Sgd;
  train.learning_rate = 0.1;
  train.inverse_sqrt_decay = true;
  train.tail_average = true;
  train.epochs = 50;
  train.batch_size = 64;
}

SvrFit train_svr(std::span<const double> train_x, std::span<const double> train_hours,
                 std::span<const double> test_x, std::span<const double> test_hours, const SvrOptions& options) {
  if (train_x.size() != train_hours.size() || test_x.size() != test_hours.size()) {
    throw DataError("SVR inputs and targets differ in length");
  }
  if (train_x.size() < 2) throw DataError("SVR needs at least 2 training rows");

  const double n = static_cast<double>(train_x.size());
  const double mean = std::accumulate(train_x.begin(), train_x.end(), 0.0) / n;
  double var = 0.0;
  for (double x : train_x) var += (x - mean) * (x - mean);
  const double sd = std::sqrt(var / n);
  if (!(sd > 0.0)) {
    throw DataError("emotionality has zero variance on the training rows; the SVR slope is undefined");
  }

  // Fit on z-scored emotionality, then fold the scaling back into the weights.
  TrainingData data;
  data.dim = 1;
  for (std::size_t i = 0; i < train_x.size(); ++i) {
    const double z = (train_x[i] - mean) / sd;
    data.add(std::span<const double>(&z, 1), train_hours[i]);
  }
  ModelSpec spec;
  spec.kind = ModelKind::Svr;
  spec.input_dim = 1;
  spec.output = OutputSpec::scalar();
  spec.svr_epsilon = options.epsilon;
  spec.svr_lambda = options.lambda;
  const TrainedModel fitted = train(spec, options.train, data);

  const double w = fitted.weights()[0];
  const double b = fitted.weights()[1];
  TrainedModel model(spec, {w / sd, b - w * mean / sd}, fitted.target_offset(), fitted.target_scale());
  model.manifest = fitted.manifest;

  SvrFit out;
  const auto coef = model.linear_coefficients();
  out.slope = coef[0];
  out.intercept = coef[1];
  out.test_rows = test_x.size();
  if (!test_x.empty()) {
    std::vector<double> predicted;
    predicted.reserve(test_x.size());
    for (double x : test_x) predicted.push_back(model.predict_value(std::span<const double>(&x, 1), false));
    out.test_r2 = regression_report(test_hours, predicted).r2;
  }
  out.model = std::move(model);
  return out;
}

}  // namespace bugdestiny
