// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bugdestiny {

enum class ModelKind : std::uint32_t { Mlp = 0, Cnn1d = 1, LinReg = 2, LogReg = 3, Svr = 4 };
enum class OutputKind : std::uint32_t { Binary = 0, Multiclass = 1, Scalar = 2 };

std::string_view to_string(ModelKind k);

struct OutputSpec {
  OutputKind kind = OutputKind::Binary;
  std::size_t classes = 2;  // Binary: 2, Multiclass: n >= 2, Scalar: 1

  static OutputSpec binary() { return {OutputKind::Binary, 2}; }
  static OutputSpec multiclass(std::size_t n) { return {OutputKind::Multiclass, n}; }
  static OutputSpec scalar() { return {OutputKind::Scalar, 1}; }

  /// Width of the final layer: one logit for Binary, n for Multiclass.
  std::size_t units() const { return kind == OutputKind::Multiclass ? classes : 1; }
};

struct ConvSpec {
  std::size_t filters = 16;
  std::size_t kernel = 2;
  std::size_t stride = 1;
};

/// Architecture plus the objective it is trained on.
///
/// MLP:    input -> [dense + ReLU] per hidden size -> dense output
/// CNN1D:  the feature vector as a one-channel sequence -> conv + ReLU ->
///         flatten -> dense output
/// LINREG: dense scalar output, squared error
/// LOGREG: dense output with sigmoid (Binary) or softmax (Multiclass)
/// SVR:    dense scalar output, epsilon-insensitive loss + L2 on weights
struct ModelSpec {
  ModelKind kind = ModelKind::Mlp;
  std::size_t input_dim = 3;
  std::vector<std::size_t> hidden = {32, 16};
  ConvSpec conv;
  OutputSpec output = OutputSpec::binary();
  double svr_epsilon = 0.1;
  double svr_lambda = 1e-3;

  /// Throws ConfigError on an inconsistent spec (kernel longer than the
  /// input, LINREG with a class output, ...).
  void validate() const;
  std::size_t parameter_count() const;
};

enum class Optimizer { Sgd, Adam };

struct TrainConfig {
  std::size_t epochs = 50;
  std::size_t batch_size = 64;
  double learning_rate = 1e-3;
  Optimizer optimizer = Optimizer::Adam;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;
  std::uint64_t seed = 42;
  /// Per-class loss weights; empty means uniform.
  std::vector<double> class_weights;
  /// Step size learning_rate / sqrt(t); plain subgradient schedule.
  bool inverse_sqrt_decay = false;
  /// Return the average of the iterates over the second half of training.
  bool tail_average = false;
  /// Scalar outputs are trained on z-scored targets and rescaled on predict.
  bool standardize_targets = true;
  /// Record the full-data objective after every epoch.
  bool record_history = false;
  /// Digest of the feature configuration, copied into the manifest.
  std::string feature_digest;

  void validate() const;
  std::string digest() const;
};

/// Row-major design matrix with one target per row. Class targets are the
/// class index stored as a double.
struct TrainingData {
  std::size_t dim = 0;
  std::vector<double> x;
  std::vector<double> y;

  std::size_t rows() const { return dim == 0 ? 0 : x.size() / dim; }
  std::span<const double> row(std::size_t i) const { return std::span<const double>(x).subspan(i * dim, dim); }
  void add(std::span<const double> features, double target);
  std::string digest() const;
};

struct TrainManifest {
  std::string config_digest;
  std::string feature_digest;
  std::string data_digest;
  double final_train_loss = 0.0;
  std::uint32_t epochs = 0;
  std::vector<double> loss_history;  // not persisted
};

class TrainedModel {
 public:
  TrainedModel() = default;
  TrainedModel(ModelSpec spec, std::vector<double> weights, double target_offset = 0.0, double target_scale = 1.0);

  const ModelSpec& spec() const { return spec_; }
  const std::vector<double>& weights() const { return weights_; }
  double target_offset() const { return target_offset_; }
  double target_scale() const { return target_scale_; }

  TrainManifest manifest;

  /// Raw network output: logits for classifiers, scaled value for regressors.
  std::vector<double> forward(std::span<const double> row) const;

  /// Class distribution (sums to 1). Binary models return {P(0), P(1)}.
  std::vector<double> predict_proba(std::span<const double> row) const;
  int predict_class(std::span<const double> row) const;
  /// Rescaled regression output, clamped at >= 0 when `clamp` is set.
  double predict_value(std::span<const double> row, bool clamp = true) const;

  /// (w_1..w_d, b) of a single-layer model expressed in target units.
  std::vector<double> linear_coefficients() const;

  bool operator==(const TrainedModel& other) const;

 private:
  ModelSpec spec_;
  std::vector<double> weights_;
  double target_offset_ = 0.0;
  double target_scale_ = 1.0;
};

/// Trains from He-uniform initial weights with shuffled mini-batches, all
/// randomness drawn from config.seed. A non-finite loss throws DataError.
TrainedModel train(const ModelSpec& spec, const TrainConfig& config, const TrainingData& data);

/// Objective (weighted mean loss plus any L2 term) of `weights` on `data`,
/// in the model's training space (targets already scaled).
double objective(const ModelSpec& spec, std::span<const double> weights, const TrainingData& data,
                 std::span<const double> class_weights = {}, std::vector<double>* gradient = nullptr);

struct GradientCheckResult {
  double max_relative_error = 0.0;
  bool finite = true;
  std::size_t parameters = 0;
};

/// Compares backprop gradients with central differences (h = 1e-5) for
/// every parameter of `spec` on a random batch of 8 rows. The relative error
/// of a parameter is |a - n| / max(|a|, |n|, 1e-7).
GradientCheckResult gradient_check(const ModelSpec& spec, std::uint64_t seed, bool zero_inputs = false);

struct SvrOptions {
  double epsilon = 0.1;
  double lambda = 1e-3;
  TrainConfig train;

  SvrOptions();
};

struct SvrFit {
  TrainedModel model;
  double slope = 0.0;      // hours per unit of emotionality
  double intercept = 0.0;  // hours
  std::optional<double> test_r2;
  std::size_t test_rows = 0;
};

/// Linear epsilon-insensitive SVR of duration on emotionality, fit by
/// averaged subgradient descent. R^2 is computed on the test rows.
SvrFit train_svr(std::span<const double> train_x, std::span<const double> train_hours,
                 std::span<const double> test_x, std::span<const double> test_hours,
                 const SvrOptions& options = {});

/// "BDMODEL/1": magic, spec, target scaling, manifest, little-endian f64
/// weights, CRC-32 trailer.
std::vector<std::uint8_t> encode_model(const TrainedModel& model);
TrainedModel decode_model(std::span<const std::uint8_t> bytes);
void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace bugdestiny
