// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors


#include "bugdestiny/binio.hpp"
#include "bugdestiny/error.hpp"
#include "bugdestiny/learn.hpp"

namespace bugdestiny {
namespace {

constexpr std::string_view kMagic = "BDMODEL/1";
constexpr std::uint64_t kMaxDim = 1u << 24;

std::size_t read_size(binio::Reader& in, const char* field) {
  const std::uint64_t v = in.u64();
  if (v > kMaxDim) throw FormatError("model file: implausible " + std::string(field) + " " + std::to_string(v));
  return static_cast<std::size_t>(v);
}

}  // namespace

std::vector<std::uint8_t> encode_model(const TrainedModel& model) {
  const ModelSpec& s = model.spec();
  binio::Writer w;
  w.raw(kMagic);
  w.u32(static_cast<std::uint32_t>(s.kind));
  w.u64(s.input_dim);
  w.u32(static_cast<std::uint32_t>(s.hidden.size()));
  for (std::size_t h : s.hidden) w.u64(h);
  w.u64(s.conv.filters);
  w.u64(s.conv.kernel);
  w.u64(s.conv.stride);
  w.u32(static_cast<std::uint32_t>(s.output.kind));
  w.u64(s.output.classes);
  w.f64(s.svr_epsilon);
  w.f64(s.svr_lambda);

  w.f64(model.target_offset());
  w.f64(model.target_scale());

  w.str(model.manifest.config_digest);
  w.str(model.manifest.feature_digest);
  w.str(model.manifest.data_digest);
  w.f64(model.manifest.final_train_loss);
  w.u32(model.manifest.epochs);

  w.u64(model.weights().size());
  w.f64s(model.weights());
  w.seal();
  return w.bytes();
}

TrainedModel decode_model(std::span<const std::uint8_t> bytes) {
  binio::Reader in(binio::open_sealed(bytes, kMagic, "model file"));
  ModelSpec s;
  const std::uint32_t kind = in.u32();
  if (kind > static_cast<std::uint32_t>(ModelKind::Svr)) {
    throw FormatError("model file: unknown model kind " + std::to_string(kind));
  }
  s.kind = static_cast<ModelKind>(kind);
  s.input_dim = read_size(in, "input dimension");
  const std::uint32_t layers = in.u32();
  if (layers > 64) throw FormatError("model file: implausible hidden layer count " + std::to_string(layers));
  s.hidden.clear();
  for (std::uint32_t i = 0; i < layers; ++i) s.hidden.push_back(read_size(in, "layer size"));
  s.conv.filters = read_size(in, "filter count");
  s.conv.kernel = read_size(in, "kernel");
  s.conv.stride = read_size(in, "stride");
  const std::uint32_t output = in.u32();
  if (output > static_cast<std::uint32_t>(OutputKind::Scalar)) {
    throw FormatError("model file: unknown output kind " + std::to_string(output));
  }
  s.output.kind = static_cast<OutputKind>(output);
  s.output.classes = read_size(in, "class count");
  s.svr_epsilon = in.f64();
  s.svr_lambda = in.f64();
  try {
    s.validate();
  } catch (const ConfigError& e) {
    throw FormatError(std::string("model file: invalid model spec: ") + e.what());
  }

  const double offset = in.f64();
  const double scale = in.f64();
  TrainManifest manifest;
  manifest.config_digest = in.str();
  manifest.feature_digest = in.str();
  manifest.data_digest = in.str();
  manifest.final_train_loss = in.f64();
  manifest.epochs = in.u32();

  const std::uint64_t count = in.u64();
  if (count != s.parameter_count()) {
    throw FormatError("model file: " + std::to_string(count) + " weights stored; the architecture needs " +
                      std::to_string(s.parameter_count()));
  }
  auto weights = in.f64s(static_cast<std::size_t>(count));
  if (!in.at_end()) throw FormatError("model file: trailing bytes after the weights");

  TrainedModel model(std::move(s), std::move(weights), offset, scale);
  model.manifest = std::move(manifest);
  return model;
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  binio::write_file(path, encode_model(model));
}

TrainedModel load_model(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw DataError("model file not found: " + path.string());
  return decode_model(binio::read_file(path));
}

}  // namespace bugdestiny
