// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include "bugdestiny/app/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bugdestiny/binio.hpp"
#include "bugdestiny/error.hpp"
#include "bugdestiny/random.hpp"

namespace bugdestiny::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(std::string_view text, const std::pair<E, std::string_view> (&table)[N]) {
  std::string upper(text);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  std::replace(upper.begin(), upper.end(), '-', '_');
  for (const auto& [value, name] : table) {
    if (name == upper) return value;
  }
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view name_of(E value, const std::pair<E, std::string_view> (&table)[N]) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "?";
}

constexpr std::pair<Task, std::string_view> kTasks[] = {
    {Task::TimeToResolution, "TIME_TO_RESOLUTION"}, {Task::TimeToFix, "TIME_TO_FIX"},
    {Task::NumericTime, "NUMERIC_TIME"},            {Task::Destiny, "DESTINY"},
    {Task::Correlation, "CORRELATION"}};
constexpr std::pair<Balancing, std::string_view> kBalancing[] = {
    {Balancing::None, "NONE"}, {Balancing::Smote, "SMOTE"}, {Balancing::ClassWeights, "CLASS_WEIGHTS"}};
constexpr std::pair<Subset, std::string_view> kSubsets[] = {
    {Subset::Full, "FULL"}, {Subset::Short, "SHORT"}, {Subset::Long, "LONG"}};
constexpr std::pair<ModelKind, std::string_view> kModels[] = {
    {ModelKind::Mlp, "MLP"},       {ModelKind::Cnn1d, "CNN1D"}, {ModelKind::LinReg, "LINREG"},
    {ModelKind::LogReg, "LOGREG"}, {ModelKind::Svr, "SVR"}};
constexpr std::pair<Normalization, std::string_view> kNormalization[] = {
    {Normalization::PorterStem, "PORTER"}, {Normalization::Lemma, "LEMMA"}, {Normalization::None, "NONE"}};
constexpr std::pair<EmotionEncoding, std::string_view> kEncodings[] = {
    {EmotionEncoding::SignedValue, "SIGNED_VALUE"}, {EmotionEncoding::Binary, "BINARY"}};
constexpr std::pair<Optimizer, std::string_view> kOptimizers[] = {{Optimizer::Sgd, "SGD"},
                                                                  {Optimizer::Adam, "ADAM"}};
constexpr std::pair<QuantileBasis, std::string_view> kBases[] = {{QuantileBasis::TrainOnly, "TRAIN_ONLY"},
                                                                 {QuantileBasis::Whole, "WHOLE"}};
constexpr std::pair<TimestampFormat, std::string_view> kTimestampFormats[] = {
    {TimestampFormat::Iso8601, "ISO8601"}, {TimestampFormat::EpochSeconds, "EPOCH_SECONDS"}};

/// A JSON object whose keys are checked against the accepted set.
class Section {
 public:
  Section(const json& j, std::string path, std::initializer_list<std::string_view> keys) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ConfigError(where() + "must be an object");
    for (const auto& [key, value] : j.items()) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        throw ConfigError("unknown config key '" + path_ + (path_.empty() ? "" : ".") + key + "'");
      }
    }
  }

  bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }
  const json& at(const char* key) const { return j_.at(key); }
  std::string name(const char* key) const { return path_ + (path_.empty() ? "" : ".") + key; }

  void get(const char* key, bool& out) const {
    if (!has(key)) return;
    if (!at(key).is_boolean()) throw ConfigError(name(key) + " must be true or false");
    out = at(key).get<bool>();
  }
  void get(const char* key, double& out) const {
    if (!has(key)) return;
    if (!at(key).is_number()) throw ConfigError(name(key) + " must be a number");
    out = at(key).get<double>();
    if (!std::isfinite(out)) throw ConfigError(name(key) + " must be finite");
  }
  void get(const char* key, std::size_t& out) const {
    if (!has(key)) return;
    if (!at(key).is_number_unsigned()) throw ConfigError(name(key) + " must be a non-negative integer");
    out = at(key).get<std::size_t>();
  }
  void get(const char* key, std::uint64_t& out, int) const {
    if (!has(key)) return;
    if (!at(key).is_number_unsigned()) throw ConfigError(name(key) + " must be a non-negative integer");
    out = at(key).get<std::uint64_t>();
  }
  void get(const char* key, std::string& out) const {
    if (!has(key)) return;
    if (!at(key).is_string()) throw ConfigError(name(key) + " must be a string");
    out = at(key).get<std::string>();
  }
  template <typename E, std::size_t N>
  void get_enum(const char* key, E& out, const std::pair<E, std::string_view> (&table)[N]) const {
    if (!has(key)) return;
    out = parse_enum(at(key), name(key), table);
  }
  Section sub(const char* key, std::initializer_list<std::string_view> keys) const {
    static const json empty = json::object();
    return Section(has(key) ? at(key) : empty, name(key), keys);
  }

  template <typename E, std::size_t N>
  static E parse_enum(const json& v, const std::string& name, const std::pair<E, std::string_view> (&table)[N]) {
    if (v.is_string()) {
      if (auto e = lookup(v.get<std::string>(), table)) return *e;
    }
    std::string allowed;
    for (const auto& [value, label] : table) allowed += (allowed.empty() ? "" : ", ") + std::string(label);
    throw ConfigError(name + ": expected one of " + allowed + ", got " + v.dump());
  }

 private:
  std::string where() const { return path_.empty() ? "config " : path_ + " "; }

  const json& j_;
  std::string path_;
};

fs::path resolve(const std::string& text, const fs::path& base) {
  if (text.empty()) return {};
  fs::path p(text);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p.lexically_normal();
}

std::vector<ModelKind> model_list(const json& v, const std::string& name) {
  if (!v.is_array() || v.empty()) throw ConfigError(name + " must be a non-empty list of model names");
  std::vector<ModelKind> out;
  for (const auto& item : v) out.push_back(Section::parse_enum(item, name, kModels));
  return out;
}

void parse_train(const Section& s, TrainConfig& t) {
  s.get("epochs", t.epochs);
  s.get("batch_size", t.batch_size);
  s.get("learning_rate", t.learning_rate);
  s.get_enum("optimizer", t.optimizer, kOptimizers);
  s.get("beta1", t.beta1);
  s.get("beta2", t.beta2);
  s.get("adam_epsilon", t.adam_epsilon);
  s.get("inverse_sqrt_decay", t.inverse_sqrt_decay);
  s.get("tail_average", t.tail_average);
  s.get("standardize_targets", t.standardize_targets);
}

json train_json(const TrainConfig& t) {
  return {{"epochs", t.epochs},
          {"batch_size", t.batch_size},
          {"learning_rate", t.learning_rate},
          {"optimizer", name_of(t.optimizer, kOptimizers)},
          {"beta1", t.beta1},
          {"beta2", t.beta2},
          {"adam_epsilon", t.adam_epsilon},
          {"inverse_sqrt_decay", t.inverse_sqrt_decay},
          {"tail_average", t.tail_average},
          {"standardize_targets", t.standardize_targets}};
}

void validate(const RunConfig& c) {
  if (!(c.train_fraction > 0.0 && c.train_fraction < 1.0)) throw ConfigError("split.train_fraction must be in (0, 1)");
  if (!(c.short_fraction > 0.0 && c.short_fraction < 1.0)) throw ConfigError("split.short_fraction must be in (0, 1)");
  if (c.topics.k < 2) throw ConfigError("topics.k must be at least 2");
  if (c.topics.max_iterations == 0) throw ConfigError("topics.max_iterations must be positive");
  if (c.embedding_dimension < 8) throw ConfigError("topics.embedding_dimension must be at least 8");
  if (c.min_token_length == 0) throw ConfigError("text.min_token_length must be positive");
  if (c.smote_neighbors == 0) throw ConfigError("smote.k_neighbors must be positive");
  if (c.mlp_hidden.empty()) throw ConfigError("models.mlp_hidden must list at least one layer");
  for (auto h : c.mlp_hidden) {
    if (h == 0) throw ConfigError("models.mlp_hidden sizes must be positive");
  }
  for (auto k : c.classification_models) {
    if (k == ModelKind::LinReg || k == ModelKind::Svr) {
      throw ConfigError("models.classification: " + std::string(to_string(k)) + " is a regression model");
    }
  }
  for (auto k : c.regression_models) {
    if (k == ModelKind::LogReg) throw ConfigError("models.regression: LOGREG is a classifier");
  }
  if (c.columns.delimiter == '\n' || c.columns.delimiter == '"') throw ConfigError("columns.delimiter is not usable");
  c.train.validate();
  c.svr.train.validate();
  if (c.svr.epsilon < 0.0 || c.svr.lambda < 0.0) throw ConfigError("svr.epsilon and svr.lambda must be >= 0");
}

}  // namespace

std::string_view to_string(Task t) { return name_of(t, kTasks); }
std::string_view to_string(Balancing b) { return name_of(b, kBalancing); }
std::string_view to_string(Subset s) { return name_of(s, kSubsets); }
std::optional<Task> parse_task(std::string_view text) { return lookup(text, kTasks); }
std::optional<Balancing> parse_balancing(std::string_view text) { return lookup(text, kBalancing); }
std::optional<Subset> parse_subset(std::string_view text) { return lookup(text, kSubsets); }

std::string_view to_string(Normalization n) { return name_of(n, kNormalization); }
std::string_view to_string(EmotionEncoding e) { return name_of(e, kEncodings); }
std::optional<Normalization> parse_normalization(std::string_view text) { return lookup(text, kNormalization); }
std::optional<EmotionEncoding> parse_emotion_encoding(std::string_view text) { return lookup(text, kEncodings); }
std::optional<ModelKind> parse_model_kind(std::string_view text) { return lookup(text, kModels); }

std::string task_slug(Task t) {
  std::string s(to_string(t));
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

RunConfig RunConfig::load(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  auto base = fs::absolute(path).parent_path();
  try {
    return from_json_text(text.str(), base);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

RunConfig RunConfig::from_json_text(std::string_view text, const fs::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  const Section root(j, "",
                     {"seed", "task", "paths", "columns", "models", "balancing", "subset", "features", "text", "split",
                      "topics", "train", "svr", "smote", "export_features", "predict"});
  RunConfig c;
  root.get("seed", c.seed, 0);
  root.get_enum("task", c.task, kTasks);
  if (root.has("balancing")) c.balancing = Section::parse_enum(root.at("balancing"), "balancing", kBalancing);
  if (root.has("subset")) c.subset = Section::parse_enum(root.at("subset"), "subset", kSubsets);
  root.get("export_features", c.export_features);

  {
    const auto s = root.sub("paths", {"corpus", "lexicon", "stopwords", "vectors", "output_dir"});
    std::string corpus, lexicon, stopwords, vectors, out;
    s.get("corpus", corpus);
    s.get("lexicon", lexicon);
    s.get("stopwords", stopwords);
    s.get("vectors", vectors);
    s.get("output_dir", out);
    c.paths = {resolve(corpus, base_dir), resolve(lexicon, base_dir), resolve(stopwords, base_dir),
               resolve(vectors, base_dir), resolve(out, base_dir)};
  }
  {
    const auto s = root.sub("columns", {"id", "description", "priority", "created", "resolved", "resolution", "status",
                                        "delimiter", "timestamp_format"});
    s.get("id", c.columns.id);
    s.get("description", c.columns.description);
    s.get("priority", c.columns.priority);
    s.get("created", c.columns.created);
    s.get("resolved", c.columns.resolved);
    s.get("resolution", c.columns.resolution);
    s.get("status", c.columns.status);
    std::string delim;
    s.get("delimiter", delim);
    if (s.has("delimiter")) {
      if (delim == "\\t" || delim == "tab") delim = "\t";
      if (delim.size() != 1) throw ConfigError("columns.delimiter must be a single character");
      c.columns.delimiter = delim[0];
    }
    s.get_enum("timestamp_format", c.columns.timestamp_format, kTimestampFormats);
  }
  {
    const auto s = root.sub("models", {"classification", "regression", "mlp_hidden", "cnn"});
    if (s.has("classification")) c.classification_models = model_list(s.at("classification"), s.name("classification"));
    if (s.has("regression")) c.regression_models = model_list(s.at("regression"), s.name("regression"));
    if (s.has("mlp_hidden")) {
      const auto& h = s.at("mlp_hidden");
      if (!h.is_array()) throw ConfigError("models.mlp_hidden must be a list of layer sizes");
      c.mlp_hidden.clear();
      for (const auto& v : h) {
        if (!v.is_number_unsigned()) throw ConfigError("models.mlp_hidden must be a list of layer sizes");
        c.mlp_hidden.push_back(v.get<std::size_t>());
      }
    }
    const auto cnn = s.sub("cnn", {"filters", "kernel", "stride"});
    cnn.get("filters", c.conv.filters);
    cnn.get("kernel", c.conv.kernel);
    cnn.get("stride", c.conv.stride);
  }
  {
    const auto s = root.sub("features", {"use_topic", "emotion_encoding", "standardize"});
    s.get("use_topic", c.features.use_topic);
    s.get_enum("emotion_encoding", c.features.emotion_encoding, kEncodings);
    s.get("standardize", c.features.standardize);
  }
  {
    const auto s = root.sub("text", {"normalization", "min_token_length"});
    s.get_enum("normalization", c.normalization, kNormalization);
    s.get("min_token_length", c.min_token_length);
  }
  {
    const auto s = root.sub("split", {"train_fraction", "short_fraction", "quantile_basis"});
    s.get("train_fraction", c.train_fraction);
    s.get("short_fraction", c.short_fraction);
    s.get_enum("quantile_basis", c.quantile_basis, kBases);
  }
  {
    const auto s = root.sub("topics", {"k", "max_iterations", "tolerance", "top_terms", "embedding_dimension"});
    s.get("k", c.topics.k);
    s.get("max_iterations", c.topics.max_iterations);
    s.get("tolerance", c.topics.tolerance);
    s.get("top_terms", c.topics.top_terms);
    s.get("embedding_dimension", c.embedding_dimension);
  }
  parse_train(root.sub("train", {"epochs", "batch_size", "learning_rate", "optimizer", "beta1", "beta2",
                                 "adam_epsilon", "inverse_sqrt_decay", "tail_average", "standardize_targets"}),
              c.train);
  {
    const auto s = root.sub("svr", {"epsilon", "lambda", "epochs", "batch_size", "learning_rate", "optimizer", "beta1",
                                    "beta2", "adam_epsilon", "inverse_sqrt_decay", "tail_average",
                                    "standardize_targets"});
    s.get("epsilon", c.svr.epsilon);
    s.get("lambda", c.svr.lambda);
    parse_train(s, c.svr.train);
  }
  root.sub("smote", {"k_neighbors"}).get("k_neighbors", c.smote_neighbors);
  {
    const auto s = root.sub("predict", {"time_class_model", "destiny_model", "hours_model"});
    std::string time_class = c.predict.time_class.string(), destiny = c.predict.destiny.string(),
                hours = c.predict.hours.string();
    s.get("time_class_model", time_class);
    s.get("destiny_model", destiny);
    s.get("hours_model", hours);
    c.predict = {time_class, destiny, hours};
  }
  c.features.topic_count = c.topics.k;
  validate(c);
  return c;
}

std::string RunConfig::to_json() const {
  json cls = json::array(), reg = json::array();
  for (auto k : classification_models) cls.push_back(name_of(k, kModels));
  for (auto k : regression_models) reg.push_back(name_of(k, kModels));
  json svr_json = train_json(svr.train);
  svr_json["epsilon"] = svr.epsilon;
  svr_json["lambda"] = svr.lambda;
  const json j = {
      {"seed", seed},
      {"task", to_string(task)},
      {"paths",
       {{"corpus", paths.corpus.string()},
        {"lexicon", paths.lexicon.string()},
        {"stopwords", paths.stopwords.string()},
        {"vectors", paths.vectors.string()},
        {"output_dir", paths.output_dir.string()}}},
      {"columns",
       {{"id", columns.id},
        {"description", columns.description},
        {"priority", columns.priority},
        {"created", columns.created},
        {"resolved", columns.resolved},
        {"resolution", columns.resolution},
        {"status", columns.status},
        {"delimiter", std::string(1, columns.delimiter)},
        {"timestamp_format", name_of(columns.timestamp_format, kTimestampFormats)}}},
      {"models",
       {{"classification", cls},
        {"regression", reg},
        {"mlp_hidden", mlp_hidden},
        {"cnn", {{"filters", conv.filters}, {"kernel", conv.kernel}, {"stride", conv.stride}}}}},
      {"balancing", balancing ? json(to_string(*balancing)) : json(nullptr)},
      {"subset", subset ? json(to_string(*subset)) : json(nullptr)},
      {"features",
       {{"use_topic", features.use_topic},
        {"emotion_encoding", name_of(features.emotion_encoding, kEncodings)},
        {"standardize", features.standardize}}},
      {"text", {{"normalization", name_of(normalization, kNormalization)}, {"min_token_length", min_token_length}}},
      {"split",
       {{"train_fraction", train_fraction},
        {"short_fraction", short_fraction},
        {"quantile_basis", name_of(quantile_basis, kBases)}}},
      {"topics",
       {{"k", topics.k},
        {"max_iterations", topics.max_iterations},
        {"tolerance", topics.tolerance},
        {"top_terms", topics.top_terms},
        {"embedding_dimension", embedding_dimension}}},
      {"train", train_json(train)},
      {"svr", svr_json},
      {"smote", {{"k_neighbors", smote_neighbors}}},
      {"export_features", export_features},
      {"predict",
       {{"time_class_model", predict.time_class.string()},
        {"destiny_model", predict.destiny.string()},
        {"hours_model", predict.hours.string()}}},
  };
  return j.dump(2);
}

std::string RunConfig::digest() const { return binio::hex64(binio::fnv1a64(to_json())); }

std::uint64_t RunConfig::stream_seed(std::uint64_t stream) const { return derive_seed(seed, stream); }

void require_paths(const RunConfig& config, std::string_view command) {
  const auto need = [&](const fs::path& p, const char* what) {
    if (p.empty()) throw ConfigError(std::string(command) + " needs paths." + what + " in the config");
    if (!fs::exists(p)) throw ConfigError(std::string("paths.") + what + " does not exist: " + p.string());
  };
  const auto optional = [&](const fs::path& p, const char* what) {
    if (!p.empty() && !fs::exists(p)) throw ConfigError(std::string("paths.") + what + " does not exist: " + p.string());
  };
  if (config.paths.output_dir.empty()) throw ConfigError("paths.output_dir is not set (use --out)");
  if (command == "ingest") need(config.paths.corpus, "corpus");
  if (command != "ingest") need(config.paths.lexicon, "lexicon");
  optional(config.paths.stopwords, "stopwords");
  optional(config.paths.vectors, "vectors");
}

}  // namespace bugdestiny::app
