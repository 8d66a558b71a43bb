// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include "bugdestiny/app/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bugdestiny/binio.hpp"
#include "bugdestiny/error.hpp"

namespace bugdestiny::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kSidecarFormat = "bugdestiny-model-sidecar/1";

json feature_json(const FeatureConfig& f) {
  return {{"use_topic", f.use_topic},
          {"topic_count", f.topic_count},
          {"emotion_encoding", to_string(f.emotion_encoding)},
          {"standardize", f.standardize}};
}

std::string feature_digest(const FeatureConfig& f) { return binio::hex64(binio::fnv1a64(feature_json(f).dump())); }

std::uint64_t model_stream(const RunConfig& config, std::string_view scope) {
  return config.stream_seed(binio::fnv1a64(scope));
}

const char* task_title(Task task) {
  switch (task) {
    case Task::TimeToResolution: return "Time-to-resolution classification (SHORT / LONG)";
    case Task::TimeToFix: return "Time-to-fix classification on FIXED reports (SHORT / LONG)";
    case Task::Destiny: return "Destiny classification (final resolution label)";
    case Task::NumericTime: return "Numeric time regression";
    case Task::Correlation: return "Emotionality vs time-to-resolution";
  }
  return "";
}

void fit_standardizer(ModelBundle& bundle, std::span<const FeatureVector> train_rows) {
  bundle.standardized = bundle.features.standardize;
  if (bundle.standardized) bundle.standardizer = Standardizer::fit(train_rows);
}

}  // namespace

PrepConfig make_prep_config(const RunConfig& config, const SentimentLexicon& lexicon) {
  PrepConfig prep;
  if (!config.paths.stopwords.empty()) {
    prep.stopwords = std::make_shared<const StopWordSet>(load_stopwords(config.paths.stopwords));
  }
  prep.normalization = config.normalization;
  prep.min_token_length = config.min_token_length;
  if (config.normalization == Normalization::Lemma) {
    prep.lemma_dictionary = [&lexicon](std::string_view w) { return lexicon.contains(w); };
  }
  return prep;
}

Workspace prepare_workspace(const RunConfig& config, std::vector<BugReport> reports, const SentimentLexicon& lexicon) {
  Workspace ws;
  ws.reports = std::move(reports);
  ws.index.reserve(ws.reports.size());
  for (std::size_t i = 0; i < ws.reports.size(); ++i) ws.index.emplace(ws.reports[i].id, i);
  ws.split = chronological_split(ws.reports, config.train_fraction);
  ws.train_ids.insert(ws.split.train_ids.begin(), ws.split.train_ids.end());
  auto derived = derive_examples(ws.reports);
  ws.examples = std::move(derived.examples);
  ws.unlabeled = derived.skipped;

  const PrepConfig prep = make_prep_config(config, lexicon);
  ws.streams.reserve(ws.reports.size());
  ws.scores.reserve(ws.reports.size());
  for (const auto& r : ws.reports) {
    ws.streams.push_back(preprocess(r.description, prep, r.id));
    ws.scores.push_back(score_document(ws.streams.back(), lexicon));
  }
  return ws;
}

EmbeddingBackend make_embedding_backend(const RunConfig& config) {
  if (!config.paths.vectors.empty()) return EmbeddingBackend::external(ExternalVectors::load(config.paths.vectors));
  return EmbeddingBackend::hashed_tfidf(config.embedding_dimension, config.stream_seed(binio::fnv1a64("embedding")));
}

void fit_workspace_topics(Workspace& ws, const RunConfig& config) {
  std::vector<TokenStream> train;
  for (const auto& id : ws.split.train_ids) train.push_back(ws.streams[ws.index.at(id)]);
  TopicFitOptions options = config.topics;
  options.seed = config.stream_seed(binio::fnv1a64("topics"));
  ws.topics = fit_topics(train, make_embedding_backend(config), options);
  ws.topic_of.resize(ws.reports.size());
  for (std::size_t i = 0; i < ws.reports.size(); ++i) ws.topic_of[i] = assign_topic(ws.streams[i], *ws.topics);
}

FeatureVector featurize(const SentimentScore& score, int priority, std::optional<int> topic,
                        const FeatureConfig& features) {
  return build_features(score, priority, features.use_topic ? topic : std::nullopt, features);
}

FeatureVector featurize(const Workspace& ws, const LabeledExample& e, const FeatureConfig& features) {
  const std::size_t i = ws.index.at(e.report_id);
  std::optional<int> topic;
  if (features.use_topic) {
    if (ws.topic_of.empty()) throw DataError("topic features requested before the topic model was fitted");
    topic = ws.topic_of[i];
  }
  return build_features(ws.scores[i], ws.reports[i].effective_priority(), topic, features);
}

ClassificationTask make_classification_task(const Workspace& ws, const RunConfig& config, Task task) {
  ClassificationTask t;
  t.task = task;
  t.title = task_title(task);
  if (task == Task::Destiny) {
    const auto pruned = prune_unseen_labels(ws.split, ws.examples);
    t.train = pruned.train;
    t.test = pruned.test;
    std::set<Resolution> present;
    for (const auto& e : t.train) present.insert(e.destiny_label);
    std::vector<Resolution> classes;
    for (Resolution r : kAllResolutions) {
      if (present.contains(r)) {
        classes.push_back(r);
        t.class_names.emplace_back(to_string(r));
      }
    }
    if (classes.size() < 2) throw DataError("destiny task needs at least two resolution labels in train");
    const auto index_of = [&](Resolution r) {
      return static_cast<int>(std::find(classes.begin(), classes.end(), r) - classes.begin());
    };
    for (const auto& e : t.train) t.train_labels.push_back(index_of(e.destiny_label));
    for (const auto& e : t.test) t.test_labels.push_back(index_of(e.destiny_label));
    for (Resolution r : pruned.split.dropped_labels) {
      t.notes.push_back("label " + std::string(to_string(r)) + " is absent from train; removed from test");
    }
    if (pruned.removed > 0) t.notes.push_back(std::to_string(pruned.removed) + " test reports removed");
  } else if (task == Task::TimeToResolution || task == Task::TimeToFix) {
    auto pool = task == Task::TimeToFix ? filter_fixed(ws.examples) : ws.examples;
    const auto assignment = assign_time_classes(pool, config.short_fraction, config.quantile_basis, ws.split.train_ids);
    t.threshold_hours = assignment.threshold_hours;
    t.notes = assignment.warnings;
    auto parts = partition_examples(ws.split, pool);
    t.train = std::move(parts.train);
    t.test = std::move(parts.test);
    t.class_names = {"SHORT", "LONG"};
    for (const auto& e : t.train) t.train_labels.push_back(e.time_class == TimeClass::Short ? 0 : 1);
    for (const auto& e : t.test) t.test_labels.push_back(e.time_class == TimeClass::Short ? 0 : 1);
  } else {
    throw ConfigError(std::string(to_string(task)) + " is not a classification task");
  }
  if (t.train.empty() || t.test.empty()) {
    throw DataError(std::string(to_string(task)) + ": the split leaves an empty train or test set");
  }
  return t;
}

RegressionTask make_regression_task(const Workspace& ws, const RunConfig& config, bool fixed_only) {
  RegressionTask t;
  t.examples = fixed_only ? filter_fixed(ws.examples) : ws.examples;
  const auto assignment =
      assign_time_classes(t.examples, config.short_fraction, config.quantile_basis, ws.split.train_ids);
  t.threshold_hours = assignment.threshold_hours;
  t.title = fixed_only ? "Time-to-fix regression on FIXED reports (hours)" : "Time-to-resolution regression (hours)";
  t.slug = fixed_only ? "numeric_time_fix" : "numeric_time_resolution";
  return t;
}

std::vector<LabeledExample> select_subset(std::span<const LabeledExample> examples, Subset subset) {
  std::vector<LabeledExample> out;
  for (const auto& e : examples) {
    if (subset == Subset::Full || (subset == Subset::Short) == (e.time_class == TimeClass::Short)) out.push_back(e);
  }
  return out;
}

std::string model_display_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Mlp: return "MLP";
    case ModelKind::Cnn1d: return "CNN";
    case ModelKind::LinReg: return "Linear Regression";
    case ModelKind::LogReg: return "Logistic Regression";
    case ModelKind::Svr: return "SVR";
  }
  return "";
}

std::string subset_display_name(Subset subset) {
  switch (subset) {
    case Subset::Full: return "Full Dataset";
    case Subset::Short: return "Short";
    case Subset::Long: return "Long";
  }
  return "";
}

std::string model_slug(ModelKind kind, bool use_topic, Balancing balancing) {
  std::string s;
  switch (kind) {
    case ModelKind::Mlp: s = "mlp"; break;
    case ModelKind::Cnn1d: s = "cnn"; break;
    case ModelKind::LinReg: s = "linreg"; break;
    case ModelKind::LogReg: s = "logreg"; break;
    case ModelKind::Svr: s = "svr"; break;
  }
  if (use_topic) s += "_topic";
  if (balancing == Balancing::Smote) s += "_smote";
  if (balancing == Balancing::ClassWeights) s += "_cw";
  return s;
}

ModelSpec make_model_spec(const RunConfig& config, ModelKind kind, std::size_t input_dim, OutputSpec output) {
  ModelSpec spec;
  spec.kind = kind;
  spec.input_dim = input_dim;
  spec.hidden = config.mlp_hidden;
  spec.conv = config.conv;
  spec.output = output;
  spec.svr_epsilon = config.svr.epsilon;
  spec.svr_lambda = config.svr.lambda;
  spec.validate();
  return spec;
}

FeatureVector ModelBundle::prepare(FeatureVector row) const {
  if (standardized) standardizer.apply(row);
  return row;
}

std::string encode_bundle_sidecar(const ModelBundle& b, const std::string& task, const std::string& label) {
  json j = {{"format", kSidecarFormat},
            {"task", task},
            {"label", label},
            {"model", to_string(b.model.spec().kind)},
            {"features", feature_json(b.features)},
            {"standardizer", b.standardized ? json{{"mean", b.standardizer.mean()}, {"scale", b.standardizer.scale()}}
                                            : json(nullptr)},
            {"classes", b.class_names},
            {"text", {{"normalization", to_string(b.normalization)}, {"min_token_length", b.min_token_length}}},
            {"topics_file", b.topics_file}};
  return j.dump(2) + "\n";
}

void save_bundle(const ModelBundle& bundle, const fs::path& model_path, const std::string& task,
                 const std::string& label) {
  fs::create_directories(model_path.parent_path());
  save_model(bundle.model, model_path);
  auto sidecar = model_path;
  sidecar.replace_extension(".json");
  std::ofstream out(sidecar, std::ios::binary);
  out << encode_bundle_sidecar(bundle, task, label);
  if (!out) throw DataError("cannot write " + sidecar.string());
}

ModelBundle load_bundle(const fs::path& model_path) {
  ModelBundle b;
  b.model = load_model(model_path);
  auto sidecar = model_path;
  sidecar.replace_extension(".json");
  std::ifstream in(sidecar, std::ios::binary);
  if (!in) throw DataError("model sidecar not found: " + sidecar.string());
  try {
    const json j = json::parse(in);
    if (j.at("format") != kSidecarFormat) throw FormatError("unsupported sidecar format in " + sidecar.string());
    const auto& f = j.at("features");
    b.features.use_topic = f.at("use_topic").get<bool>();
    b.features.topic_count = f.at("topic_count").get<std::size_t>();
    const auto enc = parse_emotion_encoding(f.at("emotion_encoding").get<std::string>());
    if (!enc) throw FormatError("bad emotion encoding in " + sidecar.string());
    b.features.emotion_encoding = *enc;
    b.features.standardize = f.at("standardize").get<bool>();
    if (!j.at("standardizer").is_null()) {
      b.standardized = true;
      b.standardizer = Standardizer(j.at("standardizer").at("mean").get<std::vector<double>>(),
                                    j.at("standardizer").at("scale").get<std::vector<double>>());
    }
    b.class_names = j.at("classes").get<std::vector<std::string>>();
    const auto norm = parse_normalization(j.at("text").at("normalization").get<std::string>());
    if (!norm) throw FormatError("bad normalization in " + sidecar.string());
    b.normalization = *norm;
    b.min_token_length = j.at("text").at("min_token_length").get<std::size_t>();
    b.topics_file = j.at("topics_file").get<std::string>();
  } catch (const json::exception& e) {
    throw FormatError("malformed model sidecar " + sidecar.string() + ": " + e.what());
  }
  if (b.features.width() != b.model.spec().input_dim) {
    throw FormatError("model sidecar " + sidecar.string() + " does not match the model input width");
  }
  return b;
}

ClassificationOutcome run_classifier(const Workspace& ws, const RunConfig& config, const ClassificationTask& task,
                                     ModelKind kind, bool use_topic, Balancing balancing) {
  ClassificationOutcome out;
  out.kind = kind;
  out.use_topic = use_topic;
  out.balancing = balancing;
  out.slug = model_slug(kind, use_topic, balancing);
  const std::string scope = task_slug(task.task) + "/" + out.slug;

  ModelBundle& b = out.bundle;
  b.features = config.features;
  b.features.use_topic = use_topic;
  b.features.topic_count = config.topics.k;
  b.class_names = task.class_names;
  b.normalization = config.normalization;
  b.min_token_length = config.min_token_length;
  if (use_topic) b.topics_file = "topics.bdtopic";

  std::vector<LabeledRow> train;
  train.reserve(task.train.size());
  for (std::size_t i = 0; i < task.train.size(); ++i) {
    train.push_back({featurize(ws, task.train[i], b.features), task.train_labels[i]});
  }
  {
    std::vector<FeatureVector> xs;
    xs.reserve(train.size());
    for (const auto& r : train) xs.push_back(r.x);
    fit_standardizer(b, xs);
  }
  for (auto& r : train) r.x = b.prepare(std::move(r.x));

  TrainConfig tc = config.train;
  tc.seed = model_stream(config, scope);
  tc.feature_digest = feature_digest(b.features);
  if (balancing == Balancing::Smote) {
    SmoteOptions so;
    so.k_neighbors = config.smote_neighbors;
    so.seed = model_stream(config, scope + "/smote");
    auto res = smote_oversample(std::move(train), so);
    train = std::move(res.rows);
    out.synthetic_rows = res.synthetic;
    out.warnings = std::move(res.warnings);
  } else if (balancing == Balancing::ClassWeights) {
    tc.class_weights = balanced_class_weights(task.train_labels, task.class_names.size());
  }
  out.train_rows = train.size();

  TrainingData data;
  data.dim = b.features.width();
  for (const auto& r : train) data.add(r.x, r.label);
  const std::size_t n = task.class_names.size();
  const auto spec = make_model_spec(config, kind, data.dim, n == 2 ? OutputSpec::binary() : OutputSpec::multiclass(n));
  b.model = bugdestiny::train(spec, tc, data);

  out.predicted.reserve(task.test.size());
  for (const auto& e : task.test) out.predicted.push_back(b.model.predict_class(b.prepare(featurize(ws, e, b.features))));
  out.confusion = confusion(task.test_labels, out.predicted, task.class_names);
  out.row.report = classification_report(out.confusion);
  const std::string display = model_display_name(kind);
  out.row.label = balancing == Balancing::ClassWeights
                      ? classification_row_label(display, use_topic, false) + " Class-Weighted"
                      : classification_row_label(display, use_topic, balancing == Balancing::Smote);
  return out;
}

RegressionOutcome run_regressor(const Workspace& ws, const RunConfig& config, const RegressionTask& task,
                                ModelKind kind, Subset subset) {
  RegressionOutcome out;
  out.kind = kind;
  out.subset = subset;
  std::string subset_slug(to_string(subset));
  std::transform(subset_slug.begin(), subset_slug.end(), subset_slug.begin(), ::tolower);
  out.slug = model_slug(kind, config.features.use_topic, Balancing::None) + "_" + subset_slug;
  const std::string scope = task.slug + "/" + out.slug;

  ModelBundle& b = out.bundle;
  b.features = config.features;
  b.features.topic_count = config.topics.k;
  b.normalization = config.normalization;
  b.min_token_length = config.min_token_length;
  if (b.features.use_topic) b.topics_file = "topics.bdtopic";

  const auto rows = select_subset(task.examples, subset);
  std::vector<FeatureVector> train_x;
  std::vector<double> train_y;
  std::vector<FeatureVector> test_x;
  for (const auto& e : rows) {
    if (ws.in_train(e)) {
      train_x.push_back(featurize(ws, e, b.features));
      train_y.push_back(e.duration_hours);
    } else {
      test_x.push_back(featurize(ws, e, b.features));
      out.truth.push_back(e.duration_hours);
      out.test_ids.push_back(e.report_id);
    }
  }
  if (train_x.size() < 2 || test_x.empty()) {
    throw DataError(task.slug + " " + std::string(to_string(subset)) + ": not enough train or test rows");
  }
  fit_standardizer(b, train_x);

  TrainingData data;
  data.dim = b.features.width();
  for (std::size_t i = 0; i < train_x.size(); ++i) data.add(b.prepare(train_x[i]), train_y[i]);
  out.train_rows = train_x.size();
  TrainConfig tc = config.train;
  tc.seed = model_stream(config, scope);
  tc.feature_digest = feature_digest(b.features);
  b.model = bugdestiny::train(make_model_spec(config, kind, data.dim, OutputSpec::scalar()), tc, data);

  out.predicted.reserve(test_x.size());
  for (auto& x : test_x) out.predicted.push_back(b.model.predict_value(b.prepare(std::move(x))));
  out.row.report = regression_report(out.truth, out.predicted);
  out.row.label = regression_row_label(model_display_name(kind), subset_display_name(subset));
  return out;
}

CorrelationData make_correlation_data(const Workspace& ws) {
  CorrelationData d;
  for (const auto& e : ws.examples) {
    const double x = ws.scores[ws.index.at(e.report_id)].emotionality;
    if (ws.in_train(e)) {
      d.train_x.push_back(x);
      d.train_hours.push_back(e.duration_hours);
    } else {
      d.test_x.push_back(x);
      d.test_hours.push_back(e.duration_hours);
    }
  }
  return d;
}

}  // namespace bugdestiny::app
