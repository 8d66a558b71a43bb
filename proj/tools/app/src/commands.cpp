// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include "bugdestiny/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bugdestiny/app/cache.hpp"
#include "bugdestiny/app/pipeline.hpp"
#include "bugdestiny/binio.hpp"
#include "bugdestiny/csv.hpp"
#include "bugdestiny/error.hpp"

#ifndef BUGDESTINY_VERSION
#define BUGDESTINY_VERSION "0.0.0"
#endif

namespace bugdestiny::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

void write_text(const fs::path& path, std::string_view text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw DataError("cannot write " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

SentimentLexicon load_lexicon(const RunConfig& config, std::ostream& log) {
  LexiconLoadReport report;
  auto lexicon = SentimentLexicon::load(config.paths.lexicon, &report);
  log << "lexicon: " << lexicon.entry_count() << " word forms from " << report.synsets << " synsets";
  if (report.malformed_lines > 0) log << ", " << report.malformed_lines << " malformed lines skipped";
  log << "\n";
  return lexicon;
}

std::vector<BugReport> load_reports(const RunConfig& config) {
  return load_corpus_cache(config.paths.output_dir / kCorpusCacheFile).reports;
}

void check_task_flags(const RunConfig& config) {
  const bool classification =
      config.task == Task::TimeToResolution || config.task == Task::TimeToFix || config.task == Task::Destiny;
  if (config.subset && *config.subset != Subset::Full && config.task != Task::NumericTime) {
    throw ConfigError("subset " + std::string(to_string(*config.subset)) + " applies only to NUMERIC_TIME, not " +
                      std::string(to_string(config.task)));
  }
  if (config.balancing && *config.balancing != Balancing::None && !classification) {
    throw ConfigError("balancing " + std::string(to_string(*config.balancing)) +
                      " applies only to classification tasks, not " + std::string(to_string(config.task)));
  }
}

json class_report_json(const ClassificationOutcome& o) {
  const auto& r = o.row.report;
  json per_class = json::object();
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    const auto& m = r.per_class[i];
    per_class[r.classes[i]] = {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"support", m.support}};
  }
  json matrix = json::array();
  for (std::size_t i = 0; i < o.confusion.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < o.confusion.size(); ++j) row.push_back(o.confusion.at(i, j));
    matrix.push_back(row);
  }
  return {{"model", o.row.label},
          {"slug", o.slug},
          {"precision", r.precision},
          {"recall", r.recall},
          {"f1", r.f1},
          {"accuracy", r.accuracy},
          {"total", r.total},
          {"train_rows", o.train_rows},
          {"synthetic_rows", o.synthetic_rows},
          {"per_class", per_class},
          {"confusion", matrix}};
}

json regression_report_json(const RegressionOutcome& o) {
  const auto& r = o.row.report;
  return {{"model", o.row.label},
          {"slug", o.slug},
          {"subset", to_string(o.subset)},
          {"mae", r.mae},
          {"mse", r.mse},
          {"r2", r.r2 ? json(*r.r2) : json(nullptr)},
          {"n", r.n},
          {"train_rows", o.train_rows}};
}

std::vector<Balancing> balancing_variants(const RunConfig& config) {
  if (config.balancing) return {*config.balancing};
  return {Balancing::None, Balancing::Smote};
}

std::vector<Subset> subset_variants(const RunConfig& config) {
  if (config.subset) return {*config.subset};
  return {Subset::Full, Subset::Short, Subset::Long};
}

void export_features(const Workspace& ws, const RunConfig& config, const ClassificationTask& task) {
  FeatureConfig fc = config.features;
  fc.topic_count = config.topics.k;
  fc.use_topic = ws.topics.has_value();
  const std::string column = task.task == Task::Destiny ? "destiny" : "time_class";
  for (const bool train : {true, false}) {
    const auto& examples = train ? task.train : task.test;
    const auto& labels = train ? task.train_labels : task.test_labels;
    std::vector<LabeledRow> rows;
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < examples.size(); ++i) {
      rows.push_back({featurize(ws, examples[i], fc), labels[i]});
      ids.push_back(examples[i].report_id);
    }
    std::ostringstream out;
    write_feature_table(out, fc, rows, column, task.class_names, ids);
    write_text(config.paths.output_dir / "features" / (task_slug(task.task) + (train ? "_train.csv" : "_test.csv")),
               out.str());
  }
}

ReportTable run_classification(Workspace& ws, const RunConfig& config, std::ostream& log) {
  const fs::path& out = config.paths.output_dir;
  const auto task = make_classification_task(ws, config, config.task);
  const std::string slug = task_slug(config.task);
  log << task.title << ": " << task.train.size() << " train / " << task.test.size() << " test\n";
  for (const auto& n : task.notes) log << "  note: " << n << "\n";

  if (!ws.topics) {
    log << "fitting topic model (k=" << config.topics.k << ")\n";
    fit_workspace_topics(ws, config);
    save_topic_model(*ws.topics, out / kTopicModelFile);
  }
  if (config.export_features) export_features(ws, config, task);

  std::vector<ClassificationRow> rows;
  json results = json::array();
  for (ModelKind kind : config.classification_models) {
    for (const bool use_topic : {false, true}) {
      for (Balancing balancing : balancing_variants(config)) {
        auto o = run_classifier(ws, config, task, kind, use_topic, balancing);
        log << "  " << o.row.label << ": accuracy " << fmt(o.row.report.accuracy, 4) << "\n";
        for (const auto& w : o.warnings) log << "  warning: " << w << "\n";
        save_bundle(o.bundle, out / "models" / slug / (o.slug + ".bdmodel"), slug, o.row.label);
        std::ostringstream pred;
        pred << "id,true,predicted\n";
        for (std::size_t i = 0; i < task.test.size(); ++i) {
          pred << csv::escape(task.test[i].report_id) << ',' << task.class_names[task.test_labels[i]] << ','
               << task.class_names[o.predicted[i]] << '\n';
        }
        write_text(out / "predictions" / slug / (o.slug + ".csv"), pred.str());
        results.push_back(class_report_json(o));
        rows.push_back(o.row);
      }
    }
  }

  std::string text = format_classification_table(task.title, rows);
  text += "\n";
  text += "train " + std::to_string(task.train.size()) + " / test " + std::to_string(task.test.size()) + "\n";
  if (task.threshold_hours) text += "SHORT/LONG threshold: " + fmt(*task.threshold_hours) + " hours\n";
  for (const auto& n : task.notes) text += n + "\n";

  json report = {{"task", to_string(config.task)},
                 {"classes", task.class_names},
                 {"train", task.train.size()},
                 {"test", task.test.size()},
                 {"threshold_hours", task.threshold_hours ? json(*task.threshold_hours) : json(nullptr)},
                 {"notes", task.notes},
                 {"rows", results}};
  write_text(out / "reports" / (slug + ".json"), report.dump(2) + "\n");
  ReportTable table{fs::path("tables") / (slug + ".txt"), text};
  write_text(out / table.file, text);
  return table;
}

std::vector<ReportTable> run_numeric(Workspace& ws, const RunConfig& config, std::ostream& log) {
  const fs::path& out = config.paths.output_dir;
  if (config.features.use_topic && !ws.topics) {
    log << "fitting topic model (k=" << config.topics.k << ")\n";
    fit_workspace_topics(ws, config);
    save_topic_model(*ws.topics, out / kTopicModelFile);
  }
  std::vector<ReportTable> tables;
  for (const bool fixed_only : {false, true}) {
    const auto task = make_regression_task(ws, config, fixed_only);
    log << task.title << ": " << task.examples.size() << " reports\n";
    std::vector<RegressionRow> rows;
    json results = json::array();
    for (ModelKind kind : config.regression_models) {
      for (Subset subset : subset_variants(config)) {
        auto o = run_regressor(ws, config, task, kind, subset);
        log << "  " << o.row.label << ": MAE " << thousands(o.row.report.mae) << " hours\n";
        save_bundle(o.bundle, out / "models" / task.slug / (o.slug + ".bdmodel"), task.slug, o.row.label);
        std::ostringstream pred;
        pred << "id,true_hours,predicted_hours\n";
        pred.precision(17);
        for (std::size_t i = 0; i < o.truth.size(); ++i) {
          pred << csv::escape(o.test_ids[i]) << ',' << o.truth[i] << ',' << o.predicted[i] << '\n';
        }
        write_text(out / "predictions" / task.slug / (o.slug + ".csv"), pred.str());
        results.push_back(regression_report_json(o));
        rows.push_back(o.row);
      }
    }
    std::string text = format_regression_table(task.title, rows);
    text += "\nSHORT/LONG threshold: " + fmt(task.threshold_hours) + " hours\n";
    json report = {{"task", task.slug}, {"threshold_hours", task.threshold_hours}, {"rows", results}};
    write_text(out / "reports" / (task.slug + ".json"), report.dump(2) + "\n");
    ReportTable table{fs::path("tables") / (task.slug + ".txt"), text};
    write_text(out / table.file, text);
    tables.push_back(std::move(table));
  }
  return tables;
}

SvrOptions svr_options(const RunConfig& config) {
  SvrOptions o = config.svr;
  o.train.seed = config.stream_seed(binio::fnv1a64("correlation/svr"));
  return o;
}

ReportTable run_correlation(const Workspace& ws, const RunConfig& config, std::ostream& log) {
  const auto d = make_correlation_data(ws);
  const auto fit = train_svr(d.train_x, d.train_hours, d.test_x, d.test_hours, svr_options(config));
  std::string text = "Emotionality vs time-to-resolution (linear epsilon-SVR)\n";
  text += "slope:      " + fmt(fit.slope) + " hours per unit of emotionality\n";
  text += "intercept:  " + fmt(fit.intercept) + " hours\n";
  text += "test R^2:   " + (fit.test_r2 ? fmt(*fit.test_r2, 4) : std::string("undefined")) + "\n";
  text += "train rows: " + std::to_string(d.train_x.size()) + "\n";
  text += "test rows:  " + std::to_string(fit.test_rows) + "\n";
  log << text;
  json report = {{"task", "CORRELATION"},
                 {"slope", fit.slope},
                 {"intercept", fit.intercept},
                 {"r2", fit.test_r2 ? json(*fit.test_r2) : json(nullptr)},
                 {"train_rows", d.train_x.size()},
                 {"test_rows", fit.test_rows},
                 {"epsilon", config.svr.epsilon},
                 {"lambda", config.svr.lambda}};
  write_text(config.paths.output_dir / "reports" / "correlation.json", report.dump(2) + "\n");
  ReportTable table{fs::path("tables") / "correlation.txt", text};
  write_text(config.paths.output_dir / table.file, text);
  return table;
}

struct InputReport {
  std::string id;
  std::string description;
  std::string priority;
};

std::vector<InputReport> read_prediction_input(const RunConfig& config, const PredictInput& input) {
  std::vector<InputReport> out;
  if (input.file.empty()) {
    out.push_back({input.id, input.text, input.priority});
    return out;
  }
  std::ifstream in(input.file, std::ios::binary);
  if (!in) throw ConfigError("cannot open prediction input: " + input.file.string());
  if (input.file.extension() == ".csv") {
    csv::Reader reader(in, config.columns.delimiter);
    std::vector<std::string> header, fields;
    if (!reader.next(header)) throw DataError("prediction input is empty: " + input.file.string());
    const auto col = [&](const std::string& name, bool required) -> std::ptrdiff_t {
      auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end()) {
        if (required) throw ConfigError("prediction input lacks column '" + name + "'");
        return -1;
      }
      return it - header.begin();
    };
    const auto id = col(config.columns.id, false);
    const auto desc = col(config.columns.description, true);
    const auto prio = col(config.columns.priority, false);
    while (reader.next(fields)) {
      if (fields.size() == 1 && fields[0].empty()) continue;
      const auto get = [&](std::ptrdiff_t c) {
        return c >= 0 && static_cast<std::size_t>(c) < fields.size() ? fields[static_cast<std::size_t>(c)]
                                                                      : std::string();
      };
      out.push_back({id >= 0 ? get(id) : std::to_string(out.size() + 1), get(desc), get(prio)});
    }
    return out;
  }
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      InputReport r;
      r.id = j.contains("id") ? (j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump())
                              : std::to_string(out.size() + 1);
      r.description = j.value("description", std::string());
      if (j.contains("priority") && !j["priority"].is_null()) {
        r.priority = j["priority"].is_string() ? j["priority"].get<std::string>() : j["priority"].dump();
      }
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw DataError(input.file.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

json distribution(const std::vector<std::string>& names, const std::vector<double>& p) {
  json j = json::object();
  for (std::size_t i = 0; i < names.size(); ++i) j[names[i]] = p[i];
  return j;
}

std::string render_svg(const std::vector<double>& x, const std::vector<double>& y, double slope, double intercept) {
  constexpr double W = 640, H = 480, L = 70, R = 20, T = 30, B = 50;
  double x_max = 0, y_max = 0;
  for (double v : x) x_max = std::max(x_max, v);
  for (double v : y) y_max = std::max(y_max, v);
  if (x_max <= 0) x_max = 1;
  if (y_max <= 0) y_max = 1;
  const auto sx = [&](double v) { return L + (W - L - R) * v / x_max; };
  const auto sy = [&](double v) { return H - B - (H - T - B) * std::clamp(v, 0.0, y_max) / y_max; };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
    << ' ' << H << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
    << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  s << "<text x=\"" << (W + L - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"13\">"
    << "Emotionality (0 to " << fmt(x_max) << ")</text>\n";
  s << "<text x=\"16\" y=\"" << (H - B + T) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
    << (H - B + T) / 2 << ")\">Hours to resolution (0 to " << thousands(y_max) << ")</text>\n";
  s << "<g fill=\"steelblue\" fill-opacity=\"0.35\">\n";
  const std::size_t step = std::max<std::size_t>(1, x.size() / 5000);
  for (std::size_t i = 0; i < x.size(); i += step) {
    s << "<circle cx=\"" << fmt(sx(x[i]), 1) << "\" cy=\"" << fmt(sy(y[i]), 1) << "\" r=\"1.5\"/>\n";
  }
  s << "</g>\n";
  s << "<line x1=\"" << fmt(sx(0), 1) << "\" y1=\"" << fmt(sy(intercept), 1) << "\" x2=\"" << fmt(sx(x_max), 1)
    << "\" y2=\"" << fmt(sy(intercept + slope * x_max), 1) << "\" stroke=\"firebrick\" stroke-width=\"2\"/>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace

void write_manifest(const RunConfig& config, std::string_view command) {
  const json j = {{"command", command},
                  {"version", BUGDESTINY_VERSION},
                  {"seed", config.seed},
                  {"config_digest", config.digest()},
                  {"config", json::parse(config.to_json())}};
  write_text(config.paths.output_dir / ("manifest_" + std::string(command) + ".json"), j.dump(2) + "\n");
}

IngestResult cmd_ingest(const RunConfig& config, std::ostream& log) {
  require_paths(config, "ingest");
  write_manifest(config, "ingest");

  const std::string bytes = read_text(config.paths.corpus);
  std::istringstream in(bytes);
  auto parsed = parse_corpus(in, config.columns);
  CorpusCache cache;
  cache.stats = parsed.stats;
  cache.source_digest = binio::hex64(binio::fnv1a64(config.to_json(), binio::fnv1a64(bytes)));
  cache.reports = std::move(parsed.reports);
  save_corpus_cache(cache, config.paths.output_dir / kCorpusCacheFile);

  const auto& s = cache.stats;
  const auto split = chronological_split(cache.reports, config.train_fraction);
  auto examples = derive_examples(cache.reports);
  const auto resolution = assign_time_classes(examples.examples, config.short_fraction, config.quantile_basis,
                                              split.train_ids);
  const auto pruned = prune_unseen_labels(split, examples.examples);

  std::map<std::string, std::size_t> labels;
  for (const auto& e : examples.examples) ++labels[std::string(to_string(e.destiny_label))];
  json dropped = json::array();
  for (Resolution r : pruned.split.dropped_labels) dropped.push_back(to_string(r));

  json summary = {{"source", config.paths.corpus.string()},
                  {"source_digest", cache.source_digest},
                  {"rows_read", s.rows_read},
                  {"accepted", s.accepted},
                  {"rejected",
                   {{"timestamp", s.rejected_timestamp},
                    {"resolved_before_created", s.rejected_order},
                    {"duplicate_id", s.rejected_duplicate_id},
                    {"short_row", s.rejected_short_row}}},
                  {"missing_priority", s.missing_priority},
                  {"unknown_resolution", s.unknown_resolution},
                  {"labeled", examples.examples.size()},
                  {"unlabeled", examples.skipped},
                  {"split", {{"train", split.train_ids.size()}, {"test", split.test_ids.size()}}},
                  {"labels", labels},
                  {"time_to_resolution",
                   {{"threshold_hours", resolution.threshold_hours},
                    {"short", resolution.short_count},
                    {"long", resolution.long_count},
                    {"warnings", resolution.warnings}}},
                  {"destiny", {{"dropped_labels", dropped}, {"removed_test_reports", pruned.removed}}}};

  std::vector<LabeledExample> fixed;
  for (const auto& e : examples.examples) {
    if (e.destiny_label == Resolution::Fixed) fixed.push_back(e);
  }
  if (!fixed.empty()) {
    const auto fix = assign_time_classes(fixed, config.short_fraction, config.quantile_basis, split.train_ids);
    summary["time_to_fix"] = {{"fixed", fixed.size()},
                              {"threshold_hours", fix.threshold_hours},
                              {"short", fix.short_count},
                              {"long", fix.long_count}};
  } else {
    summary["time_to_fix"] = {{"fixed", 0}};
  }

  IngestResult result;
  result.summary_json = summary.dump(2) + "\n";
  result.reports = cache.reports.size();
  result.train = split.train_ids.size();
  result.test = split.test_ids.size();
  write_text(config.paths.output_dir / kIngestSummaryFile, result.summary_json);

  log << "rows read:            " << s.rows_read << "\n";
  log << "reports accepted:     " << s.accepted << "\n";
  log << "rows rejected:        " << s.rejected() << " (timestamp " << s.rejected_timestamp << ", order "
      << s.rejected_order << ", duplicate id " << s.rejected_duplicate_id << ", short row " << s.rejected_short_row
      << ")\n";
  log << "priority imputed:     " << s.missing_priority << "\n";
  log << "labeled examples:     " << examples.examples.size() << " (" << examples.skipped << " unresolved)\n";
  log << "split:                " << split.train_ids.size() << " train / " << split.test_ids.size() << " test\n";
  log << "SHORT/LONG threshold: " << fmt(resolution.threshold_hours) << " hours (" << resolution.short_count
      << " SHORT, " << resolution.long_count << " LONG)\n";
  log << "FIXED reports:        " << fixed.size() << "\n";
  log << "dropped labels:       " << (dropped.empty() ? std::string("none") : dropped.dump()) << " ("
      << pruned.removed << " test reports)\n";
  return result;
}

ExperimentResult cmd_experiment(const RunConfig& config, std::ostream& log) {
  require_paths(config, "experiment");
  check_task_flags(config);
  write_manifest(config, "experiment");
  const auto lexicon = load_lexicon(config, log);
  auto ws = prepare_workspace(config, load_reports(config), lexicon);

  ExperimentResult result;
  switch (config.task) {
    case Task::TimeToResolution:
    case Task::TimeToFix:
    case Task::Destiny:
      result.tables.push_back(run_classification(ws, config, log));
      break;
    case Task::NumericTime:
      result.tables = run_numeric(ws, config, log);
      break;
    case Task::Correlation:
      result.tables.push_back(run_correlation(ws, config, log));
      break;
  }
  return result;
}

std::size_t cmd_predict(const RunConfig& config, const PredictInput& input, std::ostream& out) {
  require_paths(config, "predict");
  const fs::path& dir = config.paths.output_dir;
  const auto resolve = [&](const fs::path& p) { return p.is_absolute() ? p : dir / p; };

  struct Part {
    const char* name;
    std::optional<ModelBundle> bundle;
  };
  Part parts[] = {{"time_class", {}}, {"destiny", {}}, {"hours", {}}};
  const fs::path paths[] = {config.predict.time_class, config.predict.destiny, config.predict.hours};
  bool any_topic = false;
  for (std::size_t i = 0; i < 3; ++i) {
    if (paths[i].empty()) continue;
    parts[i].bundle = load_bundle(resolve(paths[i]));
    any_topic = any_topic || parts[i].bundle->features.use_topic;
  }
  if (!parts[0].bundle && !parts[1].bundle && !parts[2].bundle) throw ConfigError("predict: every model is disabled");

  std::optional<TopicModel> topics;
  if (any_topic) {
    topics = load_topic_model(dir / kTopicModelFile);
    if (topics->backend.kind() == EmbeddingKind::ExternalVectors) {
      if (config.paths.vectors.empty()) throw ConfigError("the topic model needs paths.vectors");
      topics->backend.attach(ExternalVectors::load(config.paths.vectors));
    }
  }

  std::ostringstream ignore;
  const auto lexicon = load_lexicon(config, ignore);
  const auto reports = read_prediction_input(config, input);
  std::map<std::pair<Normalization, std::size_t>, PrepConfig> preps;
  const auto prep_for = [&](const ModelBundle& b) -> const PrepConfig& {
    auto key = std::make_pair(b.normalization, b.min_token_length);
    auto it = preps.find(key);
    if (it == preps.end()) {
      RunConfig c = config;
      c.normalization = b.normalization;
      c.min_token_length = b.min_token_length;
      it = preps.emplace(key, make_prep_config(c, lexicon)).first;
    }
    return it->second;
  };

  for (const auto& r : reports) {
    const auto parsed_priority = parse_priority(r.priority);
    const int priority = parsed_priority.value_or(kImputedPriority);
    json rec = {{"id", r.id}, {"priority", priority}, {"priority_imputed", !parsed_priority.has_value()}};
    bool scored = false;
    for (const auto& part : parts) {
      if (!part.bundle) continue;
      const auto& b = *part.bundle;
      const auto stream = preprocess(r.description, prep_for(b), r.id);
      const auto score = score_document(stream, lexicon);
      if (!scored) {
        rec["emotion"] = score.emotion_value;
        rec["emotionality"] = score.emotionality;
        scored = true;
      }
      std::optional<int> topic;
      if (b.features.use_topic) {
        topic = assign_topic(stream, *topics);
        rec["topic"] = *topic;
      }
      const auto x = b.prepare(featurize(score, priority, topic, b.features));
      const std::string name = part.name;
      if (name == "hours") {
        rec["estimated_hours"] = b.model.predict_value(x);
      } else {
        const auto p = b.model.predict_proba(x);
        rec[name] = b.class_names.at(static_cast<std::size_t>(b.model.predict_class(x)));
        rec[name + "_probabilities"] = distribution(b.class_names, p);
      }
    }
    out << rec.dump() << "\n";
  }
  return reports.size();
}

ScatterResult cmd_plot_scatter(const RunConfig& config, bool svg, std::ostream& log) {
  require_paths(config, "plot-scatter");
  write_manifest(config, "plot-scatter");
  const auto lexicon = load_lexicon(config, log);
  const auto ws = prepare_workspace(config, load_reports(config), lexicon);
  const auto d = make_correlation_data(ws);
  const auto fit = train_svr(d.train_x, d.train_hours, d.test_x, d.test_hours, svr_options(config));

  std::ostringstream csv_out;
  csv_out.precision(17);
  csv_out << "emotionality,duration_hours\n";
  for (std::size_t i = 0; i < d.test_x.size(); ++i) csv_out << d.test_x[i] << ',' << d.test_hours[i] << '\n';
  const fs::path dir = config.paths.output_dir / "scatter";
  write_text(dir / "scatter.csv", csv_out.str());

  const json meta = {{"rows", d.test_x.size()},
                     {"train_rows", d.train_x.size()},
                     {"x", "emotionality"},
                     {"y", "duration_hours"},
                     {"split", "test"},
                     {"model", "linear epsilon-SVR"},
                     {"slope", fit.slope},
                     {"intercept", fit.intercept},
                     {"r2", fit.test_r2 ? json(*fit.test_r2) : json(nullptr)},
                     {"epsilon", config.svr.epsilon},
                     {"lambda", config.svr.lambda}};
  write_text(dir / "scatter.json", meta.dump(2) + "\n");
  if (svg) write_text(dir / "scatter.svg", render_svg(d.test_x, d.test_hours, fit.slope, fit.intercept));

  log << "scatter: " << d.test_x.size() << " test rows, slope " << fmt(fit.slope) << ", intercept "
      << fmt(fit.intercept) << ", R^2 " << (fit.test_r2 ? fmt(*fit.test_r2, 4) : std::string("undefined")) << "\n";
  return {d.test_x.size(), fit.slope, fit.intercept, fit.test_r2};
}

}  // namespace bugdestiny::app
