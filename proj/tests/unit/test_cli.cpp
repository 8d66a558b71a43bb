// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bugdestiny/app/cache.hpp"
#include "bugdestiny/app/commands.hpp"
#include "bugdestiny/app/config.hpp"
#include "bugdestiny/binio.hpp"
#include "bugdestiny/csv.hpp"
#include "bugdestiny/error.hpp"
#include "bugdestiny/eval.hpp"
#include "bugdestiny/synthetic.hpp"

using namespace bugdestiny;
using namespace bugdestiny::app;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("bugdestiny_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

/// Synthetic corpus + lexicon and a fast config in a fresh directory.
RunConfig synthetic_setup(const std::string& name, std::size_t reports = 600) {
  const auto dir = scratch(name);
  {
    std::ofstream corpus(dir / "corpus.csv", std::ios::binary);
    SyntheticCorpusOptions opt;
    opt.reports = reports;
    write_synthetic_corpus(corpus, opt);
    std::ofstream lexicon(dir / "lexicon.txt", std::ios::binary);
    write_synthetic_lexicon(lexicon);
  }
  return RunConfig::from_json_text(R"({
    "paths": {"corpus": "corpus.csv", "lexicon": "lexicon.txt", "output_dir": "out"},
    "topics": {"k": 4},
    "train": {"epochs": 4},
    "svr": {"epochs": 10}
  })",
                                   dir);
}

std::size_t table_rows(const std::string& table, const std::vector<std::string>& prefixes) {
  std::size_t n = 0;
  std::istringstream in(table);
  std::string line;
  while (std::getline(in, line)) {
    for (const auto& p : prefixes) n += line.rfind(p, 0) == 0;
  }
  return n;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  csv::Reader reader(in);
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> fields;
  while (reader.next(fields)) rows.push_back(fields);
  return rows;
}

}  // namespace

TEST_CASE("config defaults and overrides") {
  const auto c = RunConfig::from_json_text("{}");
  CHECK(c.task == Task::TimeToResolution);
  CHECK(c.seed == 42);
  CHECK(c.train.epochs == 50);
  CHECK(c.features.topic_count == 20);
  CHECK_FALSE(c.balancing.has_value());

  const auto d = RunConfig::from_json_text(
      R"({"task": "numeric_time", "seed": 7, "balancing": "SMOTE", "subset": "LONG",
          "paths": {"corpus": "data/x.csv"}, "columns": {"delimiter": "tab", "timestamp_format": "EPOCH_SECONDS"},
          "models": {"mlp_hidden": [8], "regression": ["LINREG"]}, "topics": {"k": 5}})",
      "/base");
  CHECK(d.task == Task::NumericTime);
  CHECK(d.seed == 7);
  CHECK(*d.balancing == Balancing::Smote);
  CHECK(*d.subset == Subset::Long);
  CHECK(d.paths.corpus == fs::path("/base/data/x.csv"));
  CHECK(d.columns.delimiter == '\t');
  CHECK(d.columns.timestamp_format == TimestampFormat::EpochSeconds);
  CHECK(d.mlp_hidden == std::vector<std::size_t>{8});
  CHECK(d.features.topic_count == 5);

  const auto again = RunConfig::from_json_text(d.to_json());
  CHECK(again.to_json() == d.to_json());
  CHECK(again.digest() == d.digest());
  CHECK(RunConfig::from_json_text("{}").digest() != d.digest());
}

TEST_CASE("config errors") {
  CHECK_THROWS_WITH(RunConfig::from_json_text(R"({"tsak": "DESTINY"})"), Catch::Matchers::ContainsSubstring("tsak"));
  CHECK_THROWS_WITH(RunConfig::from_json_text(R"({"train": {"epoch": 3}})"),
                    Catch::Matchers::ContainsSubstring("train.epoch"));
  CHECK_THROWS_AS(RunConfig::from_json_text(R"({"task": "FORECAST"})"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json_text(R"({"train": {"learning_rate": -1}})"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json_text(R"({"train": {"epochs": 0}})"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json_text(R"({"split": {"train_fraction": 1.5}})"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json_text(R"({"models": {"classification": ["LINREG"]}})"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json_text("{not json"), ConfigError);
  CHECK_THROWS_AS(RunConfig::load("/nonexistent/run.json"), ConfigError);

  auto c = RunConfig::from_json_text(R"({"paths": {"corpus": "/nonexistent.csv", "output_dir": "/tmp/x"}})");
  CHECK_THROWS_WITH(require_paths(c, "ingest"), Catch::Matchers::ContainsSubstring("/nonexistent.csv"));
  CHECK_THROWS_AS(require_paths(c, "experiment"), ConfigError);
}

TEST_CASE("corpus cache round trip and corruption") {
  CorpusCache c;
  c.source_digest = "abc";
  c.stats.rows_read = 3;
  c.stats.accepted = 2;
  BugReport a;
  a.id = "1";
  a.description = "crash, \"quoted\"\nnewline";
  a.priority = 2;
  a.created_at = Timestamp(std::chrono::seconds(1000));
  a.resolved_at = Timestamp(std::chrono::seconds(5000));
  a.resolution = Resolution::NotEclipse;
  a.status = "CLOSED";
  BugReport b;
  b.id = "2";
  b.created_at = Timestamp(std::chrono::seconds(-7));
  c.reports = {a, b};

  const auto bytes = encode_corpus_cache(c);
  const auto back = decode_corpus_cache(bytes);
  CHECK(encode_corpus_cache(back) == bytes);
  REQUIRE(back.reports.size() == 2);
  CHECK(back.reports[0].description == a.description);
  CHECK(*back.reports[0].resolution == Resolution::NotEclipse);
  CHECK_FALSE(back.reports[1].priority.has_value());
  CHECK_FALSE(back.reports[1].resolved_at.has_value());
  CHECK(back.reports[1].created_at == b.created_at);
  CHECK(back.stats.rows_read == 3);

  auto cut = bytes;
  cut.resize(cut.size() - 5);
  CHECK_THROWS_AS(decode_corpus_cache(cut), FormatError);
  auto flipped = bytes;
  flipped[20] ^= 0x40;
  CHECK_THROWS_AS(decode_corpus_cache(flipped), FormatError);
  CHECK_THROWS_AS(load_corpus_cache("/nonexistent/corpus.bdcorp"), DataError);
}

TEST_CASE("ingest of the ten-row toy file") {
  const auto dir = scratch("toy");
  fs::copy_file(fs::path(BUGDESTINY_TEST_DATA_DIR) / "toy10.csv", dir / "toy.csv");
  write(dir / "lex.txt", "a\t1\t0.5\t0\tgood#1\t\n");
  const auto config = RunConfig::from_json_text(
      R"({"paths": {"corpus": "toy.csv", "lexicon": "lex.txt", "output_dir": "out"}})", dir);
  std::ostringstream log;
  const auto r = cmd_ingest(config, log);
  CHECK(r.reports == 10);
  CHECK(r.train == 8);
  CHECK(r.test == 2);
  CHECK(log.str().find("8 train / 2 test") != std::string::npos);
  const auto summary = json::parse(r.summary_json);
  CHECK(summary["missing_priority"] == 1);
  CHECK(summary["labels"]["FIXED"] == 5);
  CHECK(summary["destiny"]["dropped_labels"] == json::array({"NOT_ECLIPSE"}));
  CHECK(fs::exists(config.paths.output_dir / "manifest_ingest.json"));

  const auto first = slurp(config.paths.output_dir / kCorpusCacheFile);
  cmd_ingest(config, log);
  CHECK(slurp(config.paths.output_dir / kCorpusCacheFile) == first);
}

TEST_CASE("ingest counts match an independent line count") {
  const auto config = synthetic_setup("count", 800);
  std::ifstream in(config.paths.corpus);
  std::size_t lines = 0;
  std::string line;
  while (std::getline(in, line)) lines += !line.empty();
  std::ostringstream log;
  const auto r = cmd_ingest(config, log);
  const auto summary = json::parse(r.summary_json);
  CHECK(summary["rows_read"] == lines - 1);
  CHECK(r.reports == 800);
  CHECK(r.train == 640);
}

TEST_CASE("classification grid, determinism and flag checks") {
  auto config = synthetic_setup("grid");
  std::ostringstream log;
  cmd_ingest(config, log);
  const auto a = cmd_experiment(config, log);
  REQUIRE(a.tables.size() == 1);
  CHECK(table_rows(a.tables[0].text, {"MLP (", "CNN ("}) == 8);
  const auto b = cmd_experiment(config, log);
  CHECK(b.tables[0].text == a.tables[0].text);
  CHECK(slurp(config.paths.output_dir / "tables" / "time_to_resolution.txt") == a.tables[0].text);

  const auto report = json::parse(slurp(config.paths.output_dir / "reports" / "time_to_resolution.json"));
  REQUIRE(report["rows"].size() == 8);
  for (const auto& row : report["rows"]) CHECK(row["recall"] == row["accuracy"]);

  // Restricting the grid to one balancing mode reproduces those rows exactly.
  auto smote_only = config;
  smote_only.balancing = Balancing::Smote;
  const auto s = cmd_experiment(smote_only, log);
  CHECK(table_rows(s.tables[0].text, {"MLP (", "CNN ("}) == 4);
  std::istringstream lines(s.tables[0].text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("MLP (", 0) == 0 || line.rfind("CNN (", 0) == 0) {
      CHECK(a.tables[0].text.find(line) != std::string::npos);
    }
  }

  auto other_seed = config;
  other_seed.seed = 43;
  CHECK(cmd_experiment(other_seed, log).tables[0].text != a.tables[0].text);

  auto bad = config;
  bad.task = Task::Destiny;
  bad.subset = Subset::Short;
  CHECK_THROWS_AS(cmd_experiment(bad, log), ConfigError);
  bad.subset.reset();
  bad.task = Task::NumericTime;
  bad.balancing = Balancing::Smote;
  CHECK_THROWS_AS(cmd_experiment(bad, log), ConfigError);
}

TEST_CASE("time-to-fix and destiny grids") {
  auto config = synthetic_setup("other_tasks");
  config.classification_models = {ModelKind::Mlp};
  std::ostringstream log;
  cmd_ingest(config, log);
  config.task = Task::TimeToFix;
  CHECK(table_rows(cmd_experiment(config, log).tables[0].text, {"MLP ("}) == 4);
  config.task = Task::Destiny;
  const auto d = cmd_experiment(config, log);
  CHECK(table_rows(d.tables[0].text, {"MLP ("}) == 4);
  const auto report = json::parse(slurp(config.paths.output_dir / "reports" / "destiny.json"));
  CHECK(report["classes"].size() >= 5);
}

TEST_CASE("numeric grid has six rows per table") {
  auto config = synthetic_setup("numeric");
  config.task = Task::NumericTime;
  std::ostringstream log;
  cmd_ingest(config, log);
  const auto r = cmd_experiment(config, log);
  REQUIRE(r.tables.size() == 2);
  for (const auto& t : r.tables) CHECK(table_rows(t.text, {"CNN (", "Linear Regression ("}) == 6);
  CHECK(r.tables[0].text.find("CNN (Full Dataset)") != std::string::npos);

  config.subset = Subset::Long;
  const auto l = cmd_experiment(config, log);
  for (const auto& t : l.tables) CHECK(table_rows(t.text, {"CNN (", "Linear Regression ("}) == 2);
}

TEST_CASE("predict agrees with evaluation and handles batches") {
  auto config = synthetic_setup("predict");
  std::ostringstream log;
  cmd_ingest(config, log);
  cmd_experiment(config, log);
  config.task = Task::Destiny;
  cmd_experiment(config, log);
  config.task = Task::NumericTime;
  config.subset = Subset::Full;
  cmd_experiment(config, log);

  const auto cache = load_corpus_cache(config.paths.output_dir / kCorpusCacheFile);
  std::map<std::string, const BugReport*> by_id;
  for (const auto& r : cache.reports) by_id[r.id] = &r;
  const auto preds = read_csv(config.paths.output_dir / "predictions" / "time_to_resolution" / "mlp.csv");
  REQUIRE(preds.size() > 100);

  const auto batch = config.paths.output_dir / "batch.jsonl";
  {
    std::ofstream out(batch);
    for (std::size_t i = 1; i <= 100; ++i) {
      const auto* r = by_id.at(preds[i][0]);
      json j = {{"id", r->id}, {"description", r->description}};
      if (r->priority) j["priority"] = "P" + std::to_string(*r->priority);
      out << j.dump() << "\n";
    }
  }
  PredictInput input;
  input.file = batch;
  std::ostringstream out;
  CHECK(cmd_predict(config, input, out) == 100);
  std::istringstream lines(out.str());
  std::string line;
  std::size_t i = 1;
  while (std::getline(lines, line)) {
    const auto rec = json::parse(line);
    CHECK(rec["id"] == preds[i][0]);
    CHECK(rec["time_class"] == preds[i][2]);
    double total = 0.0;
    for (const auto& [k, v] : rec["destiny_probabilities"].items()) total += v.get<double>();
    CHECK(std::abs(total - 1.0) < 1e-9);
    CHECK(rec["estimated_hours"].get<double>() >= 0.0);
    ++i;
  }
  CHECK(i == 101);

  PredictInput empty;
  empty.text = "";
  empty.priority = "P3";
  std::ostringstream e;
  CHECK(cmd_predict(config, empty, e) == 1);
  const auto rec = json::parse(e.str());
  CHECK(rec["emotionality"] == 0.0);
  CHECK(rec.contains("time_class"));

  auto missing = config;
  missing.predict.time_class = "models/none/absent.bdmodel";
  CHECK_THROWS_WITH(cmd_predict(missing, empty, e), Catch::Matchers::ContainsSubstring("absent.bdmodel"));
}

TEST_CASE("scatter data and fitted line") {
  auto config = synthetic_setup("scatter");
  std::ostringstream log;
  const auto ingest = cmd_ingest(config, log);
  const auto r = cmd_plot_scatter(config, true, log);
  const auto summary = json::parse(ingest.summary_json);
  const auto rows = read_csv(config.paths.output_dir / "scatter" / "scatter.csv");
  CHECK(rows.size() - 1 == r.rows);

  // Test-split rows among the labeled examples, counted independently.
  std::size_t labeled_test = 0;
  const auto cache = load_corpus_cache(config.paths.output_dir / kCorpusCacheFile);
  const std::size_t train = summary["split"]["train"].get<std::size_t>();
  for (std::size_t i = train; i < cache.reports.size(); ++i) {
    labeled_test += cache.reports[i].resolved_at && cache.reports[i].resolution;
  }
  CHECK(r.rows == labeled_test);

  std::vector<double> truth, line;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x = std::stod(rows[i][0]);
    const double y = std::stod(rows[i][1]);
    CHECK(std::isfinite(x));
    CHECK(y >= 0.0);
    truth.push_back(y);
    line.push_back(r.intercept + r.slope * x);
  }
  const auto meta = json::parse(slurp(config.paths.output_dir / "scatter" / "scatter.json"));
  REQUIRE(meta["r2"].is_number());
  const auto rr = regression_report(truth, line);
  CHECK(std::abs(meta["r2"].get<double>() - *rr.r2) < 1e-9);
  CHECK(slurp(config.paths.output_dir / "scatter" / "scatter.svg").rfind("<svg", 0) == 0);
}

#ifdef BUGDESTINY_CLI_PATH
TEST_CASE("command-line exit codes") {
  const auto config = synthetic_setup("exit");
  const auto dir = config.paths.output_dir.parent_path();
  write(dir / "run.json", R"({"paths": {"corpus": "corpus.csv", "lexicon": "lexicon.txt", "output_dir": "out"}})");
  write(dir / "bad.json", R"({"pahts": {}})");
  const std::string cli = BUGDESTINY_CLI_PATH;
  const auto run = [&](const std::string& args) {
    const int status = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  const std::string run_json = (dir / "run.json").string();
  CHECK(run("--config " + (dir / "bad.json").string() + " ingest") == 2);
  CHECK(run("--config " + run_json + " --task NOPE ingest") == 2);
  CHECK(run("--config " + run_json) == 2);
  CHECK(run("--config " + run_json + " --out " + (dir / "empty").string() + " experiment") == 1);
  CHECK(run("--config " + run_json + " ingest") == 0);
  CHECK(run("--config " + run_json + " --task DESTINY --subset LONG experiment") == 2);
  CHECK(run("--config " + run_json + " --out " + (dir / "empty").string() + " predict --text x") == 1);
  CHECK(run("--help") == 0);
}
#endif
