// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bugdestiny/app/commands.hpp"
#include "bugdestiny/app/config.hpp"
#include "bugdestiny/error.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace bugdestiny;

  CLI::App cli{"Predict bug report resolution time and outcome from sentiment, priority and topic."};
  cli.require_subcommand(1);
  cli.fallthrough();

  std::string config_path, task, balancing, subset, out;
  std::uint64_t seed = 0;
  cli.add_option("--config", config_path, "JSON run configuration")->required();
  auto* seed_opt = cli.add_option("--seed", seed, "Seed for every random stream");
  cli.add_option("--task", task, "TIME_TO_RESOLUTION, TIME_TO_FIX, NUMERIC_TIME, DESTINY or CORRELATION");
  cli.add_option("--balancing", balancing, "NONE, SMOTE or CLASS_WEIGHTS (default: NONE and SMOTE rows)");
  cli.add_option("--subset", subset, "FULL, SHORT or LONG (NUMERIC_TIME only)");
  cli.add_option("--out", out, "Output directory");

  auto* ingest = cli.add_subcommand("ingest", "Parse the export and cache it with split statistics");
  auto* experiment = cli.add_subcommand("experiment", "Run the model grid for the selected task");
  auto* predict = cli.add_subcommand("predict", "Score new reports with saved models (JSON lines on stdout)");
  auto* scatter = cli.add_subcommand("plot-scatter", "Emotionality vs hours scatter data and SVR line");

  app::PredictInput input;
  predict->add_option("--input", input.file, "JSON lines or CSV file of reports");
  predict->add_option("--text", input.text, "Description of a single report");
  predict->add_option("--priority", input.priority, "Priority of the single report (P1..P5)");
  predict->add_option("--id", input.id, "Id of the single report");
  bool svg = false;
  scatter->add_flag("--svg", svg, "Also render scatter.svg");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    auto config = app::RunConfig::load(config_path);
    if (*seed_opt) config.seed = seed;
    if (!task.empty()) {
      auto t = app::parse_task(task);
      if (!t) throw ConfigError("unknown task '" + task + "'");
      config.task = *t;
    }
    if (!balancing.empty()) {
      auto b = app::parse_balancing(balancing);
      if (!b) throw ConfigError("unknown balancing '" + balancing + "'");
      config.balancing = *b;
    }
    if (!subset.empty()) {
      auto s = app::parse_subset(subset);
      if (!s) throw ConfigError("unknown subset '" + subset + "'");
      config.subset = *s;
    }
    if (!out.empty()) config.paths.output_dir = out;

    if (*ingest) {
      app::cmd_ingest(config, std::cout);
    } else if (*experiment) {
      const auto result = app::cmd_experiment(config, std::cerr);
      for (const auto& t : result.tables) std::cout << t.text << "\n";
    } else if (*predict) {
      if (input.file.empty() && input.text.empty() && input.priority.empty()) {
        throw ConfigError("predict needs --input or --text/--priority");
      }
      app::cmd_predict(config, input, std::cout);
    } else if (*scatter) {
      app::cmd_plot_scatter(config, svg, std::cout);
    }
  } catch (const ConfigError& e) {
    std::cerr << "bugdestiny: configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "bugdestiny: error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
