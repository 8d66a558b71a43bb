// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include "bugdestiny/synthetic.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "bugdestiny/csv.hpp"
#include "bugdestiny/random.hpp"

namespace bugdestiny {
namespace {

struct Theme {
  const char* component;
  double log_hours_shift;
  double fix_bias;
  std::vector<const char*> words;
};

const std::vector<Theme>& themes() {
  static const std::vector<Theme> t = {
      {"UI", 0.0, 0.05, {"dialog", "button", "window", "layout", "label", "menu", "toolbar", "icon",
                         "wizard", "preference", "page", "view", "shell", "widget"}},
      {"Debug", 0.3, 0.0, {"debugger", "breakpoint", "thread", "stack", "frame", "variable", "launch",
                           "console", "step", "suspend", "watch", "expression", "process"}},
      {"Ant", 0.6, -0.1, {"build", "ant", "target", "classpath", "jar", "script", "property", "task",
                          "compile", "output", "builder", "path"}},
      {"Text", -0.2, 0.05, {"editor", "text", "cursor", "selection", "document", "line", "font", "scroll",
                            "highlight", "annotation", "ruler", "search", "replace"}},
      {"Resources", 0.4, -0.05, {"workspace", "project", "folder", "file", "resource", "marker", "refresh",
                                 "delete", "copy", "link", "filesystem", "encoding"}},
      {"Runtime", 0.8, -0.15, {"plugin", "extension", "bundle", "registry", "startup", "preference", "job",
                               "adapter", "platform", "osgi", "activator", "classloader"}},
  };
  return t;
}

struct Word {
  const char* text;
  double pos;
  double neg;
};

// Sentiment vocabulary; scores are what write_synthetic_lexicon emits.
constexpr std::array<Word, 14> kNegative = {{
    {"crash", 0.0, 0.625}, {"fail", 0.0, 0.75},      {"broken", 0.0, 0.5},   {"error", 0.0, 0.5},
    {"wrong", 0.0, 0.625}, {"terrible", 0.0, 0.875}, {"annoying", 0.0, 0.75}, {"freeze", 0.125, 0.375},
    {"bad", 0.0, 0.625},   {"corrupt", 0.0, 0.625},  {"lost", 0.0, 0.5},     {"hang", 0.0, 0.375},
    {"slow", 0.0, 0.375},  {"ugly", 0.0, 0.75},
}};

constexpr std::array<Word, 10> kPositive = {{
    {"good", 0.75, 0.0},   {"works", 0.375, 0.0},  {"great", 0.75, 0.0},   {"nice", 0.625, 0.0},
    {"helpful", 0.5, 0.0}, {"improve", 0.5, 0.0},  {"correct", 0.625, 0.0}, {"success", 0.75, 0.0},
    {"clean", 0.5, 0.125}, {"easy", 0.625, 0.0},
}};

constexpr std::array<const char*, 24> kFiller = {
    "the", "when", "after", "i", "it", "is", "this", "with", "open", "click", "using", "shows",
    "appears", "should", "does", "not", "new", "java", "eclipse", "steps", "reproduce", "see", "then", "again"};

constexpr std::array<const char*, 6> kStatus = {"RESOLVED", "VERIFIED", "CLOSED", "RESOLVED", "RESOLVED", "CLOSED"};

const char* pick(Rng& rng, std::span<const char* const> words) { return words[rng.below(words.size())]; }

std::string local_time(std::chrono::sys_seconds t) {
  using namespace std::chrono;
  const auto local = t - hours(4);
  const auto day = floor<days>(local);
  const year_month_day ymd(day);
  const hh_mm_ss hms(local - day);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02ld:%02ld:%02ld -0400", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                static_cast<long>(hms.seconds().count()));
  return buf;
}

std::string resolution_for(Rng& rng, double fix_probability, bool late) {
  if (rng.uniform() < fix_probability) return "FIXED";
  const double u = rng.uniform();
  if (late && u < 0.08) return "NOT_ECLIPSE";
  if (u < 0.30) return "DUPLICATE";
  if (u < 0.52) return "WONTFIX";
  if (u < 0.74) return "WORKSFORME";
  if (u < 0.94) return "INVALID";
  return "NDUPLICATE";
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << csv::escape(fields[i]);
  }
  out << '\n';
}

}  // namespace

void write_synthetic_corpus(std::ostream& out, const SyntheticCorpusOptions& options) {
  using namespace std::chrono;
  Rng rng(options.seed);
  write_row(out, {"Issue_id", "Priority", "Component", "Duplicated_issue", "Title", "Description", "Status",
                  "Resolution", "Version", "Created_time", "Resolved_time"});

  // 2001-10-11 02:36:00 UTC, i.e. 2001-10-10 22:36 local.
  sys_seconds created = sys_days(year(2001) / October / 11) + hours(2) + minutes(36);
  const auto& all_themes = themes();
  for (std::size_t i = 0; i < options.reports; ++i) {
    created += seconds(60 + static_cast<std::int64_t>(-std::log(1.0 - rng.uniform()) * 6600.0));
    const Theme& theme = all_themes[rng.below(all_themes.size())];

    const double p = rng.uniform();
    const int priority = p < 0.04 ? 1 : p < 0.14 ? 2 : p < 0.90 ? 3 : p < 0.97 ? 4 : 5;

    // Mood shifts the balance of sentiment words in the description.
    const double mood = rng.normal();
    const std::size_t length = 8 + rng.below(22);
    std::string description;
    std::string title;
    int neg_words = 0;
    int pos_words = 0;
    for (std::size_t w = 0; w < length; ++w) {
      const double u = rng.uniform();
      std::string word;
      if (u < 0.40) {
        word = theme.words[rng.below(theme.words.size())];
      } else if (u < 0.40 + 0.10 * (1.0 + std::tanh(mood))) {
        if (mood > 0.0) {
          word = kNegative[rng.below(kNegative.size())].text;
          ++neg_words;
        } else {
          word = kPositive[rng.below(kPositive.size())].text;
          ++pos_words;
        }
      } else if (u < 0.97) {
        word = pick(rng, kFiller);
      } else {
        word = std::to_string(rng.below(400));
      }
      if (!description.empty()) description += ' ';
      description += word;
      if (w < 5) title += (w ? " " : "") + word;
    }
    description += '.';

    const double log_hours = 3.4 + 0.45 * (priority - 3) + theme.log_hours_shift + 0.18 * neg_words -
                             0.12 * pos_words + 1.7 * rng.normal();
    const double hours_open = std::exp(log_hours);
    const bool late = static_cast<double>(i) >= options.late_label_start * static_cast<double>(options.reports);
    const double fix_probability = 0.55 + theme.fix_bias - 0.06 * (priority - 3) - 0.02 * neg_words;

    const std::string id = std::to_string(1000 + i);
    std::string priority_text = "P" + std::to_string(priority);
    if (rng.uniform() < options.missing_priority_rate) priority_text.clear();

    std::string resolution, resolved, status = "NEW", duplicate;
    if (rng.uniform() >= options.unresolved_rate) {
      resolution = resolution_for(rng, fix_probability, late);
      resolved = local_time(created + seconds(static_cast<std::int64_t>(hours_open * 3600.0) + 60));
      status = kStatus[rng.below(kStatus.size())];
      if (resolution == "DUPLICATE" && i > 0) duplicate = std::to_string(1000 + rng.below(i));
    }
    const std::string version = "3." + std::to_string(i * 8 / std::max<std::size_t>(options.reports, 1));
    write_row(out, {id, priority_text, theme.component, duplicate, title, description, status, resolution, version,
                    local_time(created), resolved});
  }

  for (std::size_t i = 0; i < options.corrupt_rows; ++i) {
    const std::string id = std::to_string(1000 + options.reports + i);
    if (i % 2 == 0) {
      write_row(out, {id, "P3", "UI", "", "bad row", "unparseable timestamp", "RESOLVED", "FIXED", "3.0",
                      "not a date", local_time(created)});
    } else {
      write_row(out, {id, "P3", "UI", "", "bad row", "resolved before created", "RESOLVED", "FIXED", "3.0",
                      local_time(created), local_time(created - hours(5))});
    }
  }
}

void write_synthetic_lexicon(std::ostream& out) {
  out << "# POS\tID\tPosScore\tNegScore\tSynsetTerms\tGloss\n";
  std::size_t id = 100000;
  const auto emit = [&](const char* pos, const Word& w) {
    char pos_s[16], neg_s[16];
    std::snprintf(pos_s, sizeof pos_s, "%g", w.pos);
    std::snprintf(neg_s, sizeof neg_s, "%g", w.neg);
    out << pos << '\t' << id++ << '\t' << pos_s << '\t' << neg_s << '\t' << w.text << "#1\tsynthetic entry\n";
  };
  for (const auto& w : kNegative) emit("a", w);
  for (const auto& w : kPositive) emit("a", w);
  for (const auto& theme : themes()) {
    for (const char* word : theme.words) emit("n", Word{word, 0.0, 0.0});
  }
  // A second sense so that mean-over-senses matters.
  emit("v", Word{"crash", 0.0, 0.375});
  emit("a", Word{"good", 0.5, 0.0});
  out << "n\t" << id++ << "\t0\t0\tbug_report#1\tmultiword entry\n";
}

}  // namespace bugdestiny
