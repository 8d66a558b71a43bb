// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bugdestiny/corpus.hpp"
#include "bugdestiny/error.hpp"
#include "bugdestiny/random.hpp"

using namespace bugdestiny;

namespace {

const char* kHeader = "Issue_id,Priority,Description,Status,Resolution,Created_time,Resolved_time\n";

ParsedCorpus parse(const std::string& body) {
  std::istringstream in(std::string(kHeader) + body);
  return parse_corpus(in, ColumnMapping{});
}

LabeledExample example(std::string id, double hours, Resolution r = Resolution::Fixed) {
  LabeledExample e;
  e.report_id = std::move(id);
  e.duration_hours = hours;
  e.destiny_label = r;
  return e;
}

std::vector<BugReport> reports_at(const std::vector<int>& hours_after_epoch) {
  std::vector<BugReport> out;
  for (std::size_t i = 0; i < hours_after_epoch.size(); ++i) {
    BugReport r;
    r.id = std::to_string(i + 1);
    r.created_at = Timestamp{} + std::chrono::hours(hours_after_epoch[i]);
    out.push_back(r);
  }
  std::sort(out.begin(), out.end(), chronological_less);
  return out;
}

}  // namespace

TEST_CASE("well-formed rows are parsed and sorted") {
  const auto c = parse(
      "3,P1,third,RESOLVED,FIXED,2001-01-03 00:00:00 -0000,2001-01-04 00:00:00 -0000\n"
      "1,P2,\"first, with comma\",RESOLVED,WONTFIX,2001-01-01 00:00:00 -0000,2001-01-02 00:00:00 -0000\n"
      "2,,second,NEW,,2001-01-02 00:00:00 -0000,\n");
  REQUIRE(c.reports.size() == 3);
  CHECK(c.reports[0].id == "1");
  CHECK(c.reports[1].id == "2");
  CHECK(c.reports[2].id == "3");
  CHECK(c.reports[0].description == "first, with comma");
  CHECK(c.reports[0].resolution == Resolution::WontFix);
  CHECK_FALSE(c.reports[1].resolved_at.has_value());
  CHECK(c.reports[1].priority_imputed());
  CHECK(c.reports[1].effective_priority() == 3);
  CHECK(c.stats.missing_priority == 1);
  CHECK(c.stats.accepted == 3);
}

TEST_CASE("invalid rows are rejected and counted") {
  const auto c = parse(
      "1,P2,ok,RESOLVED,FIXED,2001-01-01 00:00:00 -0000,2001-01-02 00:00:00 -0000\n"
      "2,P2,inverted,RESOLVED,FIXED,2001-01-05 00:00:00 -0000,2001-01-02 00:00:00 -0000\n"
      "3,P2,bad date,RESOLVED,FIXED,yesterday,2001-01-02 00:00:00 -0000\n"
      "1,P2,duplicate id,RESOLVED,FIXED,2001-01-01 00:00:00 -0000,2001-01-02 00:00:00 -0000\n"
      "4,P2\n");
  CHECK(c.reports.size() == 1);
  CHECK(c.stats.rejected_order == 1);
  CHECK(c.stats.rejected_timestamp == 1);
  CHECK(c.stats.rejected_duplicate_id == 1);
  CHECK(c.stats.rejected_short_row == 1);
  CHECK(c.stats.rejected() == 4);
  CHECK(c.stats.rows_read == 5);
}

TEST_CASE("parse errors") {
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_corpus(empty, {}), DataError);
  std::istringstream header_only(kHeader);
  CHECK_THROWS_AS(parse_corpus(header_only, {}), DataError);
  std::istringstream missing("Issue_id,Description\n1,x\n");
  CHECK_THROWS_AS(parse_corpus(missing, {}), ConfigError);
  CHECK_THROWS_AS(parse_corpus(std::filesystem::path("/nonexistent/corpus.csv"), {}), ConfigError);
}

TEST_CASE("custom mapping, delimiter and epoch timestamps") {
  ColumnMapping m;
  m.id = "id";
  m.description = "text";
  m.priority = "prio";
  m.created = "opened";
  m.resolved = "closed";
  m.resolution = "res";
  m.status = "";
  m.delimiter = ';';
  m.timestamp_format = TimestampFormat::EpochSeconds;
  std::istringstream in("id;text;prio;opened;closed;res\nA;hello;4;0;7200;works_for_me\n");
  const auto c = parse_corpus(in, m);
  REQUIRE(c.reports.size() == 1);
  CHECK(c.reports[0].priority == 4);
  CHECK(c.reports[0].resolution == Resolution::WorksForMe);
  CHECK(hours_between(c.reports[0].created_at, *c.reports[0].resolved_at) == 2.0);
}

TEST_CASE("label parsing") {
  CHECK(parse_resolution("wont fix") == Resolution::WontFix);
  CHECK(parse_resolution("NOT_ECLIPSE") == Resolution::NotEclipse);
  CHECK(parse_resolution("nduplicate") == Resolution::NDuplicate);
  CHECK_FALSE(parse_resolution("LATER").has_value());
  for (auto r : kAllResolutions) CHECK(parse_resolution(to_string(r)) == r);
  CHECK(parse_priority("P1") == 1);
  CHECK(parse_priority(" 5 ") == 5);
  CHECK_FALSE(parse_priority("P6").has_value());
  CHECK_FALSE(parse_priority("").has_value());
}

TEST_CASE("derived durations and destiny") {
  std::istringstream in(std::string(kHeader) +
                        "1,P3,a,RESOLVED,FIXED,2001-01-01T00:00Z,2001-01-02T06:00Z\n"
                        "2,P3,b,RESOLVED,WONTFIX,2001-01-01T01:00Z,2001-01-01T02:30Z\n"
                        "3,P3,c,NEW,,2001-01-01T02:00Z,\n");
  const auto c = parse_corpus(in, {});
  const auto d = derive_examples(c.reports);
  REQUIRE(d.examples.size() == 2);
  CHECK(d.skipped == 1);
  CHECK(d.examples[0].duration_hours == 30.0);
  CHECK(d.examples[0].destiny_binary == Destiny::Fixed);
  CHECK(d.examples[1].duration_hours == 1.5);
  CHECK(d.examples[1].destiny_binary == Destiny::NotFixed);
}

TEST_CASE("nearest-rank time classes") {
  std::vector<LabeledExample> ex;
  for (int i = 1; i <= 10; ++i) ex.push_back(example(std::to_string(i), 10.0 * i));
  const auto a = assign_time_classes(ex, 0.70, QuantileBasis::Whole);
  CHECK(a.threshold_hours == 70.0);
  CHECK(a.short_count == 7);
  CHECK(a.long_count == 3);
  CHECK(a.warnings.empty());
  CHECK(ex[6].time_class == TimeClass::Short);
  CHECK(ex[7].time_class == TimeClass::Long);

  std::vector<LabeledExample> same(4, example("x", 5.0));
  const auto s = assign_time_classes(same, 0.70, QuantileBasis::Whole);
  CHECK(s.short_count == 4);
  CHECK(s.warnings.size() == 1);

  CHECK_THROWS_AS(assign_time_classes(ex, 1.0, QuantileBasis::Whole), ConfigError);
}

TEST_CASE("train-only quantile basis") {
  std::vector<LabeledExample> ex;
  for (int i = 1; i <= 10; ++i) ex.push_back(example(std::to_string(i), 10.0 * i));
  const std::vector<std::string> train{"1", "2", "3", "4", "5"};
  const auto a = assign_time_classes(ex, 0.70, QuantileBasis::TrainOnly, train);
  // ceil(0.7 * 5) = 4th smallest of {10..50}.
  CHECK(a.threshold_hours == 40.0);
  CHECK(a.short_count == 4);
  const std::vector<std::string> none{"zz"};
  CHECK_THROWS_AS(assign_time_classes(ex, 0.70, QuantileBasis::TrainOnly, none), DataError);
}

TEST_CASE("short fraction property on random distinct durations") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(500);
    std::vector<LabeledExample> ex;
    for (std::size_t i = 0; i < n; ++i) ex.push_back(example(std::to_string(i), rng.uniform() * 1e4 + i * 1e-7));
    const auto a = assign_time_classes(ex, 0.70, QuantileBasis::Whole);
    const double frac = static_cast<double>(a.short_count) / static_cast<double>(n);
    CHECK(std::abs(frac - 0.70) <= 1.0 / static_cast<double>(n));
    CHECK(a.short_count + a.long_count == n);
    CHECK(std::any_of(ex.begin(), ex.end(), [&](const auto& e) { return e.duration_hours == a.threshold_hours; }));
  }
}

TEST_CASE("chronological split") {
  const auto reports = reports_at({5, 1, 9, 3, 7, 2, 8, 4, 6, 10});
  const auto s = chronological_split(reports);
  CHECK(s.train_ids.size() == 8);
  CHECK(s.test_ids.size() == 2);
  CHECK(s.test_ids == std::vector<std::string>{"3", "10"});

  CHECK_THROWS_AS(chronological_split(std::span(reports).first(1)), DataError);
  auto unsorted = reports;
  std::swap(unsorted[0], unsorted[9]);
  CHECK_THROWS_AS(chronological_split(unsorted), DataError);

  // 85,156 reports -> ceil(0.8 N) train.
  std::vector<BugReport> many(85156);
  for (std::size_t i = 0; i < many.size(); ++i) {
    many[i].id = std::to_string(i);
    many[i].created_at = Timestamp{} + std::chrono::seconds(i);
  }
  const auto big = chronological_split(many);
  CHECK(big.train_ids.size() == 68125);
  CHECK(big.test_ids.size() == 17031);
}

TEST_CASE("ties at the boundary are broken by id") {
  // Five reports share one timestamp; ids 10 and 9 sort numerically.
  auto reports = reports_at({1, 1, 1, 1, 1});
  reports[0].id = "10";
  reports[1].id = "9";
  reports[2].id = "11";
  reports[3].id = "2";
  reports[4].id = "1";
  std::sort(reports.begin(), reports.end(), chronological_less);
  const auto s = chronological_split(reports, 0.5);
  CHECK(s.train_ids == std::vector<std::string>{"1", "2", "9"});
  CHECK(s.test_ids == std::vector<std::string>{"10", "11"});
}

TEST_CASE("unseen labels are pruned from test only") {
  CorpusSplit split;
  split.train_ids = {"1", "2"};
  split.test_ids = {"3", "4"};
  const std::vector<LabeledExample> ex{example("1", 1, Resolution::Fixed), example("2", 1, Resolution::WontFix),
                                       example("3", 1, Resolution::Invalid), example("4", 1, Resolution::Fixed)};
  const auto p = prune_unseen_labels(split, ex);
  CHECK(p.split.dropped_labels == std::set<Resolution>{Resolution::Invalid});
  CHECK(p.removed == 1);
  CHECK(p.train.size() == 2);
  REQUIRE(p.test.size() == 1);
  CHECK(p.test[0].report_id == "4");

  const std::vector<LabeledExample> same{example("1", 1), example("3", 1)};
  const auto q = prune_unseen_labels(split, same);
  CHECK(q.split.dropped_labels.empty());
  CHECK(q.test.size() == 1);
}

TEST_CASE("filter fixed") {
  const std::vector<LabeledExample> ex{example("1", 1), example("2", 1, Resolution::Duplicate), example("3", 1),
                                       example("4", 1, Resolution::Invalid), example("5", 1, Resolution::WontFix)};
  const auto f = filter_fixed(ex);
  REQUIRE(f.size() == 2);
  CHECK(f[0].report_id == "1");
  CHECK(f[1].report_id == "3");
  const std::vector<LabeledExample> all_fixed{example("a", 1), example("b", 2)};
  CHECK(filter_fixed(all_fixed).size() == 2);
  CHECK_THROWS_AS(filter_fixed(std::span(ex).subspan(1, 1)), DataError);
}
