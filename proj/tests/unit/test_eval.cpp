// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bugdestiny/error.hpp"
#include "bugdestiny/eval.hpp"
#include "bugdestiny/random.hpp"

using namespace bugdestiny;
using Catch::Approx;

namespace {

ConfusionMatrix matrix(std::vector<std::string> classes, std::vector<std::uint64_t> counts) {
  return ConfusionMatrix{std::move(classes), std::move(counts)};
}

// Independent tally of (truth, predicted) pairs.
std::vector<std::uint64_t> tally(const std::vector<int>& t, const std::vector<int>& p, std::size_t n) {
  std::vector<std::uint64_t> out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] == static_cast<int>(i) && p[k] == static_cast<int>(j)) ++out[i * n + j];
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("binary hand-computed report") {
  // TP=2, FN=1, FP=0, TN=1 with class 0 = positive.
  const auto r = classification_report(matrix({"pos", "neg"}, {2, 1, 0, 1}));
  CHECK(r.precision == Approx(0.875).margin(1e-12));
  CHECK(r.recall == Approx(0.75).margin(1e-12));
  CHECK(r.f1 == Approx(0.7666666666666667).margin(1e-12));
  CHECK(r.accuracy == Approx(0.75).margin(1e-12));
  CHECK(r.total == 4);
  CHECK(r.per_class[0].support == 3);
  CHECK(r.per_class[1].support == 1);
}

TEST_CASE("diagonal matrix scores 1 everywhere") {
  const auto r = classification_report(matrix({"a", "b", "c"}, {5, 0, 0, 0, 2, 0, 0, 0, 9}));
  CHECK(r.precision == 1.0);
  CHECK(r.recall == 1.0);
  CHECK(r.f1 == 1.0);
  CHECK(r.accuracy == 1.0);
}

TEST_CASE("class never predicted has precision 0") {
  const auto r = classification_report(matrix({"a", "b"}, {3, 0, 2, 0}));
  CHECK(r.per_class[1].precision == 0.0);
  CHECK(r.per_class[1].recall == 0.0);
  CHECK(r.per_class[1].f1 == 0.0);
  CHECK(r.per_class[0].precision == Approx(0.6));
  CHECK(r.per_class[0].recall == 1.0);
}

TEST_CASE("empty confusion matrix is rejected") {
  CHECK_THROWS_AS(classification_report(matrix({"a", "b"}, {0, 0, 0, 0})), DataError);
}

TEST_CASE("confusion counts match a brute-force tally") {
  Rng rng(7);
  std::vector<int> t(1000), p(1000);
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = static_cast<int>(rng.below(4));
    p[i] = static_cast<int>(rng.below(4));
  }
  const auto cm = confusion(t, p, {"a", "b", "c", "d"});
  CHECK(cm.counts == tally(t, p, 4));
  CHECK(cm.total() == 1000);
}

TEST_CASE("perfect and constant predictions") {
  const std::vector<int> t{0, 1, 2, 1, 0};
  const auto diag = confusion(t, t, {"x", "y", "z"});
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) CHECK(diag.at(i, j) == 0);
    }
  }
  const std::vector<int> zeros(t.size(), 0);
  const auto col = confusion(t, zeros, {"x", "y", "z"});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(col.at(i, 1) == 0);
    CHECK(col.at(i, 2) == 0);
  }
}

TEST_CASE("unknown labels name the offender") {
  const std::vector<std::string> t{"FIXED", "BOGUS"};
  const std::vector<std::string> p{"FIXED", "FIXED"};
  try {
    confusion(t, p, {"FIXED", "WONTFIX"});
    FAIL("expected an error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("BOGUS") != std::string::npos);
  }
  CHECK_THROWS_AS(confusion(std::vector<int>{0, 3}, std::vector<int>{0, 0}, {"a", "b"}), DataError);
}

TEST_CASE("weighted metric properties on random matrices") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(6);
    std::vector<std::uint64_t> counts(n * n);
    for (auto& c : counts) c = rng.below(4) == 0 ? 0 : rng.below(50);
    counts[0] += 1;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
    const auto cm = matrix(names, counts);
    const auto r = classification_report(cm);

    CHECK(r.recall == r.accuracy);

    double lo_p = 1, hi_p = 0, lo_f = 1, hi_f = 0;
    for (const auto& m : r.per_class) {
      if (m.support == 0) continue;
      lo_p = std::min(lo_p, m.precision);
      hi_p = std::max(hi_p, m.precision);
      lo_f = std::min(lo_f, m.f1);
      hi_f = std::max(hi_f, m.f1);
    }
    CHECK(r.precision >= lo_p - 1e-12);
    CHECK(r.precision <= hi_p + 1e-12);
    CHECK(r.f1 >= lo_f - 1e-12);
    CHECK(r.f1 <= hi_f + 1e-12);

    // Reverse the class order.
    ConfusionMatrix rev = cm;
    std::reverse(rev.classes.begin(), rev.classes.end());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) rev.counts[i * n + j] = cm.at(n - 1 - i, n - 1 - j);
    }
    const auto rr = classification_report(rev);
    CHECK(std::abs(rr.precision - r.precision) <= 1e-12);
    CHECK(std::abs(rr.f1 - r.f1) <= 1e-12);
    CHECK(std::abs(rr.accuracy - r.accuracy) <= 1e-12);

    ConfusionMatrix twice = cm;
    for (auto& c : twice.counts) c *= 2;
    const auto rt = classification_report(twice);
    CHECK(std::abs(rt.precision - r.precision) <= 1e-12);
    CHECK(std::abs(rt.recall - r.recall) <= 1e-12);
    CHECK(std::abs(rt.f1 - r.f1) <= 1e-12);
  }
}

TEST_CASE("regression report") {
  const std::vector<double> y{1, 2, 3, 4};
  SECTION("exact predictions") {
    const auto r = regression_report(y, y);
    CHECK(r.mae == 0.0);
    CHECK(r.mse == 0.0);
    REQUIRE(r.r2);
    CHECK(*r.r2 == 1.0);
  }
  SECTION("mean predictions give r2 = 0") {
    const std::vector<double> m(4, 2.5);
    const auto r = regression_report(y, m);
    REQUIRE(r.r2);
    CHECK(*r.r2 == Approx(0.0).margin(1e-15));
  }
  SECTION("constant truth has no r2") {
    const std::vector<double> c(4, 7.0);
    CHECK_FALSE(regression_report(c, y).r2.has_value());
  }
  SECTION("random sample against a direct recomputation") {
    Rng rng(3);
    std::vector<double> t(100), p(100);
    for (std::size_t i = 0; i < t.size(); ++i) {
      t[i] = rng.uniform(0, 1000);
      p[i] = rng.uniform(0, 1000);
    }
    double mae = 0, mse = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      mae += std::abs(t[i] - p[i]) / 100.0;
      mse += (t[i] - p[i]) * (t[i] - p[i]) / 100.0;
    }
    const double mean = std::accumulate(t.begin(), t.end(), 0.0) / 100.0;
    double var = 0;
    for (double v : t) var += (v - mean) * (v - mean) / 100.0;
    const auto r = regression_report(t, p);
    CHECK(std::abs(r.mae - mae) <= 1e-12 * mae);
    CHECK(std::abs(r.mse - mse) <= 1e-12 * mse);
    REQUIRE(r.r2);
    CHECK(std::abs(*r.r2 - (1.0 - mse / var)) <= 1e-12);
  }
  CHECK_THROWS_AS(regression_report(y, std::vector<double>{1.0}), DataError);
}

TEST_CASE("table formatting") {
  CHECK(thousands(2890.4) == "2,890");
  CHECK(thousands(42422784) == "42,422,784");
  CHECK(thousands(575) == "575");
  CHECK(thousands(-1234.6) == "-1,235");
  CHECK(classification_row_label("MLP", true, true) == "MLP (Emotion, Emotionality, Priority, Predicted Topic) Weighted");
  CHECK(classification_row_label("CNN", false, false) == "CNN (Emotion, Emotionality, Priority)");
  CHECK(regression_row_label("Linear Regression", "Short") == "Linear Regression (Short)");

  const std::vector<ClassificationRow> rows{
      {"MLP (Emotion, Emotionality, Priority)", classification_report(matrix({"a", "b"}, {2, 1, 0, 1}))}};
  const auto table = format_classification_table("Time-to-resolution", rows, 2);
  CHECK(table.find("Model") != std::string::npos);
  INFO(table);
  CHECK(table.find("0.88    0.75      0.77      0.75") != std::string::npos);
}
