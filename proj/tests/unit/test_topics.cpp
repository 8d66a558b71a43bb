// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "bugdestiny/error.hpp"
#include "bugdestiny/topics.hpp"

using namespace bugdestiny;
using Catch::Approx;

namespace {

TokenStream doc(std::string id, std::vector<std::string> tokens) {
  TokenStream s;
  s.report_id = std::move(id);
  s.surface = tokens;
  s.tokens = std::move(tokens);
  return s;
}

// Independent term hash: FNV-1a 64 with a seed-mixed basis, then the
// splitmix64 finalizer. Sign from the top bit.
std::uint64_t splitmix_final(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t oracle_hash(const std::string& term, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ splitmix_final(seed);
  for (unsigned char c : term) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix_final(h);
}

std::vector<double> oracle_embedding(const std::vector<std::string>& tokens, const std::vector<TokenStream>& corpus,
                                     std::size_t dim, std::uint64_t seed) {
  std::vector<double> v(dim, 0.0);
  std::map<std::string, int> tf;
  for (const auto& t : tokens) ++tf[t];
  for (const auto& [term, count] : tf) {
    int df = 0;
    for (const auto& d : corpus) df += std::count(d.tokens.begin(), d.tokens.end(), term) > 0;
    const double idf = std::log((1.0 + corpus.size()) / (1.0 + df)) + 1.0;
    const std::uint64_t h = oracle_hash(term, seed);
    v[h % dim] += ((h >> 63) ? -1.0 : 1.0) * count * idf;
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm > 0) {
    for (double& x : v) x /= norm;
  }
  return v;
}

// Twelve documents in three groups of four; labels given.
std::vector<TokenStream> toy12() {
  return {
      doc("1", {"editor", "crash", "save"}),    doc("2", {"editor", "crash"}),
      doc("3", {"editor", "font", "save"}),     doc("4", {"editor", "crash", "crash"}),
      doc("5", {"debug", "breakpoint"}),        doc("6", {"debug", "thread", "crash"}),
      doc("7", {"debug", "breakpoint", "stop"}), doc("8", {"debug"}),
      doc("9", {"build", "ant", "jar"}),        doc("10", {"build", "ant"}),
      doc("11", {"build", "jar", "save"}),      doc("12", {"build", "classpath"}),
  };
}

std::vector<TokenStream> separable(std::size_t per_group) {
  std::vector<TokenStream> out;
  const std::vector<std::string> a{"alpha", "beta", "gamma", "delta"}, b{"omega", "sigma", "kappa", "lambda"};
  for (std::size_t i = 0; i < per_group; ++i) {
    out.push_back(doc("a" + std::to_string(i), {a[i % 4], a[(i + 1) % 4], a[(i / 4 + 2) % 4]}));
    out.push_back(doc("b" + std::to_string(i), {b[i % 4], b[(i + 3) % 4], b[(i / 4 + 1) % 4]}));
  }
  return out;
}

}  // namespace

TEST_CASE("class-based tf-idf by hand") {
  const auto docs = toy12();
  const std::vector<int> labels{0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2};
  const auto w = class_tfidf(docs, labels, 3);
  // 30 tokens over 3 clusters: A = 10.
  // Cluster 0: editor x4, crash x4, save x2, font x1.
  // Totals: crash 5, save 3, editor 4, debug 4, build 4, font 1.
  const double A = 10.0;
  CHECK(w[0].at("editor") == Approx(4 * std::log(1 + A / 4)).epsilon(1e-12));
  CHECK(w[0].at("crash") == Approx(4 * std::log(1 + A / 5)).epsilon(1e-12));
  CHECK(w[0].at("save") == Approx(2 * std::log(1 + A / 3)).epsilon(1e-12));
  CHECK(w[0].at("font") == Approx(1 * std::log(1 + A / 1)).epsilon(1e-12));
  CHECK(w[1].at("crash") == Approx(1 * std::log(1 + A / 5)).epsilon(1e-12));
  CHECK(w[1].at("debug") == Approx(4 * std::log(1 + A / 4)).epsilon(1e-12));
  CHECK(w[2].at("save") == Approx(1 * std::log(1 + A / 3)).epsilon(1e-12));
  CHECK(w[2].at("classpath") == Approx(std::log(1 + A)).epsilon(1e-12));
  CHECK_FALSE(w[2].contains("editor"));
  for (const auto& cluster : w) {
    for (const auto& [t, v] : cluster) CHECK(v >= 0.0);
  }
}

TEST_CASE("uniform terms weigh the same in every cluster") {
  const std::vector<TokenStream> docs{doc("1", {"common", "x"}), doc("2", {"common", "y", "y"}),
                                      doc("3", {"common", "z"})};
  const auto w = class_tfidf(docs, std::vector<int>{0, 1, 2}, 3);
  CHECK(w[0].at("common") == w[1].at("common"));
  CHECK(w[1].at("common") == w[2].at("common"));
}

TEST_CASE("hashed tf-idf embedding matches an independent computation") {
  const std::vector<TokenStream> corpus{doc("1", {"editor", "crash", "editor"}), doc("2", {"crash", "save"}),
                                        doc("3", {"font"}), doc("4", {"editor", "font", "jar"}),
                                        doc("5", {"debug", "crash", "thread", "debug"})};
  auto backend = EmbeddingBackend::hashed_tfidf(16, 7);
  backend.fit(corpus);
  for (const auto& d : corpus) {
    const auto got = backend.embed(d);
    const auto want = oracle_embedding(d.tokens, corpus, 16, 7);
    for (std::size_t i = 0; i < 16; ++i) CHECK(got[i] == Approx(want[i]).margin(1e-12));
  }
  const auto unseen = doc("x", {"neverseen"});
  const auto v = backend.embed(unseen);
  const auto w = oracle_embedding(unseen.tokens, corpus, 16, 7);
  for (std::size_t i = 0; i < 16; ++i) CHECK(v[i] == Approx(w[i]).margin(1e-12));
}

TEST_CASE("embedding normalization") {
  auto backend = EmbeddingBackend::hashed_tfidf();
  backend.fit(std::vector<TokenStream>{doc("1", {"a1"})});
  const auto empty = backend.embed(doc("e", {}));
  CHECK(std::all_of(empty.begin(), empty.end(), [](double x) { return x == 0.0; }));
  const auto one = backend.embed(doc("o", {"editor"}));
  int nonzero = 0;
  for (double x : one) {
    if (x != 0.0) {
      ++nonzero;
      CHECK(std::abs(x) == Approx(1.0));
    }
  }
  CHECK(nonzero == 1);
}

TEST_CASE("separable populations fall into separate topics") {
  const auto docs = separable(12);
  TopicFitOptions opt;
  opt.k = 2;
  const auto m = fit_topics(docs, EmbeddingBackend::hashed_tfidf(64, 3), opt);
  for (std::size_t i = 0; i < docs.size(); i += 2) {
    CHECK(m.train_labels[i] == m.train_labels[0]);
    CHECK(m.train_labels[i + 1] == m.train_labels[1]);
  }
  CHECK(m.train_labels[0] != m.train_labels[1]);
  // Held-out document built from one population's words.
  CHECK(assign_topic(doc("h", {"alpha", "delta"}), m) == m.train_labels[0]);
  CHECK(assign_topic(doc("h", {"kappa", "sigma", "omega"}), m) == m.train_labels[1]);
  for (const auto& terms : m.topic_terms) {
    REQUIRE_FALSE(terms.empty());
    CHECK(terms.front().weight > 0.0);
  }
}

TEST_CASE("training documents keep their fit-time topic") {
  const auto docs = toy12();
  TopicFitOptions opt;
  opt.k = 4;
  const auto m = fit_topics(docs, EmbeddingBackend::hashed_tfidf(32, 42), opt);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    CHECK(assign_topic(docs[i], m) == m.train_labels[i]);
    auto copy = docs[i];
    copy.report_id = "dup";
    CHECK(assign_topic(copy, m) == m.train_labels[i]);
  }
  for (std::size_t i = 1; i < m.objective_history.size(); ++i) {
    CHECK(m.objective_history[i] <= m.objective_history[i - 1] + 1e-12);
  }
}

TEST_CASE("one document per topic") {
  const auto docs = toy12();
  TopicFitOptions opt;
  opt.k = docs.size();
  const auto m = fit_topics(docs, EmbeddingBackend::hashed_tfidf(256, 42), opt);
  std::set<int> seen(m.train_labels.begin(), m.train_labels.end());
  CHECK(seen.size() == docs.size());
}

TEST_CASE("topic fit errors") {
  TopicFitOptions opt;
  opt.k = 3;
  const std::vector<TokenStream> few{doc("1", {"a1"}), doc("2", {}), doc("3", {"b2"})};
  CHECK_THROWS_AS(fit_topics(few, EmbeddingBackend::hashed_tfidf(), opt), DataError);
  const std::vector<TokenStream> same{doc("1", {"aa"}), doc("2", {"aa"}), doc("3", {"aa"})};
  CHECK_THROWS_AS(fit_topics(same, EmbeddingBackend::hashed_tfidf(), opt), DataError);
  opt.k = 1;
  CHECK_THROWS_AS(fit_topics(same, EmbeddingBackend::hashed_tfidf(), opt), ConfigError);
}

TEST_CASE("topic model persistence is deterministic") {
  const auto docs = toy12();
  TopicFitOptions opt;
  opt.k = 3;
  const auto a = fit_topics(docs, EmbeddingBackend::hashed_tfidf(32, 42), opt);
  const auto b = fit_topics(docs, EmbeddingBackend::hashed_tfidf(32, 42), opt);
  const auto bytes = encode_topic_model(a);
  CHECK(bytes == encode_topic_model(b));
  CHECK(std::string(bytes.begin(), bytes.begin() + 9) == "BDTOPIC/1");

  const auto back = decode_topic_model(bytes);
  CHECK(back.centroids == a.centroids);
  CHECK(back.fitted_on == a.fitted_on);
  CHECK(encode_topic_model(back) == bytes);
  for (const auto& d : docs) CHECK(assign_topic(d, back) == assign_topic(d, a));

  auto cut = bytes;
  cut.resize(cut.size() / 2);
  CHECK_THROWS_WITH(decode_topic_model(cut), Catch::Matchers::ContainsSubstring("checksum"));
  auto other = bytes;
  other[8] = '2';
  CHECK_THROWS_WITH(decode_topic_model(other), Catch::Matchers::ContainsSubstring("BDTOPIC/2"));

  const auto path = std::filesystem::temp_directory_path() / "bugdestiny_topics.bin";
  save_topic_model(a, path);
  CHECK(encode_topic_model(load_topic_model(path)) == bytes);
  std::filesystem::remove(path);
}

TEST_CASE("external vectors") {
  const auto path = std::filesystem::temp_directory_path() / "bugdestiny_vectors.csv";
  {
    std::ofstream out(path);
    out << "id,8\n";
    out << "r1,1,0,0,0,0,0,0,0\n";
    out << "r2,0,2,0,0,0,0,0,0\n";
    out << "r3,0.9,0.1,0,0,0,0,0,0\n";
    out << "r4,0,3,0.2,0,0,0,0,0\n";
  }
  const auto ev = ExternalVectors::load(path);
  CHECK(ev.dimension() == 8);
  CHECK(ev.at("r2")[1] == 1.0);
  CHECK_THROWS_WITH(ev.at("missing"), Catch::Matchers::ContainsSubstring("missing"));

  const std::vector<TokenStream> docs{doc("r1", {"x1"}), doc("r2", {"y1"}), doc("r3", {"x1"}), doc("r4", {"y1"})};
  TopicFitOptions opt;
  opt.k = 2;
  const auto m = fit_topics(docs, EmbeddingBackend::external(ev), opt);
  CHECK(m.train_labels[0] == m.train_labels[2]);
  CHECK(m.train_labels[1] == m.train_labels[3]);
  CHECK(m.train_labels[0] != m.train_labels[1]);

  auto back = decode_topic_model(encode_topic_model(m));
  back.backend.attach(ev);
  CHECK(assign_topic(docs[3], back) == m.train_labels[3]);
  std::filesystem::remove(path);

  std::unordered_map<std::string, std::vector<double>> small{{"a", {1, 2}}};
  CHECK_THROWS_AS(ExternalVectors::from_map(2, small), ConfigError);
}
