// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bugdestiny/textprep.hpp"

namespace bugdestiny {

/// Sparse vector with strictly increasing indices.
struct SparseVector {
  std::vector<std::uint32_t> index;
  std::vector<double> value;

  double squared_norm() const;
  std::vector<double> dense(std::size_t dimension) const;
};

/// Precomputed document vectors keyed by report id. File layout: a header
/// line "id,<dim>", then one line per report "<id>,v1,...,v<dim>".
class ExternalVectors {
 public:
  static ExternalVectors load(const std::filesystem::path& path);
  static ExternalVectors from_map(std::size_t dimension, std::unordered_map<std::string, std::vector<double>> rows);

  std::size_t dimension() const { return dimension_; }
  /// Unit-normalized vector for `id`; throws DataError naming the id.
  const std::vector<double>& at(const std::string& id) const;

 private:
  std::size_t dimension_ = 0;
  std::unordered_map<std::string, std::vector<double>> rows_;
};

enum class EmbeddingKind : std::uint32_t { HashedTfidf = 0, ExternalVectors = 1 };

/// Document embedding used for topic clustering. Every embedding has unit
/// Euclidean norm, except that an empty document embeds to zero.
class EmbeddingBackend {
 public:
  static constexpr std::size_t kDefaultDimension = 256;
  static constexpr std::uint64_t kDefaultHashSeed = 42;

  /// Terms are hashed into `dimension` buckets with a +/-1 sign hash and
  /// weighted by tf * idf, idf(t) = ln((1 + N) / (1 + df(t))) + 1.
  static EmbeddingBackend hashed_tfidf(std::size_t dimension = kDefaultDimension,
                                       std::uint64_t hash_seed = kDefaultHashSeed);
  static EmbeddingBackend external(ExternalVectors vectors);

  /// Computes document frequencies over the training streams (HashedTfidf).
  void fit(std::span<const TokenStream> train);

  SparseVector embed_sparse(const TokenStream& stream) const;
  std::vector<double> embed(const TokenStream& stream) const;

  EmbeddingKind kind() const { return kind_; }
  std::size_t dimension() const { return dimension_; }
  std::uint64_t hash_seed() const { return hash_seed_; }
  std::size_t document_count() const { return n_docs_; }
  const std::map<std::string, std::uint32_t, std::less<>>& document_frequency() const { return df_; }
  double idf(std::string_view term) const;

  /// Replaces the vector table of an ExternalVectors backend (e.g. after
  /// loading a persisted topic model).
  void attach(ExternalVectors vectors);

  static std::uint64_t term_hash(std::string_view term, std::uint64_t seed);
  static std::uint32_t bucket(std::string_view term, std::uint64_t seed, std::size_t dimension);
  static double sign(std::string_view term, std::uint64_t seed);

 private:
  friend class TopicModelCodec;

  EmbeddingKind kind_ = EmbeddingKind::HashedTfidf;
  std::size_t dimension_ = kDefaultDimension;
  std::uint64_t hash_seed_ = kDefaultHashSeed;
  std::size_t n_docs_ = 0;
  std::map<std::string, std::uint32_t, std::less<>> df_;
  ExternalVectors external_;
};

struct TopicTerm {
  std::string term;
  double weight = 0.0;
};

struct TopicFitOptions {
  std::size_t k = 20;
  std::uint64_t seed = 42;
  std::size_t max_iterations = 300;
  double tolerance = 1e-6;  // max centroid shift
  std::size_t top_terms = 10;
};

struct TopicModel {
  std::size_t k = 0;
  std::size_t dimension = 0;
  std::uint64_t seed = 0;
  std::vector<double> centroids;  // k x dimension, row-major
  std::vector<double> centroid_sq_norms;  // derived from centroids
  std::vector<std::vector<TopicTerm>> topic_terms;
  std::map<std::string, std::uint32_t, std::less<>> vocabulary;  // term -> index
  std::string fitted_on;  // digest of the training report ids
  EmbeddingBackend backend;

  // Fit diagnostics; not persisted.
  std::vector<int> train_labels;
  std::vector<double> objective_history;
  std::size_t iterations = 0;

  std::span<const double> centroid(std::size_t topic) const {
    return std::span<const double>(centroids).subspan(topic * dimension, dimension);
  }
};

/// Class-based TF-IDF over documents grouped by label:
///   weight(t, c) = tf(t, c) * ln(1 + A / tf(t))
/// with tf(t, c) the count of t in cluster c, tf(t) its count over all
/// clusters and A the mean number of tokens per cluster.
std::vector<std::map<std::string, double>> class_tfidf(std::span<const TokenStream> streams,
                                                       std::span<const int> labels, std::size_t k);

/// Fits the backend on `train`, embeds, clusters with k-means (k-means++
/// seeding) and ranks per-topic terms by class_tfidf.
TopicModel fit_topics(std::span<const TokenStream> train, EmbeddingBackend backend,
                      const TopicFitOptions& options = {});

/// Index of the nearest centroid (Euclidean), lowest index on ties.
int nearest_centroid(const SparseVector& x, const TopicModel& model);
int assign_topic(const TokenStream& stream, const TopicModel& model);

/// "BDTOPIC/1" with a CRC-32 trailer. An ExternalVectors backend is stored
/// without its vector table; call backend.attach() after loading.
std::vector<std::uint8_t> encode_topic_model(const TopicModel& model);
TopicModel decode_topic_model(std::span<const std::uint8_t> bytes);
void save_topic_model(const TopicModel& model, const std::filesystem::path& path);
TopicModel load_topic_model(const std::filesystem::path& path);

}  // namespace bugdestiny
