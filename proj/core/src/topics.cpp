// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include "bugdestiny/topics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "bugdestiny/binio.hpp"
#include "bugdestiny/csv.hpp"
#include "bugdestiny/error.hpp"
#include "bugdestiny/random.hpp"

namespace bugdestiny {
namespace {

constexpr std::string_view kTopicMagic = "BDTOPIC/1";

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void normalize(std::vector<double>& v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  if (sq <= 0.0) return;
  const double inv = 1.0 / std::sqrt(sq);
  for (double& x : v) x *= inv;
}

SparseVector sparse_from_dense(const std::vector<double>& v) {
  SparseVector s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) {
      s.index.push_back(static_cast<std::uint32_t>(i));
      s.value.push_back(v[i]);
    }
  }
  return s;
}

double dot(const SparseVector& x, std::span<const double> c) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.index.size(); ++i) d += x.value[i] * c[x.index[i]];
  return d;
}

void refresh_norms(TopicModel& m) {
  m.centroid_sq_norms.assign(m.k, 0.0);
  for (std::size_t c = 0; c < m.k; ++c) {
    double sq = 0.0;
    for (double v : m.centroid(c)) sq += v * v;
    m.centroid_sq_norms[c] = sq;
  }
}

double squared_distance(const SparseVector& x, double x_sq, const TopicModel& m, std::size_t c) {
  return std::max(0.0, x_sq + m.centroid_sq_norms[c] - 2.0 * dot(x, m.centroid(c)));
}

std::string digest_ids(std::span<const TokenStream> streams) {
  std::uint64_t h = binio::fnv1a64("");
  for (const auto& s : streams) {
    h = binio::fnv1a64(s.report_id, h);
    h = binio::fnv1a64("\n", h);
  }
  return binio::hex64(h);
}

}  // namespace

double SparseVector::squared_norm() const {
  double sq = 0.0;
  for (double v : value) sq += v * v;
  return sq;
}

std::vector<double> SparseVector::dense(std::size_t dimension) const {
  std::vector<double> out(dimension, 0.0);
  for (std::size_t i = 0; i < index.size(); ++i) out[index[i]] = value[i];
  return out;
}

ExternalVectors ExternalVectors::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read embedding vectors file " + path.string());
  csv::Reader reader(in);
  std::vector<std::string> fields;
  if (!reader.next(fields) || fields.size() != 2 || fields[0] != "id") {
    throw DataError(path.string() + ": expected header \"id,<dim>\"");
  }
  std::size_t dim = 0;
  try {
    dim = std::stoul(fields[1]);
  } catch (const std::exception&) {
    throw DataError(path.string() + ": bad dimension '" + fields[1] + "'");
  }
  std::unordered_map<std::string, std::vector<double>> rows;
  while (reader.next(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != dim + 1) {
      throw DataError(path.string() + ":" + std::to_string(reader.line()) + ": expected " +
                      std::to_string(dim) + " values");
    }
    std::vector<double> v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      try {
        v[i] = std::stod(fields[i + 1]);
      } catch (const std::exception&) {
        throw DataError(path.string() + ":" + std::to_string(reader.line()) + ": bad value");
      }
    }
    rows[fields[0]] = std::move(v);
  }
  return from_map(dim, std::move(rows));
}

ExternalVectors ExternalVectors::from_map(std::size_t dimension,
                                          std::unordered_map<std::string, std::vector<double>> rows) {
  if (dimension < 8) throw ConfigError("embedding dimension must be at least 8");
  ExternalVectors ev;
  ev.dimension_ = dimension;
  for (auto& [id, v] : rows) {
    if (v.size() != dimension) throw DataError("vector for '" + id + "' has the wrong dimension");
    normalize(v);
  }
  ev.rows_ = std::move(rows);
  return ev;
}

const std::vector<double>& ExternalVectors::at(const std::string& id) const {
  const auto it = rows_.find(id);
  if (it == rows_.end()) throw DataError("no external embedding for report id '" + id + "'");
  return it->second;
}

EmbeddingBackend EmbeddingBackend::hashed_tfidf(std::size_t dimension, std::uint64_t hash_seed) {
  if (dimension < 8) throw ConfigError("embedding dimension must be at least 8");
  EmbeddingBackend b;
  b.kind_ = EmbeddingKind::HashedTfidf;
  b.dimension_ = dimension;
  b.hash_seed_ = hash_seed;
  return b;
}

EmbeddingBackend EmbeddingBackend::external(ExternalVectors vectors) {
  EmbeddingBackend b;
  b.kind_ = EmbeddingKind::ExternalVectors;
  b.dimension_ = vectors.dimension();
  b.external_ = std::move(vectors);
  return b;
}

void EmbeddingBackend::attach(ExternalVectors vectors) {
  if (kind_ != EmbeddingKind::ExternalVectors) throw ConfigError("backend does not use external vectors");
  if (vectors.dimension() != dimension_) throw ConfigError("external vectors have the wrong dimension");
  external_ = std::move(vectors);
}

void EmbeddingBackend::fit(std::span<const TokenStream> train) {
  n_docs_ = train.size();
  df_.clear();
  for (const auto& s : train) {
    std::vector<std::string_view> terms(s.tokens.begin(), s.tokens.end());
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    for (auto t : terms) {
      auto it = df_.find(t);
      if (it == df_.end()) {
        df_.emplace(std::string(t), 1);
      } else {
        ++it->second;
      }
    }
  }
}

double EmbeddingBackend::idf(std::string_view term) const {
  const auto it = df_.find(term);
  const double df = it == df_.end() ? 0.0 : static_cast<double>(it->second);
  return std::log((1.0 + static_cast<double>(n_docs_)) / (1.0 + df)) + 1.0;
}

std::uint64_t EmbeddingBackend::term_hash(std::string_view term, std::uint64_t seed) {
  return mix64(binio::fnv1a64(term, 0xcbf29ce484222325ULL ^ mix64(seed)));
}

std::uint32_t EmbeddingBackend::bucket(std::string_view term, std::uint64_t seed, std::size_t dimension) {
  return static_cast<std::uint32_t>(term_hash(term, seed) % dimension);
}

double EmbeddingBackend::sign(std::string_view term, std::uint64_t seed) {
  return (term_hash(term, seed) >> 63) != 0 ? -1.0 : 1.0;
}

SparseVector EmbeddingBackend::embed_sparse(const TokenStream& stream) const {
  if (kind_ == EmbeddingKind::ExternalVectors) {
    return sparse_from_dense(external_.at(stream.report_id));
  }
  if (stream.tokens.empty()) return {};
  std::map<std::string_view, std::size_t> tf;
  for (const auto& t : stream.tokens) ++tf[t];
  std::vector<double> acc(dimension_, 0.0);
  for (const auto& [term, count] : tf) {
    acc[bucket(term, hash_seed_, dimension_)] += sign(term, hash_seed_) * static_cast<double>(count) * idf(term);
  }
  normalize(acc);
  return sparse_from_dense(acc);
}

std::vector<double> EmbeddingBackend::embed(const TokenStream& stream) const {
  return embed_sparse(stream).dense(dimension_);
}

std::vector<std::map<std::string, double>> class_tfidf(std::span<const TokenStream> streams,
                                                       std::span<const int> labels, std::size_t k) {
  if (streams.size() != labels.size()) throw DataError("class_tfidf: one label per stream required");
  std::vector<std::map<std::string, std::size_t>> tf_class(k);
  std::map<std::string, std::size_t> tf_total;
  std::size_t total_tokens = 0;
  for (std::size_t i = 0; i < streams.size(); ++i) {
    const int c = labels[i];
    if (c < 0 || static_cast<std::size_t>(c) >= k) throw DataError("class_tfidf: label out of range");
    for (const auto& t : streams[i].tokens) {
      ++tf_class[static_cast<std::size_t>(c)][t];
      ++tf_total[t];
      ++total_tokens;
    }
  }
  const double avg_tokens = static_cast<double>(total_tokens) / static_cast<double>(k);
  std::vector<std::map<std::string, double>> out(k);
  for (std::size_t c = 0; c < k; ++c) {
    for (const auto& [term, count] : tf_class[c]) {
      out[c][term] = static_cast<double>(count) *
                     std::log(1.0 + avg_tokens / static_cast<double>(tf_total.at(term)));
    }
  }
  return out;
}

int nearest_centroid(const SparseVector& x, const TopicModel& model) {
  const double x_sq = x.squared_norm();
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < model.k; ++c) {
    const double d = squared_distance(x, x_sq, model, c);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

int assign_topic(const TokenStream& stream, const TopicModel& model) {
  return nearest_centroid(model.backend.embed_sparse(stream), model);
}

TopicModel fit_topics(std::span<const TokenStream> train, EmbeddingBackend backend, const TopicFitOptions& options) {
  const std::size_t k = options.k;
  if (k < 2) throw ConfigError("topic count must be at least 2");
  backend.fit(train);

  std::vector<SparseVector> all(train.size());
  std::vector<std::size_t> points;  // indices of non-empty documents
  for (std::size_t i = 0; i < train.size(); ++i) {
    all[i] = backend.embed_sparse(train[i]);
    if (!all[i].index.empty()) points.push_back(i);
  }
  if (points.size() < k) {
    throw DataError("topic model needs at least " + std::to_string(k) + " non-empty training documents, got " +
                    std::to_string(points.size()));
  }

  TopicModel m;
  m.k = k;
  m.dimension = backend.dimension();
  m.seed = options.seed;
  m.centroids.assign(k * m.dimension, 0.0);
  m.backend = std::move(backend);
  const std::size_t dim = m.dimension;
  const std::size_t n = points.size();
  std::vector<double> x_sq(n);
  for (std::size_t p = 0; p < n; ++p) x_sq[p] = all[points[p]].squared_norm();

  const auto set_centroid = [&](std::size_t c, const SparseVector& x) {
    std::fill_n(m.centroids.begin() + static_cast<std::ptrdiff_t>(c * dim), dim, 0.0);
    for (std::size_t i = 0; i < x.index.size(); ++i) m.centroids[c * dim + x.index[i]] = x.value[i];
  };

  // k-means++ seeding.
  Rng rng(options.seed);
  set_centroid(0, all[points[rng.below(n)]]);
  refresh_norms(m);
  std::vector<double> d2(n);
  for (std::size_t p = 0; p < n; ++p) d2[p] = squared_distance(all[points[p]], x_sq[p], m, 0);
  for (std::size_t c = 1; c < k; ++c) {
    const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
    std::size_t pick = 0;
    if (total > 0.0) {
      const double r = rng.uniform() * total;
      double run = 0.0;
      pick = n - 1;
      for (std::size_t p = 0; p < n; ++p) {
        run += d2[p];
        if (run > r && d2[p] > 0.0) {
          pick = p;
          break;
        }
      }
    } else {
      pick = rng.below(n);
    }
    set_centroid(c, all[points[pick]]);
    refresh_norms(m);
    for (std::size_t p = 0; p < n; ++p) {
      d2[p] = std::min(d2[p], squared_distance(all[points[p]], x_sq[p], m, c));
    }
  }

  // Lloyd iterations.
  std::vector<int> label(n, 0);
  std::vector<double> dist(n, 0.0);
  const auto assign_all = [&] {
    double objective = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      label[p] = nearest_centroid(all[points[p]], m);
      dist[p] = squared_distance(all[points[p]], x_sq[p], m, static_cast<std::size_t>(label[p]));
      objective += dist[p];
    }
    m.objective_history.push_back(objective);
  };

  std::vector<double> next(k * dim);
  std::vector<std::size_t> count(k);
  for (m.iterations = 0; m.iterations < options.max_iterations;) {
    assign_all();
    ++m.iterations;
    std::fill(next.begin(), next.end(), 0.0);
    std::fill(count.begin(), count.end(), 0);
    for (std::size_t p = 0; p < n; ++p) {
      const auto c = static_cast<std::size_t>(label[p]);
      ++count[c];
      const auto& x = all[points[p]];
      for (std::size_t i = 0; i < x.index.size(); ++i) next[c * dim + x.index[i]] += x.value[i];
    }
    std::vector<bool> taken(n, false);
    for (std::size_t c = 0; c < k; ++c) {
      if (count[c] > 0) {
        const double inv = 1.0 / static_cast<double>(count[c]);
        for (std::size_t j = 0; j < dim; ++j) next[c * dim + j] *= inv;
        continue;
      }
      // Empty cluster: reseed from the point farthest from its centroid.
      std::size_t far = n;
      for (std::size_t p = 0; p < n; ++p) {
        if (!taken[p] && dist[p] > 0.0 && (far == n || dist[p] > dist[far])) far = p;
      }
      if (far == n) {
        throw DataError("topic model: fewer distinct non-empty documents than topics (k=" + std::to_string(k) + ")");
      }
      taken[far] = true;
      dist[far] = 0.0;
      const auto& x = all[points[far]];
      for (std::size_t i = 0; i < x.index.size(); ++i) next[c * dim + x.index[i]] = x.value[i];
    }
    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      double sq = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        const double d = next[c * dim + j] - m.centroids[c * dim + j];
        sq += d * d;
      }
      shift = std::max(shift, std::sqrt(sq));
    }
    m.centroids.swap(next);
    refresh_norms(m);
    if (shift < options.tolerance) break;
  }

  // Final labels come from the final centroids, so that assign_topic on any
  // training document reproduces its fit-time label.
  assign_all();
  m.train_labels.resize(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) m.train_labels[i] = nearest_centroid(all[i], m);

  const auto weights = class_tfidf(train, m.train_labels, k);
  m.topic_terms.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<TopicTerm> terms;
    for (const auto& [term, w] : weights[c]) terms.push_back({term, w});
    std::sort(terms.begin(), terms.end(), [](const TopicTerm& a, const TopicTerm& b) {
      return a.weight != b.weight ? a.weight > b.weight : a.term < b.term;
    });
    if (terms.size() > options.top_terms) terms.resize(options.top_terms);
    m.topic_terms[c] = std::move(terms);
  }

  std::uint32_t idx = 0;
  for (const auto& [term, df] : m.backend.document_frequency()) m.vocabulary.emplace(term, idx++);
  if (m.backend.kind() == EmbeddingKind::ExternalVectors) {
    std::map<std::string, std::uint32_t, std::less<>> vocab;
    for (const auto& s : train) {
      for (const auto& t : s.tokens) vocab.emplace(t, 0);
    }
    idx = 0;
    for (auto& [term, i] : vocab) i = idx++;
    m.vocabulary = std::move(vocab);
  }
  m.fitted_on = digest_ids(train);
  return m;
}

class TopicModelCodec {
 public:
  static std::vector<std::uint8_t> encode(const TopicModel& m) {
    binio::Writer w;
    w.raw(kTopicMagic);
    w.u32(static_cast<std::uint32_t>(m.k));
    w.u32(static_cast<std::uint32_t>(m.dimension));
    w.u64(m.seed);
    w.u32(static_cast<std::uint32_t>(m.backend.kind_));
    w.u64(m.backend.hash_seed_);
    w.u64(m.backend.n_docs_);
    w.f64s(m.centroids);
    w.u32(static_cast<std::uint32_t>(m.vocabulary.size()));
    for (const auto& [term, index] : m.vocabulary) {
      w.str(term);
      const auto it = m.backend.df_.find(term);
      w.u32(it == m.backend.df_.end() ? 0 : it->second);
    }
    for (const auto& terms : m.topic_terms) {
      w.u32(static_cast<std::uint32_t>(terms.size()));
      for (const auto& t : terms) {
        w.str(t.term);
        w.f64(t.weight);
      }
    }
    w.str(m.fitted_on);
    w.seal();
    return w.bytes();
  }

  static TopicModel decode(std::span<const std::uint8_t> bytes) {
    binio::Reader r(binio::open_sealed(bytes, kTopicMagic, "topic model"));
    TopicModel m;
    m.k = r.u32();
    m.dimension = r.u32();
    m.seed = r.u64();
    const auto kind = r.u32();
    if (kind > 1) throw FormatError("topic model: unknown embedding kind");
    m.backend.kind_ = static_cast<EmbeddingKind>(kind);
    m.backend.dimension_ = m.dimension;
    m.backend.hash_seed_ = r.u64();
    m.backend.n_docs_ = r.u64();
    if (m.k < 2 || m.dimension < 8) throw FormatError("topic model: invalid header");
    m.centroids = r.f64s(m.k * m.dimension);
    const std::uint32_t vocab = r.u32();
    for (std::uint32_t i = 0; i < vocab; ++i) {
      std::string term = r.str();
      const std::uint32_t df = r.u32();
      if (df > 0) m.backend.df_.emplace(term, df);
      m.vocabulary.emplace(std::move(term), i);
    }
    m.topic_terms.resize(m.k);
    for (auto& terms : m.topic_terms) {
      const std::uint32_t n = r.u32();
      for (std::uint32_t i = 0; i < n; ++i) {
        TopicTerm t;
        t.term = r.str();
        t.weight = r.f64();
        terms.push_back(std::move(t));
      }
    }
    m.fitted_on = r.str();
    if (!r.at_end()) throw FormatError("topic model: trailing bytes");
    refresh_norms(m);
    return m;
  }
};

std::vector<std::uint8_t> encode_topic_model(const TopicModel& model) { return TopicModelCodec::encode(model); }

TopicModel decode_topic_model(std::span<const std::uint8_t> bytes) { return TopicModelCodec::decode(bytes); }

void save_topic_model(const TopicModel& model, const std::filesystem::path& path) {
  binio::write_file(path, encode_topic_model(model));
}

TopicModel load_topic_model(const std::filesystem::path& path) {
  return decode_topic_model(binio::read_file(path));
}

}  // namespace bugdestiny
