// Copyright 2026 The seclust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "seclust/edge_builder.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "seclust/entropy.hpp"
#include "seclust/error.hpp"
#include "seclust/kernels.hpp"

namespace seclust {
namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

void normalize_rows(std::vector<double>& values, std::size_t rows, std::size_t dim,
                    std::span<const MessageRecord> records) {
  for (std::size_t r = 0; r < rows; ++r) {
    double* row = values.data() + r * dim;
    double norm2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) norm2 += row[k] * row[k];
    const double norm = std::sqrt(norm2);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      const std::string who = records.empty() ? "row " + std::to_string(r)
                                              : "record '" + records[r].id + "' (row " +
                                                    std::to_string(r) + ")";
      throw InputError(who + " has a zero-norm or non-finite embedding; cosine "
                             "similarity is undefined");
    }
    for (std::size_t k = 0; k < dim; ++k) row[k] /= norm;
  }
}

}  // namespace

EmbeddingMatrix EmbeddingMatrix::from_records(std::span<const MessageRecord> records) {
  EmbeddingMatrix m;
  if (records.empty()) return m;
  m.rows_ = records.size();
  m.dim_ = records.front().embedding.size();
  if (m.dim_ == 0) {
    throw InputError("record '" + records.front().id + "' has an empty embedding");
  }
  m.values_.reserve(m.rows_ * m.dim_);
  for (const MessageRecord& r : records) {
    if (r.embedding.size() != m.dim_) {
      throw InputError("record '" + r.id + "' has embedding dimension " +
                       std::to_string(r.embedding.size()) + ", expected " +
                       std::to_string(m.dim_));
    }
    m.values_.insert(m.values_.end(), r.embedding.begin(), r.embedding.end());
  }
  normalize_rows(m.values_, m.rows_, m.dim_, records);
  return m;
}

EmbeddingMatrix EmbeddingMatrix::from_rows(std::vector<double> values, std::size_t rows,
                                           std::size_t dim) {
  if (dim == 0 || values.size() != rows * dim) {
    throw InputError("embedding block has " + std::to_string(values.size()) +
                     " values for " + std::to_string(rows) + " rows of dimension " +
                     std::to_string(dim));
  }
  EmbeddingMatrix m;
  m.values_ = std::move(values);
  m.rows_ = rows;
  m.dim_ = dim;
  normalize_rows(m.values_, rows, dim, {});
  return m;
}

double EmbeddingMatrix::cosine(NodeId i, NodeId j) const {
  return kernels::active().dot(values_.data() + i * dim_, values_.data() + j * dim_, dim_);
}

std::vector<NodePair> build_attribute_edges(std::span<const MessageRecord> corpus) {
  std::unordered_map<std::string_view, std::vector<NodeId>> index;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::vector<std::string_view> attrs(corpus[i].attributes.begin(),
                                        corpus[i].attributes.end());
    std::sort(attrs.begin(), attrs.end());
    attrs.erase(std::unique(attrs.begin(), attrs.end()), attrs.end());
    for (std::string_view a : attrs) index[a].push_back(static_cast<NodeId>(i));
  }
  std::vector<NodePair> pairs;
  for (const auto& [attribute, holders] : index) {
    for (std::size_t x = 0; x < holders.size(); ++x) {
      for (std::size_t y = x + 1; y < holders.size(); ++y) {
        pairs.emplace_back(holders[x], holders[y]);
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

NeighborRanking::NeighborRanking(std::size_t size, std::vector<NodeId> order,
                                 std::vector<double> similarity)
    : size_(size), order_(std::move(order)), similarity_(std::move(similarity)) {
  const std::size_t expected = size_ * depth();
  if (order_.size() != expected || similarity_.size() != expected) {
    throw std::invalid_argument("NeighborRanking: storage does not match size");
  }
}

NeighborRanking rank_neighbors(const EmbeddingMatrix& embeddings,
                               const RankOptions& options) {
  const std::size_t n = embeddings.rows();
  if (n < 2) {
    throw InputError("ranking neighbors needs at least 2 messages, got " +
                     std::to_string(n));
  }
  const std::size_t depth = n - 1;
  const std::size_t dim = embeddings.dim();
  const std::size_t tile = std::max<std::size_t>(1, options.tile_rows);
  const std::size_t tiles = (n + tile - 1) / tile;
  std::vector<NodeId> order(n * depth);
  std::vector<double> similarity(n * depth);
  const kernels::KernelTable& k = kernels::active();

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::vector<double> block(tile * n);
    std::vector<NodeId> idx(depth);
    for (std::size_t t; (t = next.fetch_add(1)) < tiles;) {
      const std::size_t begin = t * tile;
      const std::size_t end = std::min(n, begin + tile);
      for (std::size_t q = begin; q < end; ++q) {
        double* sims = block.data() + (q - begin) * n;
        k.dot_rows(embeddings.data() + q * dim, embeddings.data(), n, dim, sims);
        std::size_t w = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (j != q) idx[w++] = static_cast<NodeId>(j);
        }
        std::sort(idx.begin(), idx.end(), [sims](NodeId a, NodeId b) {
          return sims[a] != sims[b] ? sims[a] > sims[b] : a < b;
        });
        for (std::size_t r = 0; r < depth; ++r) {
          order[q * depth + r] = idx[r];
          similarity[q * depth + r] = sims[idx[r]];
        }
      }
    }
  };

  std::size_t threads = options.threads == 0 ? std::thread::hardware_concurrency()
                                             : options.threads;
  threads = std::clamp<std::size_t>(threads, 1, tiles);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return NeighborRanking(n, std::move(order), std::move(similarity));
}

SeTrace select_k(const NeighborRanking& ranking) {
  const std::size_t n = ranking.size();
  if (n < 3) {
    throw InputError("selecting k needs at least 3 messages, got " + std::to_string(n));
  }
  std::vector<double> degrees(n, 0.0);
  double volume = 0.0;
  std::unordered_set<std::uint64_t> present;
  present.reserve(n * 4);

  // Inserts the rank-r edge of every node; `delta` receives degree changes.
  std::vector<std::int64_t> slot(n, -1);
  auto insert_rank = [&](std::size_t r, DegreeDelta& delta) {
    delta.old_volume = volume;
    for (NodeId i = 0; i < n; ++i) {
      const NodeId j = ranking.neighbors(i)[r];
      const double w = std::max(ranking.similarities(i)[r], 0.0);
      if (w <= 0.0 || !present.insert(pair_key(i, j)).second) continue;
      for (NodeId x : {i, j}) {
        if (slot[x] < 0) {
          slot[x] = static_cast<std::int64_t>(delta.affected.size());
          delta.affected.push_back({x, degrees[x], degrees[x]});
        }
        delta.affected[slot[x]].new_degree += w;
      }
      volume += 2.0 * w;
    }
    for (const DegreeChange& c : delta.affected) {
      degrees[c.node] = c.new_degree;
      slot[c.node] = -1;
    }
    delta.new_volume = volume;
  };

  SeTrace trace;
  DegreeDelta first;
  insert_rank(0, first);
  SeValue current = se_1d(degrees);
  trace.values.push_back(current.bits);

  for (std::size_t k = 2; k < n; ++k) {
    DegreeDelta delta;
    insert_rank(k - 1, delta);
    current = se_1d_update(current, delta);
    trace.values.push_back(current.bits);
    if (k >= 3) {
      const double before = trace.values[k - 3];
      const double at = trace.values[k - 2];
      const double after = trace.values[k - 1];
      if (at < before && at < after) {
        trace.chosen_k = k - 1;
        return trace;
      }
    }
  }
  trace.fallback = true;
  trace.chosen_k = static_cast<std::size_t>(
                       std::min_element(trace.values.begin(), trace.values.end()) -
                       trace.values.begin()) +
                   1;
  return trace;
}

std::vector<NodePair> semantic_edges(const NeighborRanking& ranking, std::size_t k) {
  if (k > ranking.depth()) {
    throw std::invalid_argument("semantic_edges: k = " + std::to_string(k) +
                                " exceeds the ranking depth " +
                                std::to_string(ranking.depth()));
  }
  std::vector<NodePair> pairs;
  pairs.reserve(ranking.size() * k);
  for (NodeId i = 0; i < ranking.size(); ++i) {
    for (std::size_t r = 0; r < k; ++r) {
      const NodeId j = ranking.neighbors(i)[r];
      pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

WeightedGraph build_message_graph(const EmbeddingMatrix& embeddings,
                                  std::span<const NodePair> attribute_edges,
                                  std::span<const NodePair> semantic_edge_set) {
  std::vector<NodePair> all;
  all.reserve(attribute_edges.size() + semantic_edge_set.size());
  for (const auto& [a, b] : attribute_edges) all.emplace_back(std::min(a, b), std::max(a, b));
  for (const auto& [a, b] : semantic_edge_set) all.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  std::vector<Edge> edges;
  edges.reserve(all.size());
  for (const auto& [a, b] : all) {
    if (a >= embeddings.rows() || b >= embeddings.rows()) {
      throw InputError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                       ") references a message without an embedding");
    }
    edges.push_back({a, b, std::max(embeddings.cosine(a, b), 0.0)});
  }
  return WeightedGraph::build(edges, embeddings.rows());
}

WeightedGraph build_message_graph(const EmbeddingMatrix& embeddings,
                                  std::span<const NodePair> attribute_edges,
                                  std::size_t chosen_k, const NeighborRanking& ranking) {
  if (chosen_k < 1) throw std::invalid_argument("build_message_graph: chosen_k must be >= 1");
  const auto semantic = semantic_edges(ranking, chosen_k);
  return build_message_graph(embeddings, attribute_edges, semantic);
}

}  // namespace seclust
