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

#ifndef SECLUST_EDGE_BUILDER_HPP_
#define SECLUST_EDGE_BUILDER_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seclust/graph.hpp"

namespace seclust {

// One social message. Attributes are namespaced strings ("user:alice",
// "hashtag:x", ...) so values of different kinds never collide.
struct MessageRecord {
  std::string id;
  std::vector<std::string> attributes;
  std::vector<double> embedding;
};

// Unit-normalized embedding rows, row-major.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;

  // Throws InputError when rows disagree on dimension, the dimension is 0, or
  // a row has zero norm (cosine similarity is undefined). Messages name the
  // offending record.
  static EmbeddingMatrix from_records(std::span<const MessageRecord> records);
  static EmbeddingMatrix from_rows(std::vector<double> values, std::size_t rows,
                                   std::size_t dim);

  std::size_t rows() const { return rows_; }
  std::size_t dim() const { return dim_; }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  const double* data() const { return values_.data(); }

  // Symmetric bit for bit: cosine(i, j) == cosine(j, i).
  double cosine(NodeId i, NodeId j) const;

 private:
  std::vector<double> values_;
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
};

using NodePair = std::pair<NodeId, NodeId>;

// Pairs (i, j), i < j, of messages sharing at least one attribute, sorted.
std::vector<NodePair> build_attribute_edges(std::span<const MessageRecord> corpus);

// For every message, all other messages by descending cosine similarity;
// equal similarities are ordered by ascending index.
class NeighborRanking {
 public:
  NeighborRanking() = default;
  NeighborRanking(std::size_t size, std::vector<NodeId> order,
                  std::vector<double> similarity);

  std::size_t size() const { return size_; }
  std::size_t depth() const { return size_ == 0 ? 0 : size_ - 1; }
  std::span<const NodeId> neighbors(NodeId i) const {
    return {order_.data() + i * depth(), depth()};
  }
  std::span<const double> similarities(NodeId i) const {
    return {similarity_.data() + i * depth(), depth()};
  }

 private:
  std::size_t size_ = 0;
  std::vector<NodeId> order_;
  std::vector<double> similarity_;
};

struct RankOptions {
  // Query rows per tile; bounds the scratch similarity block.
  std::size_t tile_rows = 64;
  // Worker threads for tiles; 0 means hardware concurrency.
  std::size_t threads = 1;
};

// Exact all-pairs ranking. Throws InputError for fewer than 2 messages.
NeighborRanking rank_neighbors(const EmbeddingMatrix& embeddings,
                               const RankOptions& options = {});

// 1D structural entropy as k-NN edge sets are added; values[k - 1] belongs
// to the graph linking every node to its top-k neighbors.
struct SeTrace {
  std::vector<double> values;
  std::size_t chosen_k = 0;
  // True when no stable point appeared and chosen_k is the trace argmin.
  bool fallback = false;
};

// Picks the neighbor count at the first stable point of the 1D structural
// entropy trace: the first k - 1 whose value is strictly below both
// neighbors. Edges carry weight max(cosine, 0); edges with weight 0 and
// pairs already linked are skipped. Requires at least 3 messages.
SeTrace select_k(const NeighborRanking& ranking);

// Pairs (i, j), i < j, where one is among the other's top-k neighbors.
std::vector<NodePair> semantic_edges(const NeighborRanking& ranking, std::size_t k);

// Union of both edge sets, each weighted by max(cosine, 0). Zero weights are
// dropped by the graph builder.
WeightedGraph build_message_graph(const EmbeddingMatrix& embeddings,
                                  std::span<const NodePair> attribute_edges,
                                  std::span<const NodePair> semantic_edge_set);

WeightedGraph build_message_graph(const EmbeddingMatrix& embeddings,
                                  std::span<const NodePair> attribute_edges,
                                  std::size_t chosen_k, const NeighborRanking& ranking);

}  // namespace seclust

#endif  // SECLUST_EDGE_BUILDER_HPP_
