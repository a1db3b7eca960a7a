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

#ifndef SECLUST_GRAPH_HPP_
#define SECLUST_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace seclust {

// Dense node index in [0, node_count). Callers own the mapping to external ids.
using NodeId = std::uint32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 0.0;
};

struct Neighbor {
  NodeId node = 0;
  double weight = 0.0;
};

// Immutable undirected weighted graph in CSR form. Each adjacency row is
// sorted by neighbor id, which doubles as the pair index for lookups.
// Safe to share across threads once built.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  // Deduplicates undirected pairs and drops zero-weight edges. Throws
  // InputError on self-loops, negative or non-finite weights, out-of-range
  // endpoints, and repeated pairs whose weights disagree.
  static WeightedGraph build(std::span<const Edge> edges,
                             std::size_t node_count);

  std::size_t node_count() const { return degrees_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  double degree(NodeId v) const { return degrees_[v]; }
  std::span<const double> degrees() const { return degrees_; }

  // Sum of all degrees, i.e. twice the total edge weight.
  double volume() const { return volume_; }

  std::span<const Neighbor> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  std::optional<double> edge_weight(NodeId u, NodeId v) const;

  // Every edge once, with u < v, sorted by (u, v).
  std::vector<Edge> edges() const;

  // Standalone graph over `nodes`; local id i stands for nodes[i]. Only edges
  // with both endpoints in `nodes` are kept. `nodes` must be distinct.
  WeightedGraph induced(std::span<const NodeId> nodes) const;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<double> degrees_;
  double volume_ = 0.0;
  std::size_t edge_count_ = 0;
};

// Total weight of edges with exactly one endpoint in `members`.
// Throws std::out_of_range for unknown node ids.
double cut_weight(const WeightedGraph& graph, std::span<const NodeId> members);

// Disjoint non-empty clusters covering [0, universe_size).
class Partition {
 public:
  Partition() = default;

  // Throws InputError when clusters are empty, overlap, reference ids outside
  // the universe, or leave part of the universe uncovered.
  Partition(std::vector<std::vector<NodeId>> clusters, std::size_t universe_size);

  static Partition singletons(std::size_t universe_size);
  static Partition from_labels(std::span<const std::uint32_t> labels);

  std::size_t universe_size() const { return universe_size_; }
  std::size_t cluster_count() const { return clusters_.size(); }
  const std::vector<std::vector<NodeId>>& clusters() const { return clusters_; }

  // Cluster index per node, in cluster order.
  std::vector<std::uint32_t> labels() const;

  // Members sorted ascending; clusters ordered by their smallest member.
  Partition canonical() const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<std::vector<NodeId>> clusters_;
  std::size_t universe_size_ = 0;
};

}  // namespace seclust

#endif  // SECLUST_GRAPH_HPP_
