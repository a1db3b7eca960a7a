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

#include "seclust/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "seclust/error.hpp"

namespace seclust {

WeightedGraph WeightedGraph::build(std::span<const Edge> edges,
                                   std::size_t node_count) {
  std::vector<Edge> sorted;
  sorted.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= node_count || e.v >= node_count) {
      throw InputError("edge (" + std::to_string(e.u) + ", " +
                       std::to_string(e.v) + ") references a node outside [0, " +
                       std::to_string(node_count) + ")");
    }
    if (e.u == e.v) {
      throw InputError("self-loop on node " + std::to_string(e.u));
    }
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw InputError("edge (" + std::to_string(e.u) + ", " +
                       std::to_string(e.v) + ") has invalid weight " +
                       std::to_string(e.weight));
    }
    sorted.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
  }
  std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  std::vector<Edge> unique;
  unique.reserve(sorted.size());
  for (const Edge& e : sorted) {
    if (!unique.empty() && unique.back().u == e.u && unique.back().v == e.v) {
      if (unique.back().weight != e.weight) {
        throw InputError("pair (" + std::to_string(e.u) + ", " +
                         std::to_string(e.v) +
                         ") listed twice with different weights");
      }
      continue;
    }
    unique.push_back(e);
  }
  std::erase_if(unique, [](const Edge& e) { return e.weight == 0.0; });

  WeightedGraph graph;
  graph.edge_count_ = unique.size();
  graph.degrees_.assign(node_count, 0.0);
  std::vector<std::size_t> row_size(node_count, 0);
  for (const Edge& e : unique) {
    ++row_size[e.u];
    ++row_size[e.v];
  }
  graph.offsets_.assign(node_count + 1, 0);
  for (std::size_t i = 0; i < node_count; ++i) {
    graph.offsets_[i + 1] = graph.offsets_[i] + row_size[i];
  }
  graph.adjacency_.resize(graph.offsets_[node_count]);
  std::vector<std::size_t> cursor(graph.offsets_.begin(), graph.offsets_.end() - 1);
  // Edges arrive sorted by (u, v), so each row ends up sorted by neighbor id:
  // row x receives smaller neighbors (as v) before larger ones (as u).
  for (const Edge& e : unique) {
    graph.adjacency_[cursor[e.v]++] = {e.u, e.weight};
  }
  for (const Edge& e : unique) {
    graph.adjacency_[cursor[e.u]++] = {e.v, e.weight};
  }
  for (std::size_t i = 0; i < node_count; ++i) {
    double degree = 0.0;
    for (const Neighbor& n : graph.neighbors(static_cast<NodeId>(i))) {
      degree += n.weight;
    }
    graph.degrees_[i] = degree;
  }
  graph.volume_ = std::accumulate(graph.degrees_.begin(), graph.degrees_.end(), 0.0);
  return graph;
}

std::optional<double> WeightedGraph::edge_weight(NodeId u, NodeId v) const {
  if (u >= node_count() || v >= node_count()) return std::nullopt;
  auto row = neighbors(u);
  auto it = std::lower_bound(row.begin(), row.end(), v,
                             [](const Neighbor& n, NodeId id) { return n.node < id; });
  if (it == row.end() || it->node != v) return std::nullopt;
  return it->weight;
}

std::vector<Edge> WeightedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < node_count(); ++u) {
    for (const Neighbor& n : neighbors(u)) {
      if (u < n.node) out.push_back({u, n.node, n.weight});
    }
  }
  return out;
}

WeightedGraph WeightedGraph::induced(std::span<const NodeId> nodes) const {
  std::unordered_map<NodeId, NodeId> local;
  local.reserve(nodes.size() * 2);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] >= node_count()) {
      throw std::out_of_range("induced: node " + std::to_string(nodes[i]) +
                              " is not in the graph");
    }
    if (!local.emplace(nodes[i], static_cast<NodeId>(i)).second) {
      throw std::invalid_argument("induced: node " + std::to_string(nodes[i]) +
                                  " listed twice");
    }
  }
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const Neighbor& n : neighbors(nodes[i])) {
      auto it = local.find(n.node);
      if (it != local.end() && it->second > i) {
        kept.push_back({static_cast<NodeId>(i), it->second, n.weight});
      }
    }
  }
  return build(kept, nodes.size());
}

double cut_weight(const WeightedGraph& graph, std::span<const NodeId> members) {
  std::vector<char> inside(graph.node_count(), 0);
  for (NodeId v : members) {
    if (v >= graph.node_count()) {
      throw std::out_of_range("cut_weight: unknown node " + std::to_string(v));
    }
    inside[v] = 1;
  }
  double cut = 0.0;
  for (NodeId v : members) {
    for (const Neighbor& n : graph.neighbors(v)) {
      if (!inside[n.node]) cut += n.weight;
    }
  }
  return cut;
}

Partition::Partition(std::vector<std::vector<NodeId>> clusters,
                     std::size_t universe_size)
    : clusters_(std::move(clusters)), universe_size_(universe_size) {
  std::vector<char> seen(universe_size_, 0);
  std::size_t covered = 0;
  for (std::size_t c = 0; c < clusters_.size(); ++c) {
    if (clusters_[c].empty()) {
      throw InputError("partition cluster " + std::to_string(c) + " is empty");
    }
    for (NodeId v : clusters_[c]) {
      if (v >= universe_size_) {
        throw InputError("partition references node " + std::to_string(v) +
                         " outside a universe of " + std::to_string(universe_size_));
      }
      if (seen[v]) {
        throw InputError("node " + std::to_string(v) +
                         " appears in more than one cluster");
      }
      seen[v] = 1;
      ++covered;
    }
  }
  if (covered != universe_size_) {
    throw InputError("partition covers " + std::to_string(covered) + " of " +
                     std::to_string(universe_size_) + " nodes");
  }
}

Partition Partition::singletons(std::size_t universe_size) {
  std::vector<std::vector<NodeId>> clusters(universe_size);
  for (std::size_t i = 0; i < universe_size; ++i) {
    clusters[i] = {static_cast<NodeId>(i)};
  }
  return Partition(std::move(clusters), universe_size);
}

Partition Partition::from_labels(std::span<const std::uint32_t> labels) {
  std::unordered_map<std::uint32_t, std::size_t> index;
  std::vector<std::vector<NodeId>> clusters;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = index.emplace(labels[i], clusters.size());
    if (fresh) clusters.emplace_back();
    clusters[it->second].push_back(static_cast<NodeId>(i));
  }
  return Partition(std::move(clusters), labels.size());
}

std::vector<std::uint32_t> Partition::labels() const {
  std::vector<std::uint32_t> out(universe_size_, 0);
  for (std::size_t c = 0; c < clusters_.size(); ++c) {
    for (NodeId v : clusters_[c]) out[v] = static_cast<std::uint32_t>(c);
  }
  return out;
}

Partition Partition::canonical() const {
  Partition out = *this;
  for (auto& cluster : out.clusters_) std::sort(cluster.begin(), cluster.end());
  std::sort(out.clusters_.begin(), out.clusters_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

}  // namespace seclust
