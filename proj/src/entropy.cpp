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

#include "seclust/entropy.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "seclust/error.hpp"
#include "seclust/kernels.hpp"

namespace seclust {
namespace {

double plogp(double x, double total) {
  if (x == 0.0) return 0.0;
  const double p = x / total;
  return p * std::log2(p);
}

void require_top_level_pair(const EncodingTree& tree, TreeNodeId a, TreeNodeId b) {
  if (a == b) {
    throw std::invalid_argument("merge: both operands are tree node " + std::to_string(a));
  }
  for (TreeNodeId x : {a, b}) {
    if (x == EncodingTree::kRoot || x >= tree.size() || !tree.alive(x) ||
        tree.parent(x) != EncodingTree::kRoot || tree.is_leaf(x)) {
      throw std::invalid_argument("merge: tree node " + std::to_string(x) +
                                  " is not an internal child of the root");
    }
    for (TreeNodeId c : tree.children(x)) {
      if (!tree.is_leaf(c)) {
        throw std::invalid_argument("merge: tree node " + std::to_string(x) +
                                    " has non-leaf children; a two-level tree is required");
      }
    }
  }
}

}  // namespace

SeValue se_1d(std::span<const double> degrees) {
  const double volume = std::accumulate(degrees.begin(), degrees.end(), 0.0);
  if (volume == 0.0) return {0.0, true};
  const double weighted = kernels::active().plogp_sum(degrees.data(), degrees.size(),
                                                      kernels::log2_ref(volume));
  return {-weighted / volume, false};
}

SeValue se_1d(const WeightedGraph& graph) { return se_1d(graph.degrees()); }

SeValue se_1d_update(const SeValue& previous, const DegreeDelta& delta) {
  if (delta.affected.empty()) return previous;
  if (!(delta.new_volume > delta.old_volume)) {
    throw std::invalid_argument("se_1d_update: volume must grow (old " +
                                std::to_string(delta.old_volume) + ", new " +
                                std::to_string(delta.new_volume) + ")");
  }
  for (const DegreeChange& change : delta.affected) {
    if (!(change.new_degree > change.old_degree) || change.old_degree < 0.0) {
      throw std::invalid_argument("se_1d_update: degree of node " +
                                  std::to_string(change.node) + " does not increase");
    }
  }
  const double old_volume = delta.old_volume;
  const double new_volume = delta.new_volume;
  double bits = 0.0;
  if (old_volume > 0.0) {
    const double ratio = old_volume / new_volume;
    bits = ratio * (previous.bits - std::log2(ratio));
  }
  for (const DegreeChange& change : delta.affected) {
    bits += plogp(change.old_degree, new_volume) - plogp(change.new_degree, new_volume);
  }
  return {bits, false};
}

SeValue se_tree(const WeightedGraph& graph, const EncodingTree& tree) {
  const double volume = graph.volume();
  if (tree.graph_node_count() != graph.node_count() ||
      std::abs(tree.volume(EncodingTree::kRoot) - volume) > 1e-9 * std::max(1.0, volume)) {
    throw InputError("encoding tree does not belong to this graph");
  }
  if (volume == 0.0) return {0.0, true};
  double sum = 0.0;
  for (TreeNodeId id = 1; id < tree.size(); ++id) {
    if (!tree.alive(id)) continue;
    const double g = tree.cut(id);
    const double v = tree.volume(id);
    if (g == 0.0 || v == 0.0) continue;
    sum += (g / volume) * std::log2(v / tree.volume(tree.parent(id)));
  }
  return {-sum, false};
}

double merge_delta(const ClusterStats& a, const ClusterStats& b, double inter_weight,
                   double graph_volume) {
  const kernels::MergeAnchor anchor{a.volume, a.cut, kernels::log2_ref(a.volume)};
  return kernels::merge_delta_ref(anchor, b.volume, b.cut, kernels::log2_ref(b.volume),
                                  inter_weight, graph_volume,
                                  kernels::log2_ref(graph_volume));
}

double inter_cluster_weight(const WeightedGraph& graph, const EncodingTree& tree,
                            TreeNodeId a, TreeNodeId b) {
  const bool a_smaller = tree.members(a).size() <= tree.members(b).size();
  const TreeNodeId scan = a_smaller ? a : b;
  const TreeNodeId other = a_smaller ? b : a;
  double weight = 0.0;
  for (NodeId v : tree.members(scan)) {
    for (const Neighbor& n : graph.neighbors(v)) {
      if (tree.cluster_of(n.node) == other) weight += n.weight;
    }
  }
  return weight;
}

double merge_delta(const WeightedGraph& graph, const EncodingTree& tree, TreeNodeId a,
                   TreeNodeId b) {
  require_top_level_pair(tree, a, b);
  if (graph.volume() == 0.0) return 0.0;
  return merge_delta({tree.volume(a), tree.cut(a)}, {tree.volume(b), tree.cut(b)},
                     inter_cluster_weight(graph, tree, a, b), graph.volume());
}

TreeNodeId merge(const WeightedGraph& graph, EncodingTree& tree, TreeNodeId a,
                 TreeNodeId b) {
  require_top_level_pair(tree, a, b);
  return tree.merge_children(a, b, inter_cluster_weight(graph, tree, a, b));
}

}  // namespace seclust
