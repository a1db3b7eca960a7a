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

#ifndef SECLUST_ENCODING_TREE_HPP_
#define SECLUST_ENCODING_TREE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "seclust/graph.hpp"

namespace seclust {

using TreeNodeId = std::uint32_t;

// Rooted hierarchical partition of a graph's node set. The root holds every
// graph node; each leaf holds exactly one. Every node caches the volume of
// its member set and the weight of edges leaving it.
//
// Nodes removed by a merge stay addressable but are marked dead, so ids held
// by callers never alias a different node.
class EncodingTree {
 public:
  static constexpr TreeNodeId kRoot = 0;

  // A root over `graph_node_count` graph nodes with no children yet.
  explicit EncodingTree(std::size_t graph_node_count = 0);

  TreeNodeId add_internal(TreeNodeId parent);
  TreeNodeId add_leaf(TreeNodeId parent, NodeId vertex);

  // Computes member sets, volumes, cuts and heights bottom-up and checks the
  // structural invariants. Throws InputError if the tree is not a valid
  // encoding tree of `graph`.
  void finalize(const WeightedGraph& graph);

  std::size_t graph_node_count() const { return graph_node_count_; }
  std::size_t size() const { return nodes_.size(); }
  bool alive(TreeNodeId id) const { return nodes_.at(id).alive; }
  bool is_leaf(TreeNodeId id) const { return nodes_.at(id).vertex >= 0; }
  TreeNodeId parent(TreeNodeId id) const { return nodes_.at(id).parent; }
  const std::vector<TreeNodeId>& children(TreeNodeId id) const {
    return nodes_.at(id).children;
  }
  const std::vector<NodeId>& members(TreeNodeId id) const {
    return nodes_.at(id).members;
  }
  double volume(TreeNodeId id) const { return nodes_.at(id).volume; }
  double cut(TreeNodeId id) const { return nodes_.at(id).cut; }
  std::size_t height(TreeNodeId id) const { return nodes_.at(id).height; }
  std::size_t height() const { return nodes_.at(kRoot).height; }

  TreeNodeId leaf_of(NodeId vertex) const { return leaf_of_.at(vertex); }

  // True when every child of the root is internal and has only leaf children.
  bool is_two_level() const;

  // The top-level cluster containing `vertex` in a two-level tree.
  TreeNodeId cluster_of(NodeId vertex) const { return parent(leaf_of(vertex)); }

  // Leaf members of each child of the root, in child order.
  Partition top_level_partition() const;

  // Recomputes every cache from raw edges and the structure from scratch.
  // Throws InvariantError on any disagreement.
  void validate(const WeightedGraph& graph) const;

  // Replaces two children of the root with a single new child whose
  // children are the union of theirs. The new node takes the earlier of the
  // two positions among the root's children. The caller supplies the weight
  // of edges running between the two clusters.
  TreeNodeId merge_children(TreeNodeId a, TreeNodeId b, double inter_weight);

 private:
  struct Node {
    TreeNodeId parent = kRoot;
    std::vector<TreeNodeId> children;
    std::vector<NodeId> members;
    std::int64_t vertex = -1;
    double volume = 0.0;
    double cut = 0.0;
    std::size_t height = 0;
    bool alive = true;
  };

  std::size_t graph_node_count_ = 0;
  std::vector<Node> nodes_;
  std::vector<TreeNodeId> leaf_of_;
};

// Root, one internal node per cluster (in cluster order), one leaf per node.
// Throws InputError if `partition` does not cover the graph's nodes.
EncodingTree two_level_tree(const WeightedGraph& graph, const Partition& partition);

}  // namespace seclust

#endif  // SECLUST_ENCODING_TREE_HPP_
