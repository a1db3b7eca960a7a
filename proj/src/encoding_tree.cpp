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

#include "seclust/encoding_tree.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>
#include <string>

#include "seclust/error.hpp"

namespace seclust {
namespace {

constexpr TreeNodeId kUnassigned = static_cast<TreeNodeId>(-1);

bool close(double cached, double fresh, double scale) {
  return std::abs(cached - fresh) <= 1e-12 * std::max(1.0, scale);
}

}  // namespace

EncodingTree::EncodingTree(std::size_t graph_node_count)
    : graph_node_count_(graph_node_count),
      nodes_(1),
      leaf_of_(graph_node_count, kUnassigned) {}

TreeNodeId EncodingTree::add_internal(TreeNodeId parent) {
  if (parent >= nodes_.size() || is_leaf(parent)) {
    throw std::invalid_argument("add_internal: parent is missing or a leaf");
  }
  const auto id = static_cast<TreeNodeId>(nodes_.size());
  Node node;
  node.parent = parent;
  nodes_.push_back(std::move(node));
  nodes_[parent].children.push_back(id);
  return id;
}

TreeNodeId EncodingTree::add_leaf(TreeNodeId parent, NodeId vertex) {
  if (parent >= nodes_.size() || is_leaf(parent)) {
    throw std::invalid_argument("add_leaf: parent is missing or a leaf");
  }
  if (vertex >= graph_node_count_) {
    throw InputError("leaf vertex " + std::to_string(vertex) + " outside the graph");
  }
  if (leaf_of_[vertex] != kUnassigned) {
    throw InputError("vertex " + std::to_string(vertex) + " has two leaves");
  }
  const auto id = static_cast<TreeNodeId>(nodes_.size());
  Node node;
  node.parent = parent;
  node.vertex = vertex;
  nodes_.push_back(std::move(node));
  nodes_[parent].children.push_back(id);
  leaf_of_[vertex] = id;
  return id;
}

void EncodingTree::finalize(const WeightedGraph& graph) {
  if (graph.node_count() != graph_node_count_) {
    throw InputError("encoding tree covers " + std::to_string(graph_node_count_) +
                     " nodes but the graph has " + std::to_string(graph.node_count()));
  }
  for (std::size_t v = 0; v < graph_node_count_; ++v) {
    if (leaf_of_[v] == kUnassigned) {
      throw InputError("vertex " + std::to_string(v) + " has no leaf");
    }
  }

  // Post-order over live nodes.
  std::vector<TreeNodeId> order;
  std::vector<std::pair<TreeNodeId, bool>> stack{{kRoot, false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      order.push_back(id);
      continue;
    }
    stack.push_back({id, true});
    for (auto it = nodes_[id].children.rbegin(); it != nodes_[id].children.rend(); ++it) {
      stack.push_back({*it, false});
    }
  }

  std::vector<TreeNodeId> owner(graph_node_count_, kUnassigned);
  for (TreeNodeId id : order) {
    Node& node = nodes_[id];
    if (node.vertex >= 0) {
      node.members = {static_cast<NodeId>(node.vertex)};
      node.height = 0;
    } else {
      if (node.children.empty() && !(id == kRoot && graph_node_count_ == 0)) {
        throw InputError("internal tree node " + std::to_string(id) +
                         " has no children");
      }
      node.members.clear();
      node.height = 0;
      for (TreeNodeId c : node.children) {
        const auto& cm = nodes_[c].members;
        node.members.insert(node.members.end(), cm.begin(), cm.end());
        node.height = std::max(node.height, nodes_[c].height + 1);
      }
      std::sort(node.members.begin(), node.members.end());
    }
    double volume = 0.0;
    double cut = 0.0;
    for (NodeId v : node.members) owner[v] = id;
    for (NodeId v : node.members) {
      volume += graph.degree(v);
      for (const Neighbor& n : graph.neighbors(v)) {
        if (owner[n.node] != id) cut += n.weight;
      }
    }
    node.volume = volume;
    node.cut = cut;
  }
  if (nodes_[kRoot].members.size() != graph_node_count_) {
    throw InputError("root does not cover every graph node");
  }
}

bool EncodingTree::is_two_level() const {
  for (TreeNodeId c : nodes_[kRoot].children) {
    if (is_leaf(c)) return false;
    for (TreeNodeId g : nodes_[c].children) {
      if (!is_leaf(g)) return false;
    }
  }
  return true;
}

Partition EncodingTree::top_level_partition() const {
  std::vector<std::vector<NodeId>> clusters;
  clusters.reserve(nodes_[kRoot].children.size());
  for (TreeNodeId c : nodes_[kRoot].children) {
    std::vector<NodeId> group;
    for (TreeNodeId leaf : nodes_[c].children) {
      group.push_back(static_cast<NodeId>(nodes_[leaf].vertex));
    }
    clusters.push_back(std::move(group));
  }
  return Partition(std::move(clusters), graph_node_count_);
}

void EncodingTree::validate(const WeightedGraph& graph) const {
  if (graph.node_count() != graph_node_count_) {
    throw InvariantError("tree and graph disagree on node count");
  }
  std::vector<TreeNodeId> owner(graph_node_count_, kUnassigned);
  const double scale = graph.volume();
  for (TreeNodeId id = 0; id < nodes_.size(); ++id) {
    const Node& node = nodes_[id];
    if (!node.alive) continue;
    if (id != kRoot) {
      const Node& up = nodes_[node.parent];
      if (!up.alive ||
          std::find(up.children.begin(), up.children.end(), id) == up.children.end()) {
        throw InvariantError("tree node " + std::to_string(id) +
                             " is not listed under its parent");
      }
    }
    if (node.vertex >= 0) {
      if (!node.children.empty() || node.members.size() != 1 ||
          node.members[0] != static_cast<NodeId>(node.vertex)) {
        throw InvariantError("leaf " + std::to_string(id) + " is malformed");
      }
    } else {
      std::vector<NodeId> joined;
      for (TreeNodeId c : node.children) {
        const auto& cm = nodes_[c].members;
        joined.insert(joined.end(), cm.begin(), cm.end());
      }
      std::sort(joined.begin(), joined.end());
      if (std::adjacent_find(joined.begin(), joined.end()) != joined.end()) {
        throw InvariantError("children of node " + std::to_string(id) + " overlap");
      }
      if (joined != node.members) {
        throw InvariantError("children of node " + std::to_string(id) +
                             " do not partition its members");
      }
    }
    double volume = 0.0;
    double cut = 0.0;
    for (NodeId v : node.members) owner[v] = id;
    for (NodeId v : node.members) {
      volume += graph.degree(v);
      for (const Neighbor& n : graph.neighbors(v)) {
        if (owner[n.node] != id) cut += n.weight;
      }
    }
    if (!close(node.volume, volume, scale) || !close(node.cut, cut, scale)) {
      throw InvariantError("cached volume/cut of tree node " + std::to_string(id) +
                           " disagree with the graph");
    }
  }
  if (nodes_[kRoot].members.size() != graph_node_count_) {
    throw InvariantError("root does not cover every graph node");
  }
}

TreeNodeId EncodingTree::merge_children(TreeNodeId a, TreeNodeId b,
                                        double inter_weight) {
  if (a == b) throw std::invalid_argument("merge: cannot merge a node with itself");
  for (TreeNodeId x : {a, b}) {
    if (x == kRoot || x >= nodes_.size() || !nodes_[x].alive ||
        nodes_[x].parent != kRoot || is_leaf(x)) {
      throw std::invalid_argument("merge: node " + std::to_string(x) +
                                  " is not an internal child of the root");
    }
  }
  const auto merged = static_cast<TreeNodeId>(nodes_.size());
  Node fresh;
  fresh.parent = kRoot;
  fresh.children = nodes_[a].children;
  fresh.children.insert(fresh.children.end(), nodes_[b].children.begin(),
                        nodes_[b].children.end());
  std::merge(nodes_[a].members.begin(), nodes_[a].members.end(),
             nodes_[b].members.begin(), nodes_[b].members.end(),
             std::back_inserter(fresh.members));
  fresh.volume = nodes_[a].volume + nodes_[b].volume;
  fresh.cut = nodes_[a].cut + nodes_[b].cut - 2.0 * inter_weight;
  fresh.height = std::max(nodes_[a].height, nodes_[b].height);
  nodes_.push_back(std::move(fresh));
  for (TreeNodeId c : nodes_[merged].children) nodes_[c].parent = merged;

  auto& top = nodes_[kRoot].children;
  auto pa = std::find(top.begin(), top.end(), a);
  auto pb = std::find(top.begin(), top.end(), b);
  if (pa < pb) {
    *pa = merged;
    top.erase(pb);
  } else {
    *pb = merged;
    top.erase(pa);
  }
  nodes_[a].alive = false;
  nodes_[b].alive = false;
  nodes_[a].children.clear();
  nodes_[b].children.clear();
  return merged;
}

EncodingTree two_level_tree(const WeightedGraph& graph, const Partition& partition) {
  if (partition.universe_size() != graph.node_count()) {
    throw InputError("partition universe (" + std::to_string(partition.universe_size()) +
                     ") differs from the graph's node count (" +
                     std::to_string(graph.node_count()) + ")");
  }
  EncodingTree tree(graph.node_count());
  for (const auto& cluster : partition.clusters()) {
    const TreeNodeId alpha = tree.add_internal(EncodingTree::kRoot);
    for (NodeId v : cluster) tree.add_leaf(alpha, v);
  }
  tree.finalize(graph);
  return tree;
}

}  // namespace seclust
