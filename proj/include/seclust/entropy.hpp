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

#ifndef SECLUST_ENTROPY_HPP_
#define SECLUST_ENTROPY_HPP_

// Structural entropy on weighted graphs, in bits. 0 * log 0 is taken as 0
// throughout, so isolated nodes and zero-volume clusters contribute nothing.

#include <cstddef>
#include <span>
#include <vector>

#include "seclust/encoding_tree.hpp"
#include "seclust/graph.hpp"

namespace seclust {

struct SeValue {
  double bits = 0.0;
  // Set when the graph has zero volume and the value is 0 by convention.
  bool degenerate = false;
};

struct DegreeChange {
  NodeId node = 0;
  double old_degree = 0.0;
  double new_degree = 0.0;
};

// Degree changes caused by inserting one batch of edges.
struct DegreeDelta {
  std::vector<DegreeChange> affected;
  double old_volume = 0.0;
  double new_volume = 0.0;
};

// One-dimensional structural entropy: the entropy of the stationary
// distribution d_i / vol.
SeValue se_1d(const WeightedGraph& graph);
SeValue se_1d(std::span<const double> degrees);

// Updates a one-dimensional value after an edge insertion batch, touching
// only the affected nodes:
//
//   H' = (V/V') (H - log2(V/V')) + sum_j [ d_j/V' log2(d_j/V') - d'_j/V' log2(d'_j/V') ]
//
// An empty delta returns `previous` unchanged. Throws std::invalid_argument if
// the volume does not grow or any listed degree does not increase.
SeValue se_1d_update(const SeValue& previous, const DegreeDelta& delta);

// Structural entropy of `graph` under an arbitrary encoding tree:
// -sum over non-root nodes of (g / vol(root)) log2(vol / vol(parent)).
// Throws InputError if the tree was built for a different graph.
SeValue se_tree(const WeightedGraph& graph, const EncodingTree& tree);

// Volume and cut of one top-level cluster.
struct ClusterStats {
  double volume = 0.0;
  double cut = 0.0;
};

// Change in two-level structural entropy from merging clusters `a` and `b`
// joined by `inter_weight`, in a graph of volume `graph_volume` (> 0).
// Algebraically equal to the textbook expression
//   -(g_n/V) log2(v_n/V) - (v_a/V) log2(v_a/v_n) - (v_b/V) log2(v_b/v_n)
//   + (g_a/V) log2(v_a/V) + (g_b/V) log2(v_b/V)
// with v_n = v_a + v_b and g_n = g_a + g_b - 2 w, but evaluated as
//   [(v_a - g_a) log2(v_n/v_a) + (v_b - g_b) log2(v_n/v_b) + 2 w log2(v_n/V)] / V
// which is exactly 0 for two edge-free singletons. Not symmetric in the last
// bit; callers that need reproducible ties pass the lower-id cluster as `a`.
double merge_delta(const ClusterStats& a, const ClusterStats& b, double inter_weight,
                   double graph_volume);

// Total edge weight between top-level clusters `a` and `b` of a two-level
// tree, scanning the adjacency of the smaller cluster only.
double inter_cluster_weight(const WeightedGraph& graph, const EncodingTree& tree,
                            TreeNodeId a, TreeNodeId b);

// merge_delta for two children of the root, without touching the tree.
// Throws std::invalid_argument when a == b or either is not an internal child
// of the root of a two-level tree.
double merge_delta(const WeightedGraph& graph, const EncodingTree& tree, TreeNodeId a,
                   TreeNodeId b);

// Performs the merge and returns the new node. Same preconditions as above.
TreeNodeId merge(const WeightedGraph& graph, EncodingTree& tree, TreeNodeId a,
                 TreeNodeId b);

}  // namespace seclust

#endif  // SECLUST_ENTROPY_HPP_
