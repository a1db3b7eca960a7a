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

#ifndef SECLUST_PARTITIONER_HPP_
#define SECLUST_PARTITIONER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>

#include "seclust/encoding_tree.hpp"
#include "seclust/graph.hpp"

namespace seclust {

enum class CandidateScope {
  // Only cluster pairs joined by at least one edge are scored, through a
  // lazily invalidated priority queue.
  kConnectedPairs,
  // Every pair is rescanned after every merge, as in the textbook greedy
  // algorithm. Cubic in the cluster count.
  kAllPairs,
};

std::string_view scope_name(CandidateScope scope);
// Accepts "connected-pairs" and "all-pairs". Throws InputError otherwise.
CandidateScope parse_scope(std::string_view name);

struct MinimizerConfig {
  std::size_t subgraph_size = 300;
  std::size_t max_n_doublings = 16;
  CandidateScope candidate_scope = CandidateScope::kConnectedPairs;
  // Workers for independent sub-graph batches; 0 means hardware concurrency.
  std::size_t threads = 1;

  // Throws InputError when subgraph_size < 2.
  void validate() const;
};

// Top-level cluster ids are positions in the initial cluster order. A merge
// keeps the smaller id, so ids stay stable and order clusters by first
// appearance.
using ClusterId = std::uint32_t;

struct MergeStep {
  ClusterId kept = 0;
  ClusterId absorbed = 0;
  double delta = 0.0;
};

struct GreedyOptions {
  CandidateScope scope = CandidateScope::kConnectedPairs;
  // Called after every accepted merge.
  std::function<void(const MergeStep&)> on_merge;
};

// Greedy two-level structural entropy minimization. Repeatedly applies the
// merge with the most negative delta (ties: lexicographically smallest id
// pair) until no merge lowers the entropy. Returns the surviving clusters in
// id order.
Partition greedy_2d(const WeightedGraph& graph, const EncodingTree& initial,
                    const GreedyOptions& options = {});
Partition greedy_2d(const WeightedGraph& graph, const Partition& initial,
                    const GreedyOptions& options = {});

struct HierarchicalResult {
  Partition partition;
  std::size_t iterations = 0;
  std::size_t final_subgraph_size = 0;
  std::size_t doublings = 0;
  // The doubling cap stopped the search before a single batch covered
  // every cluster.
  bool doubling_cap_hit = false;
};

// Hierarchical minimization over consecutive batches of at most n clusters.
// Each batch is minimized greedily on its induced sub-graph; an iteration
// without any merge doubles n. Finishes after an iteration that processed a
// single batch.
HierarchicalResult hierarchical_2d(const WeightedGraph& graph, const MinimizerConfig& config);

// Event detection: isolated nodes become singleton events, the rest goes
// through hierarchical_2d. Cluster order: detected clusters first, then the
// isolated nodes by id.
HierarchicalResult detect(const WeightedGraph& graph, const MinimizerConfig& config);

}  // namespace seclust

#endif  // SECLUST_PARTITIONER_HPP_
