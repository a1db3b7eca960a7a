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

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "seclust/error.hpp"
#include "testing/oracles.hpp"

namespace seclust {
namespace {

WeightedGraph four_cycle() {
  const std::vector<Edge> edges{{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 1.0}};
  return WeightedGraph::build(edges, 4);
}

WeightedGraph two_triangles() {
  const std::vector<Edge> edges{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0},
                                {3, 4, 1.0}, {4, 5, 1.0}, {3, 5, 1.0}};
  return WeightedGraph::build(edges, 6);
}

TEST(WeightedGraphTest, SingleEdge) {
  const std::vector<Edge> edges{{0, 1, 1.0}};
  const auto g = WeightedGraph::build(edges, 2);
  EXPECT_EQ(g.degree(0), 1.0);
  EXPECT_EQ(g.degree(1), 1.0);
  EXPECT_EQ(g.volume(), 2.0);
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(WeightedGraphTest, EmptyGraph) {
  const auto g = WeightedGraph::build({}, 3);
  EXPECT_EQ(g.node_count(), 3u);
  for (NodeId v = 0; v < 3; ++v) EXPECT_EQ(g.degree(v), 0.0);
  EXPECT_EQ(g.volume(), 0.0);
}

TEST(WeightedGraphTest, FourCycle) {
  const auto g = four_cycle();
  for (NodeId v = 0; v < 4; ++v) EXPECT_EQ(g.degree(v), 2.0);
  EXPECT_EQ(g.volume(), 8.0);
}

TEST(WeightedGraphTest, RejectsSelfLoop) {
  const std::vector<Edge> edges{{1, 1, 1.0}};
  EXPECT_THROW(WeightedGraph::build(edges, 2), InputError);
}

TEST(WeightedGraphTest, RejectsNegativeWeight) {
  const std::vector<Edge> edges{{0, 1, -0.5}};
  EXPECT_THROW(WeightedGraph::build(edges, 2), InputError);
}

TEST(WeightedGraphTest, RejectsNonFiniteWeight) {
  const std::vector<Edge> edges{{0, 1, std::numeric_limits<double>::quiet_NaN()}};
  EXPECT_THROW(WeightedGraph::build(edges, 2), InputError);
}

TEST(WeightedGraphTest, RejectsOutOfRangeNode) {
  const std::vector<Edge> edges{{0, 2, 1.0}};
  EXPECT_THROW(WeightedGraph::build(edges, 2), InputError);
}

TEST(WeightedGraphTest, RejectsConflictingDuplicate) {
  const std::vector<Edge> edges{{0, 1, 1.0}, {1, 0, 2.0}};
  EXPECT_THROW(WeightedGraph::build(edges, 2), InputError);
}

TEST(WeightedGraphTest, MergesConsistentDuplicate) {
  const std::vector<Edge> edges{{0, 1, 1.5}, {1, 0, 1.5}};
  const auto g = WeightedGraph::build(edges, 2);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.volume(), 3.0);
}

TEST(WeightedGraphTest, DropsZeroWeights) {
  const std::vector<Edge> edges{{0, 1, 0.0}, {1, 2, 1.0}};
  const auto g = WeightedGraph::build(edges, 3);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_FALSE(g.edge_weight(0, 1).has_value());
  EXPECT_EQ(g.degree(0), 0.0);
}

TEST(WeightedGraphTest, EdgeLookupIsSymmetric) {
  const auto g = four_cycle();
  EXPECT_EQ(g.edge_weight(0, 3), 1.0);
  EXPECT_EQ(g.edge_weight(3, 0), 1.0);
  EXPECT_FALSE(g.edge_weight(0, 2).has_value());
}

TEST(WeightedGraphTest, DegreesMatchRawSums) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto raw = testing::random_edges(rng, 30, 0.2);
    std::vector<Edge> edges;
    for (const auto& e : raw) edges.push_back({e.u, e.v, e.w});
    const auto g = WeightedGraph::build(edges, 30);
    const auto degrees = testing::raw_degrees(30, raw);
    long double volume = 0;
    for (NodeId v = 0; v < 30; ++v) {
      EXPECT_NEAR(g.degree(v), static_cast<double>(degrees[v]), 1e-12);
      volume += degrees[v];
    }
    EXPECT_NEAR(g.volume(), static_cast<double>(volume), 1e-10);
    EXPECT_EQ(g.edges().size(), raw.size());
  }
}

TEST(WeightedGraphTest, InducedKeepsInternalEdgesOnly) {
  const auto g = two_triangles();
  const std::vector<Edge> bridge_edges{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}, {2, 3, 4.0}};
  const auto h = WeightedGraph::build(bridge_edges, 4);
  const std::vector<NodeId> nodes{2, 3, 1};
  const auto sub = h.induced(nodes);
  EXPECT_EQ(sub.node_count(), 3u);
  EXPECT_EQ(sub.edge_weight(0, 1), 4.0);
  EXPECT_EQ(sub.edge_weight(0, 2), 1.0);
  EXPECT_FALSE(sub.edge_weight(1, 2).has_value());
  EXPECT_EQ(g.induced(std::vector<NodeId>{0, 3}).edge_count(), 0u);
}

TEST(CutWeightTest, FourCyclePair) {
  const std::vector<NodeId> members{0, 1};
  EXPECT_EQ(cut_weight(four_cycle(), members), 2.0);
}

TEST(CutWeightTest, WholeGraphHasNoCut) {
  const std::vector<NodeId> members{0, 1, 2, 3};
  EXPECT_EQ(cut_weight(four_cycle(), members), 0.0);
}

TEST(CutWeightTest, DisconnectedTriangle) {
  const std::vector<NodeId> members{0, 1, 2};
  EXPECT_EQ(cut_weight(two_triangles(), members), 0.0);
}

TEST(CutWeightTest, RejectsUnknownNode) {
  const std::vector<NodeId> members{0, 9};
  EXPECT_THROW(cut_weight(four_cycle(), members), std::out_of_range);
}

TEST(PartitionTest, ValidatesCoverage) {
  EXPECT_THROW(Partition({{0, 1}}, 3), InputError);
  EXPECT_THROW(Partition({{0, 1}, {1, 2}}, 3), InputError);
  EXPECT_THROW(Partition({{0, 1}, {}, {2}}, 3), InputError);
  EXPECT_THROW(Partition({{0, 5}}, 2), InputError);
  EXPECT_NO_THROW(Partition({{2, 0}, {1}}, 3));
}

TEST(PartitionTest, CanonicalOrdersBySmallestMember) {
  const Partition p({{4, 2}, {3, 0}, {1}}, 5);
  const Partition c = p.canonical();
  const std::vector<std::vector<NodeId>> expected{{0, 3}, {1}, {2, 4}};
  EXPECT_EQ(c.clusters(), expected);
}

TEST(PartitionTest, LabelsRoundTrip) {
  const Partition p({{4, 2}, {3, 0}, {1}}, 5);
  const auto labels = p.labels();
  EXPECT_EQ(Partition::from_labels(labels).canonical(), p.canonical());
}

TEST(PartitionTest, Singletons) {
  const auto p = Partition::singletons(3);
  EXPECT_EQ(p.cluster_count(), 3u);
  EXPECT_EQ(p.universe_size(), 3u);
}

}  // namespace
}  // namespace seclust
