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

#include "seclust/synth.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "seclust/error.hpp"

namespace seclust {
namespace {

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sq += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(sq);
}

TEST(SynthCorpusTest, SameSeedSameCorpus) {
  SynthSpec spec;
  spec.noise = 0.3;
  spec.leak = 0.1;
  spec.seed = 42;
  const auto a = synthesize_corpus(spec);
  const auto b = synthesize_corpus(spec);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].id, b.records[i].id);
    EXPECT_EQ(a.records[i].attributes, b.records[i].attributes);
    EXPECT_EQ(a.records[i].embedding, b.records[i].embedding);
  }
  EXPECT_EQ(a.truth, b.truth);
  spec.seed = 43;
  EXPECT_NE(synthesize_corpus(spec).records[0].embedding, a.records[0].embedding);
}

TEST(SynthCorpusTest, ShapeAndIds) {
  SynthSpec spec;
  spec.events = 3;
  spec.messages_per_event = 7;
  spec.dim = 5;
  const auto c = synthesize_corpus(spec);
  ASSERT_EQ(c.records.size(), 21u);
  std::map<std::uint32_t, int> counts;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < c.records.size(); ++i) {
    ++counts[c.truth[i]];
    ids.insert(c.records[i].id);
    EXPECT_EQ(c.records[i].embedding.size(), 5u);
  }
  EXPECT_EQ(ids.size(), 21u);
  EXPECT_EQ(c.records[0].id, "m00000");
  for (const auto& [event, n] : counts) EXPECT_EQ(n, 7) << event;
}

TEST(SynthCorpusTest, NoNoiseNoLeakGivesCleanEvents) {
  SynthSpec spec;
  spec.events = 4;
  spec.messages_per_event = 10;
  const auto c = synthesize_corpus(spec);
  std::map<std::uint32_t, std::vector<double>> centroid;
  for (std::size_t i = 0; i < c.records.size(); ++i) {
    const auto& r = c.records[i];
    ASSERT_EQ(r.attributes.size(), 2u);
    EXPECT_EQ(r.attributes[0], "user:" + r.id);
    EXPECT_EQ(r.attributes[1], "hashtag:event" + std::to_string(c.truth[i]));
    auto [it, fresh] = centroid.emplace(c.truth[i], r.embedding);
    if (!fresh) {
      EXPECT_EQ(it->second, r.embedding);
    }
  }
}

TEST(SynthCorpusTest, NoiseScalesWithCentroidDistance) {
  SynthSpec spec;
  spec.events = 6;
  spec.messages_per_event = 200;
  spec.dim = 64;
  spec.noise = 0.3;
  const auto noisy = synthesize_corpus(spec);
  spec.noise = 0.0;
  const auto clean = synthesize_corpus(spec);
  std::map<std::uint32_t, std::vector<double>> centroid;
  for (std::size_t i = 0; i < clean.records.size(); ++i) {
    centroid.emplace(clean.truth[i], clean.records[i].embedding);
  }
  double mean_centroid = 0.0;
  int pairs = 0;
  for (const auto& [a, ca] : centroid) {
    for (const auto& [b, cb] : centroid) {
      if (a < b) {
        mean_centroid += distance(ca, cb);
        ++pairs;
      }
    }
  }
  mean_centroid /= pairs;
  double mean_noise = 0.0;
  for (std::size_t i = 0; i < noisy.records.size(); ++i) {
    mean_noise += distance(noisy.records[i].embedding, centroid.at(noisy.truth[i]));
  }
  mean_noise /= static_cast<double>(noisy.records.size());
  EXPECT_NEAR(mean_noise / mean_centroid, 0.3, 0.02);
}

TEST(SynthCorpusTest, LeakAndTagRatesAreRespected) {
  SynthSpec spec;
  spec.events = 5;
  spec.messages_per_event = 400;
  spec.tag_probability = 0.6;
  spec.leak = 0.1;
  const auto c = synthesize_corpus(spec);
  double own = 0, leaked = 0;
  for (std::size_t i = 0; i < c.records.size(); ++i) {
    for (const auto& a : c.records[i].attributes) {
      if (a == "hashtag:event" + std::to_string(c.truth[i])) ++own;
      else if (a.rfind("hashtag:", 0) == 0) ++leaked;
    }
  }
  const double n = static_cast<double>(c.records.size());
  EXPECT_NEAR(own / n, 0.6, 0.04);
  EXPECT_NEAR(leaked / n, 0.1, 0.03);
}

TEST(SynthCorpusTest, RejectsBadSpecs) {
  SynthSpec spec;
  spec.events = 0;
  EXPECT_THROW(synthesize_corpus(spec), InputError);
  spec = {};
  spec.messages_per_event = 0;
  EXPECT_THROW(synthesize_corpus(spec), InputError);
  spec = {};
  spec.leak = 1.5;
  EXPECT_THROW(synthesize_corpus(spec), InputError);
  spec = {};
  spec.noise = -1.0;
  EXPECT_THROW(synthesize_corpus(spec), InputError);
}

TEST(PlantedGraphTest, CertainEdgesGiveDisjointCliques) {
  PlantedGraphSpec spec;
  spec.block_sizes = {3, 4, 5};
  spec.p_in = 1.0;
  spec.p_out = 0.0;
  const auto g = planted_partition_graph(spec);
  EXPECT_EQ(g.graph.node_count(), 12u);
  EXPECT_EQ(g.graph.edge_count(), 3u + 6u + 10u);
  for (const Edge& e : g.graph.edges()) EXPECT_EQ(g.truth[e.u], g.truth[e.v]);
}

TEST(PlantedGraphTest, Deterministic) {
  PlantedGraphSpec spec;
  spec.block_sizes = {20, 20};
  spec.p_in = 0.5;
  spec.p_out = 0.1;
  spec.seed = 8;
  const auto a = planted_partition_graph(spec);
  const auto b = planted_partition_graph(spec);
  EXPECT_EQ(a.truth, b.truth);
  EXPECT_EQ(a.graph.edge_count(), b.graph.edge_count());
  EXPECT_EQ(a.graph.volume(), b.graph.volume());
}

TEST(PlantedGraphTest, RejectsBadSpecs) {
  PlantedGraphSpec spec;
  EXPECT_THROW(planted_partition_graph(spec), InputError);
  spec.block_sizes = {2, 0};
  EXPECT_THROW(planted_partition_graph(spec), InputError);
  spec.block_sizes = {2};
  spec.p_in = 2.0;
  EXPECT_THROW(planted_partition_graph(spec), InputError);
}

}  // namespace
}  // namespace seclust
