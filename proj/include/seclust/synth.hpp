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

#ifndef SECLUST_SYNTH_HPP_
#define SECLUST_SYNTH_HPP_

// Seeded planted-partition generators. Identical specs give identical output
// on every platform that provides std::mt19937_64.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "seclust/edge_builder.hpp"
#include "seclust/graph.hpp"

namespace seclust {

struct SynthSpec {
  std::size_t events = 4;
  std::size_t messages_per_event = 50;
  std::size_t dim = 384;
  // Expected noise norm as a fraction of the mean distance between event
  // centroids.
  double noise = 0.0;
  // Probability that a message carries its event's tag.
  double tag_probability = 1.0;
  // Probability that a message also carries a tag of another event.
  double leak = 0.0;
  std::uint64_t seed = 1;

  // Throws InputError for zero events, messages or dimension, and for
  // probabilities outside [0, 1] or negative noise.
  void validate() const;
};

struct SynthCorpus {
  std::vector<MessageRecord> records;
  // Planted event index per record.
  std::vector<std::uint32_t> truth;
};

// Per-event Gaussian centroids with isotropic Gaussian noise. Every message
// has a unique sender attribute; event tags follow `tag_probability` and
// `leak`. Records are shuffled.
SynthCorpus synthesize_corpus(const SynthSpec& spec);

struct PlantedGraphSpec {
  std::vector<std::size_t> block_sizes;
  double p_in = 0.9;
  double p_out = 0.05;
  double w_in = 1.0;
  double w_out = 1.0;
  // Shuffle node ids so blocks are not contiguous.
  bool shuffle = true;
  std::uint64_t seed = 1;

  void validate() const;
};

struct PlantedGraph {
  WeightedGraph graph;
  std::vector<std::uint32_t> truth;
};

PlantedGraph planted_partition_graph(const PlantedGraphSpec& spec);

}  // namespace seclust

#endif  // SECLUST_SYNTH_HPP_
