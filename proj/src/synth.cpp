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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>

#include "seclust/error.hpp"

namespace seclust {
namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

// Draws from the engine directly so results do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * n); }

  bool bernoulli(double p) { return uniform() < p; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    while (u == 0.0) u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * M_PI * v);
    has_spare_ = true;
    return r * std::cos(2.0 * M_PI * v);
  }

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::string message_id(std::size_t index) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "m%05zu", index);
  return buffer;
}

}  // namespace

void SynthSpec::validate() const {
  if (events == 0) throw InputError("synthetic corpus needs at least one event");
  if (messages_per_event == 0) throw InputError("messages per event must be positive");
  if (dim == 0) throw InputError("embedding dimension must be positive");
  if (!(noise >= 0.0) || !std::isfinite(noise)) throw InputError("noise must be >= 0");
  if (!is_probability(tag_probability)) throw InputError("tag probability must be in [0, 1]");
  if (!is_probability(leak)) throw InputError("leak probability must be in [0, 1]");
}

SynthCorpus synthesize_corpus(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const std::size_t events = spec.events;
  const std::size_t dim = spec.dim;

  std::vector<double> centroids(events * dim);
  for (double& x : centroids) x = rng.normal();

  double mean_distance = 0.0;
  if (events > 1) {
    double sum = 0.0;
    for (std::size_t a = 0; a < events; ++a) {
      for (std::size_t b = a + 1; b < events; ++b) {
        double sq = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
          const double diff = centroids[a * dim + d] - centroids[b * dim + d];
          sq += diff * diff;
        }
        sum += std::sqrt(sq);
      }
    }
    mean_distance = sum / static_cast<double>(events * (events - 1) / 2);
  } else {
    double sq = 0.0;
    for (std::size_t d = 0; d < dim; ++d) sq += centroids[d] * centroids[d];
    mean_distance = std::sqrt(sq);
  }
  const double sigma = spec.noise * mean_distance / std::sqrt(static_cast<double>(dim));

  const std::size_t total = events * spec.messages_per_event;
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);

  SynthCorpus corpus;
  corpus.records.resize(total);
  corpus.truth.resize(total);
  for (std::size_t slot = 0; slot < total; ++slot) {
    const auto event = static_cast<std::uint32_t>(order[slot] / spec.messages_per_event);
    MessageRecord& r = corpus.records[slot];
    r.id = message_id(slot);
    r.embedding.resize(dim);
    std::size_t attempts = 0;
    do {
      for (std::size_t d = 0; d < dim; ++d) {
        r.embedding[d] = centroids[event * dim + d] + sigma * rng.normal();
      }
    } while (std::all_of(r.embedding.begin(), r.embedding.end(),
                         [](double x) { return x == 0.0; }) &&
             ++attempts < 16);
    r.attributes.push_back("user:" + r.id);
    if (rng.bernoulli(spec.tag_probability)) {
      r.attributes.push_back("hashtag:event" + std::to_string(event));
    }
    if (events > 1 && rng.bernoulli(spec.leak)) {
      std::size_t other = rng.below(events - 1);
      if (other >= event) ++other;
      r.attributes.push_back("hashtag:event" + std::to_string(other));
    }
    corpus.truth[slot] = event;
  }
  return corpus;
}

void PlantedGraphSpec::validate() const {
  if (block_sizes.empty()) throw InputError("planted graph needs at least one block");
  for (std::size_t s : block_sizes) {
    if (s == 0) throw InputError("planted blocks must be non-empty");
  }
  if (!is_probability(p_in) || !is_probability(p_out)) {
    throw InputError("edge probabilities must be in [0, 1]");
  }
  if (!(w_in > 0.0) || !(w_out > 0.0)) throw InputError("edge weights must be positive");
}

PlantedGraph planted_partition_graph(const PlantedGraphSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::vector<std::uint32_t> block;
  for (std::size_t b = 0; b < spec.block_sizes.size(); ++b) {
    block.insert(block.end(), spec.block_sizes[b], static_cast<std::uint32_t>(b));
  }
  if (spec.shuffle) rng.shuffle(block);
  const std::size_t n = block.size();
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const bool same = block[u] == block[v];
      if (rng.bernoulli(same ? spec.p_in : spec.p_out)) {
        edges.push_back({u, v, same ? spec.w_in : spec.w_out});
      }
    }
  }
  return {WeightedGraph::build(edges, n), std::move(block)};
}

}  // namespace seclust
