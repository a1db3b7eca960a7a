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

#ifndef SECLUST_PIPELINE_HPP_
#define SECLUST_PIPELINE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seclust/edge_builder.hpp"
#include "seclust/graph.hpp"
#include "seclust/partitioner.hpp"

namespace seclust {

struct RunConfig {
  MinimizerConfig minimizer;
  RankOptions ranking;
  bool attribute_edges = true;
  bool semantic_edges = true;
  // Skips the entropy-driven search and links every node to its top k.
  std::optional<std::size_t> fixed_k;
  std::uint64_t seed = 1;
};

// Reads a JSON object with any of: subgraph_size, max_n_doublings,
// candidate_scope, threads, tile_rows, attribute_edges, semantic_edges, k,
// seed. Unknown keys and wrongly typed values throw InputError.
RunConfig parse_run_config(const std::string& text, const std::string& origin = "config");
RunConfig load_run_config(const std::filesystem::path& path);

struct DetectionReport {
  std::size_t messages = 0;
  std::size_t chosen_k = 0;
  bool k_fallback = false;
  std::vector<double> se_trace;
  std::size_t attribute_edges = 0;
  std::size_t semantic_edges = 0;
  std::size_t edges = 0;
  double se_2d = 0.0;
  std::size_t clusters = 0;
  std::size_t iterations = 0;
  std::size_t final_subgraph_size = 0;
  std::size_t doublings = 0;
  bool doubling_cap_hit = false;
  // Stage name and wall time in seconds, in execution order.
  std::vector<std::pair<std::string, double>> timings;

  std::string to_json() const;
};

struct Detection {
  Partition partition;
  DetectionReport report;
};

// Builds the message graph and partitions it. Throws InputError for an
// empty corpus or inconsistent embeddings.
Detection run_detection(std::span<const MessageRecord> corpus, const RunConfig& config);

struct Scores {
  double ari = 0.0;
  double ami = 0.0;
  double nmi = 0.0;

  std::string to_json() const;
};

Scores score_labels(std::span<const std::uint32_t> predicted,
                    std::span<const std::uint32_t> truth);
// Both sides must cover exactly the same ids. Throws InputError otherwise.
Scores score_partitions(const std::vector<std::vector<std::string>>& predicted,
                        const std::vector<std::vector<std::string>>& truth);

// "k,se" rows with values printed to round-trip precision.
std::string format_trace_csv(const SeTrace& trace);

struct BenchSpec {
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> subgraph_sizes;
  std::vector<CandidateScope> scopes = {CandidateScope::kAllPairs};
  std::size_t block_size = 100;
  double p_in = 0.2;
  double p_out = 0.002;
  bool vanilla = true;
  std::size_t threads = 1;
  std::uint64_t seed = 1;

  void validate() const;
};

struct BenchRow {
  std::size_t nodes = 0;
  // "vanilla" or "hierarchical".
  std::string method;
  // 0 for vanilla.
  std::size_t subgraph_size = 0;
  CandidateScope scope = CandidateScope::kAllPairs;
  double seconds = 0.0;
  std::size_t clusters = 0;
  double se_2d = 0.0;
  double ari = 0.0;
};

std::vector<BenchRow> run_bench(const BenchSpec& spec);
std::string format_bench_csv(std::span<const BenchRow> rows);

}  // namespace seclust

#endif  // SECLUST_PIPELINE_HPP_
