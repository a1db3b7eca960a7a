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

#include "seclust/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "seclust/encoding_tree.hpp"
#include "seclust/entropy.hpp"
#include "seclust/error.hpp"
#include "seclust/metrics.hpp"
#include "seclust/synth.hpp"

namespace seclust {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string round_trip(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

template <typename T>
T field(const json& j, const char* key, const std::string& origin) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(origin + ": \"" + key + "\" has the wrong type");
  }
}

std::size_t count_field(const json& j, const char* key, const std::string& origin) {
  if (!j.at(key).is_number_unsigned()) {
    throw InputError(origin + ": \"" + key + "\" must be a non-negative integer");
  }
  return j.at(key).get<std::size_t>();
}

double two_level_se(const WeightedGraph& graph, const Partition& partition) {
  if (graph.volume() == 0.0) return 0.0;
  return se_tree(graph, two_level_tree(graph, partition)).bits;
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(origin + ": malformed JSON: " + e.what());
  }
  if (!j.is_object()) throw InputError(origin + ": expected a JSON object");
  RunConfig config;
  for (const auto& [key, value] : j.items()) {
    if (key == "subgraph_size") {
      config.minimizer.subgraph_size = count_field(j, "subgraph_size", origin);
    } else if (key == "max_n_doublings") {
      config.minimizer.max_n_doublings = count_field(j, "max_n_doublings", origin);
    } else if (key == "candidate_scope") {
      config.minimizer.candidate_scope =
          parse_scope(field<std::string>(j, "candidate_scope", origin));
    } else if (key == "threads") {
      config.minimizer.threads = count_field(j, "threads", origin);
      config.ranking.threads = config.minimizer.threads;
    } else if (key == "tile_rows") {
      config.ranking.tile_rows = count_field(j, "tile_rows", origin);
    } else if (key == "attribute_edges") {
      config.attribute_edges = field<bool>(j, "attribute_edges", origin);
    } else if (key == "semantic_edges") {
      config.semantic_edges = field<bool>(j, "semantic_edges", origin);
    } else if (key == "k") {
      config.fixed_k = count_field(j, "k", origin);
    } else if (key == "seed") {
      config.seed = count_field(j, "seed", origin);
    } else {
      throw InputError(origin + ": unknown key \"" + key + "\"");
    }
  }
  config.minimizer.validate();
  if (config.ranking.tile_rows == 0) throw InputError(origin + ": tile_rows must be positive");
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream probe(path);
  if (!probe) throw InputError("cannot read config " + path.string());
  std::ostringstream text;
  text << probe.rdbuf();
  return parse_run_config(text.str(), path.string());
}

std::string DetectionReport::to_json() const {
  ordered_json j;
  j["messages"] = messages;
  j["chosen_k"] = chosen_k;
  j["k_fallback"] = k_fallback;
  j["se_trace"] = se_trace;
  j["attribute_edges"] = attribute_edges;
  j["semantic_edges"] = semantic_edges;
  j["edges"] = edges;
  j["se_2d"] = se_2d;
  j["clusters"] = clusters;
  j["iterations"] = iterations;
  j["final_subgraph_size"] = final_subgraph_size;
  j["doublings"] = doublings;
  j["doubling_cap_hit"] = doubling_cap_hit;
  ordered_json times = ordered_json::object();
  for (const auto& [stage, secs] : timings) times[stage] = secs;
  j["seconds"] = std::move(times);
  return j.dump(2) + "\n";
}

Detection run_detection(std::span<const MessageRecord> corpus, const RunConfig& config) {
  config.minimizer.validate();
  if (corpus.empty()) throw InputError("corpus has no messages");
  Detection out;
  DetectionReport& report = out.report;
  report.messages = corpus.size();
  const std::size_t n = corpus.size();

  auto start = Clock::now();
  const EmbeddingMatrix embeddings = EmbeddingMatrix::from_records(corpus);
  report.timings.emplace_back("embeddings", seconds_since(start));

  std::vector<NodePair> attribute_pairs;
  if (config.attribute_edges) {
    start = Clock::now();
    attribute_pairs = build_attribute_edges(corpus);
    report.timings.emplace_back("attribute_edges", seconds_since(start));
  }
  report.attribute_edges = attribute_pairs.size();

  std::vector<NodePair> semantic_pairs;
  if (config.semantic_edges && n >= 2) {
    start = Clock::now();
    const NeighborRanking ranking = rank_neighbors(embeddings, config.ranking);
    report.timings.emplace_back("rank_neighbors", seconds_since(start));
    start = Clock::now();
    if (config.fixed_k) {
      if (*config.fixed_k == 0 || *config.fixed_k > n - 1) {
        throw InputError("k must be in [1, " + std::to_string(n - 1) + "], got " +
                         std::to_string(*config.fixed_k));
      }
      report.chosen_k = *config.fixed_k;
    } else if (n == 2) {
      report.chosen_k = 1;
    } else {
      const SeTrace trace = select_k(ranking);
      report.chosen_k = trace.chosen_k;
      report.k_fallback = trace.fallback;
      report.se_trace = trace.values;
    }
    report.timings.emplace_back("select_k", seconds_since(start));
    semantic_pairs = semantic_edges(ranking, report.chosen_k);
  }
  report.semantic_edges = semantic_pairs.size();

  start = Clock::now();
  const WeightedGraph graph = build_message_graph(embeddings, attribute_pairs, semantic_pairs);
  report.edges = graph.edge_count();
  report.timings.emplace_back("build_graph", seconds_since(start));

  start = Clock::now();
  HierarchicalResult result = detect(graph, config.minimizer);
  report.timings.emplace_back("partition", seconds_since(start));

  report.se_2d = two_level_se(graph, result.partition);
  report.clusters = result.partition.cluster_count();
  report.iterations = result.iterations;
  report.final_subgraph_size = result.final_subgraph_size;
  report.doublings = result.doublings;
  report.doubling_cap_hit = result.doubling_cap_hit;
  out.partition = std::move(result.partition);
  return out;
}

std::string Scores::to_json() const {
  ordered_json j;
  j["ari"] = ari;
  j["ami"] = ami;
  j["nmi"] = nmi;
  return j.dump(2) + "\n";
}

Scores score_labels(std::span<const std::uint32_t> predicted,
                    std::span<const std::uint32_t> truth) {
  const LabeledPartition labels(std::vector<std::uint64_t>(predicted.begin(), predicted.end()),
                                std::vector<std::uint64_t>(truth.begin(), truth.end()));
  return {ari(labels), ami(labels), nmi(labels)};
}

Scores score_partitions(const std::vector<std::vector<std::string>>& predicted,
                        const std::vector<std::vector<std::string>>& truth) {
  std::unordered_map<std::string, std::uint64_t> truth_label;
  for (std::size_t c = 0; c < truth.size(); ++c) {
    for (const auto& id : truth[c]) truth_label.emplace(id, c);
  }
  std::vector<std::uint64_t> pred_labels;
  std::vector<std::uint64_t> truth_labels;
  for (std::size_t c = 0; c < predicted.size(); ++c) {
    for (const auto& id : predicted[c]) {
      const auto it = truth_label.find(id);
      if (it == truth_label.end()) {
        throw InputError("id '" + id + "' is in the partition but not in the truth");
      }
      pred_labels.push_back(c);
      truth_labels.push_back(it->second);
    }
  }
  if (pred_labels.size() != truth_label.size()) {
    throw InputError("partition covers " + std::to_string(pred_labels.size()) +
                     " ids but the truth covers " + std::to_string(truth_label.size()));
  }
  const LabeledPartition labels(std::move(pred_labels), std::move(truth_labels));
  return {ari(labels), ami(labels), nmi(labels)};
}

std::string format_trace_csv(const SeTrace& trace) {
  std::string out = "k,se\n";
  for (std::size_t k = 0; k < trace.values.size(); ++k) {
    out += std::to_string(k + 1) + "," + round_trip(trace.values[k]) + "\n";
  }
  return out;
}

void BenchSpec::validate() const {
  if (sizes.empty()) throw InputError("bench needs at least one graph size");
  for (std::size_t s : sizes) {
    if (s < 2) throw InputError("bench graph sizes must be at least 2");
  }
  if (subgraph_sizes.empty() && !vanilla) throw InputError("bench has nothing to run");
  for (std::size_t n : subgraph_sizes) {
    if (n < 2) throw InputError("sub-graph sizes must be at least 2");
  }
  if (scopes.empty()) throw InputError("bench needs at least one candidate scope");
  if (block_size == 0) throw InputError("block size must be positive");
}

std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  spec.validate();
  std::vector<BenchRow> rows;
  for (std::size_t size : spec.sizes) {
    PlantedGraphSpec gs;
    for (std::size_t left = size; left > 0;) {
      const std::size_t b = std::min(left, spec.block_size);
      gs.block_sizes.push_back(b);
      left -= b;
    }
    gs.p_in = spec.p_in;
    gs.p_out = spec.p_out;
    gs.seed = spec.seed;
    const PlantedGraph planted = planted_partition_graph(gs);

    auto record = [&](std::string method, std::size_t n, CandidateScope scope, double secs,
                      const Partition& partition) {
      BenchRow row;
      row.nodes = size;
      row.method = std::move(method);
      row.subgraph_size = n;
      row.scope = scope;
      row.seconds = secs;
      row.clusters = partition.cluster_count();
      row.se_2d = two_level_se(planted.graph, partition);
      const auto labels = partition.labels();
      row.ari = score_labels(labels, planted.truth).ari;
      rows.push_back(std::move(row));
    };

    for (CandidateScope scope : spec.scopes) {
      if (spec.vanilla) {
        GreedyOptions options;
        options.scope = scope;
        const auto start = Clock::now();
        const Partition p =
            greedy_2d(planted.graph, Partition::singletons(planted.graph.node_count()), options);
        record("vanilla", 0, scope, seconds_since(start), p);
      }
      for (std::size_t n : spec.subgraph_sizes) {
        MinimizerConfig config;
        config.subgraph_size = n;
        config.candidate_scope = scope;
        config.threads = spec.threads;
        const auto start = Clock::now();
        const HierarchicalResult r = hierarchical_2d(planted.graph, config);
        record("hierarchical", n, scope, seconds_since(start), r.partition);
      }
    }
  }
  return rows;
}

std::string format_bench_csv(std::span<const BenchRow> rows) {
  std::ostringstream out;
  out << "nodes,method,subgraph_size,scope,seconds,clusters,se_2d,ari\n";
  for (const BenchRow& r : rows) {
    out << r.nodes << ',' << r.method << ',' << r.subgraph_size << ',' << scope_name(r.scope)
        << ',' << round_trip(r.seconds) << ',' << r.clusters << ',' << round_trip(r.se_2d)
        << ',' << round_trip(r.ari) << '\n';
  }
  return out.str();
}

}  // namespace seclust
