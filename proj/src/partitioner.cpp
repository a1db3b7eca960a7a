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

#include "seclust/partitioner.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <queue>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "seclust/error.hpp"
#include "seclust/kernels.hpp"

namespace seclust {
namespace {

using Clusters = std::vector<std::vector<NodeId>>;

// Flat two-level state for greedy merging. Cluster ids index every array;
// dead clusters keep their slot.
class GreedyMerger {
 public:
  GreedyMerger(const WeightedGraph& graph, Clusters clusters)
      : total_(graph.volume()),
        log2_total_(kernels::log2_ref(graph.volume())),
        members_(std::move(clusters)) {
    const std::size_t count = members_.size();
    volume_.assign(count, 0.0);
    cut_.assign(count, 0.0);
    log2_volume_.assign(count, 0.0);
    alive_.assign(count, 1);
    version_.assign(count, 0);
    links_.resize(count);

    std::vector<ClusterId> owner(graph.node_count());
    for (ClusterId c = 0; c < count; ++c) {
      for (NodeId v : members_[c]) owner[v] = c;
    }
    for (ClusterId c = 0; c < count; ++c) {
      double volume = 0.0;
      double cut = 0.0;
      for (NodeId v : members_[c]) {
        volume += graph.degree(v);
        for (const Neighbor& n : graph.neighbors(v)) {
          const ClusterId other = owner[n.node];
          if (other != c) {
            cut += n.weight;
            links_[c][other] += n.weight;
          }
        }
      }
      volume_[c] = volume;
      cut_[c] = cut;
      log2_volume_[c] = kernels::log2_ref(volume);
    }
  }

  void run(const GreedyOptions& options) {
    if (total_ == 0.0 || members_.size() < 2) return;
    if (options.scope == CandidateScope::kAllPairs) {
      run_all_pairs(options);
    } else {
      run_connected(options);
    }
  }

  Clusters surviving() && {
    Clusters out;
    for (ClusterId c = 0; c < members_.size(); ++c) {
      if (alive_[c]) out.push_back(std::move(members_[c]));
    }
    return out;
  }

 private:
  struct Candidate {
    double delta;
    ClusterId a;
    ClusterId b;
    std::uint32_t version_a;
    std::uint32_t version_b;
  };

  struct WorseCandidate {
    bool operator()(const Candidate& x, const Candidate& y) const {
      if (x.delta != y.delta) return x.delta > y.delta;
      if (x.a != y.a) return x.a > y.a;
      return x.b > y.b;
    }
  };

  // `a` < `b`; the lower id is always the anchor so both scopes round alike.
  double delta(ClusterId a, ClusterId b, double inter) const {
    const kernels::MergeAnchor anchor{volume_[a], cut_[a], log2_volume_[a]};
    return kernels::merge_delta_ref(anchor, volume_[b], cut_[b], log2_volume_[b], inter,
                                    total_, log2_total_);
  }

  void merge(ClusterId a, ClusterId b) {
    auto& la = links_[a];
    auto& lb = links_[b];
    const auto it = la.find(b);
    const double inter = it == la.end() ? 0.0 : it->second;
    cut_[a] = cut_[a] + cut_[b] - 2.0 * inter;
    volume_[a] = volume_[a] + volume_[b];
    log2_volume_[a] = kernels::log2_ref(volume_[a]);
    members_[a].insert(members_[a].end(), members_[b].begin(), members_[b].end());
    members_[b].clear();
    la.erase(b);
    lb.erase(a);
    for (const auto& [c, w] : lb) {
      auto& lc = links_[c];
      lc.erase(b);
      lc[a] += w;
      la[c] += w;
    }
    lb.clear();
    alive_[b] = 0;
    ++version_[a];
    ++version_[b];
  }

  void run_connected(const GreedyOptions& options) {
    std::priority_queue<Candidate, std::vector<Candidate>, WorseCandidate> heap;
    auto offer = [&](ClusterId x, ClusterId y, double inter) {
      if (x > y) std::swap(x, y);
      const double d = delta(x, y, inter);
      if (d < 0.0) heap.push({d, x, y, version_[x], version_[y]});
    };
    for (ClusterId a = 0; a < members_.size(); ++a) {
      for (const auto& [c, w] : links_[a]) {
        if (c > a) offer(a, c, w);
      }
    }
    while (!heap.empty()) {
      const Candidate top = heap.top();
      heap.pop();
      if (!alive_[top.a] || !alive_[top.b] || version_[top.a] != top.version_a ||
          version_[top.b] != top.version_b) {
        continue;
      }
      merge(top.a, top.b);
      if (options.on_merge) options.on_merge({top.a, top.b, top.delta});
      for (const auto& [c, w] : links_[top.a]) offer(top.a, c, w);
    }
  }

  void run_all_pairs(const GreedyOptions& options) {
    const kernels::KernelTable& k = kernels::active();
    std::vector<ClusterId> order;
    for (ClusterId c = 0; c < members_.size(); ++c) order.push_back(c);
    std::vector<std::size_t> position(members_.size());
    std::vector<double> volume(volume_), cut(cut_), log2_volume(log2_volume_);
    std::vector<double> inter(order.size(), 0.0);
    std::vector<double> out(order.size(), 0.0);

    while (order.size() >= 2) {
      const std::size_t count = order.size();
      for (std::size_t p = 0; p < count; ++p) position[order[p]] = p;
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_p = 0;
      std::size_t best_q = 0;
      for (std::size_t p = 0; p + 1 < count; ++p) {
        const auto& row_links = links_[order[p]];
        for (const auto& [c, w] : row_links) inter[position[c]] = w;
        const kernels::MergeAnchor anchor{volume[p], cut[p], log2_volume[p]};
        const kernels::MergeCandidates candidates{volume.data() + p + 1, cut.data() + p + 1,
                                                  log2_volume.data() + p + 1,
                                                  inter.data() + p + 1, count - p - 1};
        k.merge_deltas(anchor, candidates, total_, log2_total_, out.data() + p + 1);
        for (std::size_t q = p + 1; q < count; ++q) {
          if (out[q] < best) {
            best = out[q];
            best_p = p;
            best_q = q;
          }
        }
        for (const auto& [c, w] : row_links) inter[position[c]] = 0.0;
      }
      if (!(best < 0.0)) break;

      const ClusterId a = order[best_p];
      const ClusterId b = order[best_q];
      merge(a, b);
      if (options.on_merge) options.on_merge({a, b, best});
      volume[best_p] = volume_[a];
      cut[best_p] = cut_[a];
      log2_volume[best_p] = log2_volume_[a];
      order.erase(order.begin() + static_cast<std::ptrdiff_t>(best_q));
      volume.erase(volume.begin() + static_cast<std::ptrdiff_t>(best_q));
      cut.erase(cut.begin() + static_cast<std::ptrdiff_t>(best_q));
      log2_volume.erase(log2_volume.begin() + static_cast<std::ptrdiff_t>(best_q));
    }
  }

  double total_;
  double log2_total_;
  Clusters members_;
  std::vector<double> volume_;
  std::vector<double> cut_;
  std::vector<double> log2_volume_;
  std::vector<char> alive_;
  std::vector<std::uint32_t> version_;
  std::vector<std::unordered_map<ClusterId, double>> links_;
};

Clusters run_greedy(const WeightedGraph& graph, Clusters clusters, const GreedyOptions& options) {
  GreedyMerger merger(graph, std::move(clusters));
  merger.run(options);
  return std::move(merger).surviving();
}

// Minimizes one batch of clusters on its induced sub-graph.
Clusters minimize_batch(const WeightedGraph& graph, std::span<const std::vector<NodeId>> batch,
                        CandidateScope scope) {
  std::vector<NodeId> nodes;
  for (const auto& cluster : batch) nodes.insert(nodes.end(), cluster.begin(), cluster.end());
  const WeightedGraph sub = graph.induced(nodes);
  Clusters local;
  local.reserve(batch.size());
  NodeId next = 0;
  for (const auto& cluster : batch) {
    std::vector<NodeId> ids(cluster.size());
    for (auto& id : ids) id = next++;
    local.push_back(std::move(ids));
  }
  GreedyOptions options;
  options.scope = scope;
  Clusters merged = run_greedy(sub, std::move(local), options);
  for (auto& cluster : merged) {
    for (auto& id : cluster) id = nodes[id];
  }
  return merged;
}

std::size_t resolve_threads(std::size_t requested) {
  if (requested != 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace

std::string_view scope_name(CandidateScope scope) {
  return scope == CandidateScope::kAllPairs ? "all-pairs" : "connected-pairs";
}

CandidateScope parse_scope(std::string_view name) {
  if (name == "connected-pairs" || name == "connected") return CandidateScope::kConnectedPairs;
  if (name == "all-pairs" || name == "all") return CandidateScope::kAllPairs;
  throw InputError("unknown candidate scope '" + std::string(name) +
                   "' (expected connected-pairs or all-pairs)");
}

void MinimizerConfig::validate() const {
  if (subgraph_size < 2) {
    throw InputError("sub-graph size must be at least 2, got " +
                     std::to_string(subgraph_size));
  }
}

Partition greedy_2d(const WeightedGraph& graph, const Partition& initial,
                    const GreedyOptions& options) {
  if (initial.universe_size() != graph.node_count()) {
    throw InputError("initial partition does not cover the graph");
  }
  return Partition(run_greedy(graph, initial.clusters(), options), graph.node_count());
}

Partition greedy_2d(const WeightedGraph& graph, const EncodingTree& initial,
                    const GreedyOptions& options) {
  if (initial.graph_node_count() != graph.node_count() || !initial.is_two_level()) {
    throw InputError("greedy_2d needs a two-level encoding tree of the same graph");
  }
  return greedy_2d(graph, initial.top_level_partition(), options);
}

HierarchicalResult hierarchical_2d(const WeightedGraph& graph, const MinimizerConfig& config) {
  config.validate();
  HierarchicalResult result;
  const std::size_t node_count = graph.node_count();
  Clusters clusters = Partition::singletons(node_count).clusters();
  std::size_t n = config.subgraph_size;
  const std::size_t threads = resolve_threads(config.threads);

  while (!clusters.empty()) {
    ++result.iterations;
    const std::size_t batch_count = (clusters.size() + n - 1) / n;
    std::vector<Clusters> outputs(batch_count);
    auto run_batch = [&](std::size_t b) {
      const std::size_t begin = b * n;
      const std::size_t end = std::min(clusters.size(), begin + n);
      outputs[b] = minimize_batch(
          graph, std::span<const std::vector<NodeId>>(clusters).subspan(begin, end - begin),
          config.candidate_scope);
    };
    const std::size_t workers = std::min(threads, batch_count);
    if (workers <= 1) {
      for (std::size_t b = 0; b < batch_count; ++b) run_batch(b);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t b; (b = next.fetch_add(1)) < batch_count;) run_batch(b);
        });
      }
    }

    Clusters merged;
    for (auto& out : outputs) {
      for (auto& cluster : out) merged.push_back(std::move(cluster));
    }
    const bool unchanged = merged.size() == clusters.size();
    clusters = std::move(merged);
    if (batch_count == 1) break;
    if (unchanged) {
      if (result.doublings >= config.max_n_doublings) {
        result.doubling_cap_hit = true;
        break;
      }
      n = n > std::numeric_limits<std::size_t>::max() / 2
              ? std::numeric_limits<std::size_t>::max()
              : 2 * n;
      ++result.doublings;
    }
  }
  result.final_subgraph_size = n;
  result.partition = Partition(std::move(clusters), node_count);
  return result;
}

HierarchicalResult detect(const WeightedGraph& graph, const MinimizerConfig& config) {
  config.validate();
  std::vector<NodeId> active;
  std::vector<NodeId> isolated;
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    (graph.degree(v) > 0.0 ? active : isolated).push_back(v);
  }
  HierarchicalResult result;
  Clusters clusters;
  if (!active.empty()) {
    const WeightedGraph sub = graph.induced(active);
    result = hierarchical_2d(sub, config);
    for (const auto& cluster : result.partition.clusters()) {
      std::vector<NodeId> mapped(cluster.size());
      std::transform(cluster.begin(), cluster.end(), mapped.begin(),
                     [&](NodeId local) { return active[local]; });
      clusters.push_back(std::move(mapped));
    }
  } else {
    result.final_subgraph_size = config.subgraph_size;
  }
  for (NodeId v : isolated) clusters.push_back({v});
  result.partition = Partition(std::move(clusters), graph.node_count());
  return result;
}

}  // namespace seclust
