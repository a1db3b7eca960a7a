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


// Acceptance suite. Prints one PASS or FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "seclust/cli.hpp"
#include "seclust/edge_builder.hpp"
#include "seclust/encoding_tree.hpp"
#include "seclust/entropy.hpp"
#include "seclust/io.hpp"
#include "seclust/metrics.hpp"
#include "seclust/partitioner.hpp"
#include "seclust/pipeline.hpp"
#include "seclust/synth.hpp"
#include "testing/oracles.hpp"

namespace seclust {
namespace {

using testing::RawEdge;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

// |got - want| / max(1, |want|).
double rel_err(double got, long double want) {
  const long double scale = std::max(1.0L, std::fabs(want));
  return static_cast<double>(std::fabs(static_cast<long double>(got) - want) / scale);
}

WeightedGraph from_raw(std::size_t n, const std::vector<RawEdge>& raw) {
  std::vector<Edge> edges;
  for (const auto& e : raw) edges.push_back({e.u, e.v, e.w});
  return WeightedGraph::build(edges, n);
}

double tree_se(const WeightedGraph& g, const Partition& p) {
  return se_tree(g, two_level_tree(g, p)).bits;
}

// Incremental 1D entropy along k-NN insertion schedules vs recomputation.
Outcome incremental_entropy() {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  std::size_t checks = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng() % 62;
    const std::size_t dim = 2 + rng() % 15;
    std::vector<double> values(n * dim);
    for (double& v : values) v = normal(rng);
    const auto embeddings = EmbeddingMatrix::from_rows(values, n, dim);
    const auto ranking = rank_neighbors(embeddings);
    std::set<std::pair<NodeId, NodeId>> present;
    std::vector<RawEdge> edges;
    std::vector<double> degrees(n, 0.0);
    double volume = 0.0;
    SeValue value = se_1d(degrees);
    for (std::size_t k = 1; k < n; ++k) {
      std::map<NodeId, double> grow;
      double gained = 0.0;
      for (NodeId i = 0; i < n; ++i) {
        const NodeId j = ranking.neighbors(i)[k - 1];
        const double w = std::max(embeddings.cosine(i, j), 0.0);
        const auto key = std::minmax(i, j);
        if (w <= 0.0 || !present.insert(key).second) continue;
        edges.push_back({key.first, key.second, w});
        grow[i] += w;
        grow[j] += w;
        gained += 2.0 * w;
      }
      DegreeDelta delta;
      for (const auto& [v, g] : grow) delta.affected.push_back({v, degrees[v], degrees[v] + g});
      delta.old_volume = volume;
      delta.new_volume = volume + gained;
      value = se_1d_update(value, delta);
      for (const auto& c : delta.affected) degrees[c.node] = c.new_degree;
      volume = delta.new_volume;
      worst = std::max(worst, rel_err(value.bits, testing::se_1d(n, edges)));
      ++checks;
    }
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-9 && elapsed < 10.0,
          fmt("%zu schedule steps over 200 graphs, max rel err %.3g (<= 1e-9), %.2f s (< 10 s)",
              checks, worst, elapsed)};
}

// Closed-form merge delta vs the difference of recomputed tree entropies.
Outcome merge_delta_equivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(202);
  double worst = 0.0;
  int trees = 0;
  while (trees < 200) {
    const std::size_t n = 3 + rng() % 30;
    const auto raw = testing::random_edges(rng, n, 0.1 + 0.4 * (rng() % 100) / 100.0);
    const auto g = from_raw(n, raw);
    if (g.volume() == 0.0) continue;
    std::vector<std::uint32_t> labels(n);
    const std::uint32_t k = 2 + static_cast<std::uint32_t>(rng() % (n - 1));
    for (NodeId v = 0; v < n; ++v) labels[v] = v < k ? v : static_cast<std::uint32_t>(rng() % k);
    auto tree = two_level_tree(g, Partition::from_labels(labels));
    const auto children = tree.children(EncodingTree::kRoot);
    const TreeNodeId a = children[rng() % children.size()];
    TreeNodeId b = a;
    while (b == a) b = children[rng() % children.size()];
    const long double before = testing::se_two_level(n, raw, labels);
    const double predicted = merge_delta(g, tree, a, b);
    merge(g, tree, a, b);
    std::vector<std::uint32_t> after(n);
    for (NodeId v = 0; v < n; ++v) after[v] = tree.cluster_of(v);
    worst = std::max(worst, rel_err(predicted, testing::se_two_level(n, raw, after) - before));
    ++trees;
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-9 && elapsed < 10.0,
          fmt("200 trees, max rel err %.3g (<= 1e-9), %.2f s (< 10 s)", worst, elapsed)};
}

// Greedy from singletons on two disjoint unit triangles vs exhaustive search.
Outcome triangles_optimum() {
  const std::vector<RawEdge> raw{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0},
                                 {3, 4, 1.0}, {4, 5, 1.0}, {3, 5, 1.0}};
  const auto partitions = testing::all_set_partitions(6);
  long double best = std::numeric_limits<long double>::infinity();
  std::vector<std::uint32_t> best_labels;
  for (const auto& labels : partitions) {
    const long double h = testing::se_two_level(6, raw, labels);
    if (h < best - 1e-12L) {
      best = h;
      best_labels = labels;
    }
  }
  const Partition optimum = Partition::from_labels(best_labels).canonical();
  const auto g = from_raw(6, raw);
  bool match = partitions.size() == 203;
  for (CandidateScope scope : {CandidateScope::kConnectedPairs, CandidateScope::kAllPairs}) {
    GreedyOptions options;
    options.scope = scope;
    match = match && greedy_2d(g, Partition::singletons(6), options).canonical() == optimum;
  }
  return {match, fmt("%zu partitions enumerated, optimum %d clusters at %.6Lf bits", partitions.size(),
                     static_cast<int>(optimum.cluster_count()), best)};
}

// Hierarchical minimization with n >= |V| vs greedy from singletons.
Outcome hierarchical_vanilla() {
  std::mt19937_64 rng(303);
  int identical = 0;
  int equal_se = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 99;
    const auto g = from_raw(n, testing::random_edges(rng, n, 2.0 / static_cast<double>(n) +
                                                                 0.2 * (rng() % 100) / 100.0));
    MinimizerConfig config;
    config.subgraph_size = n + rng() % 50;
    const Partition h = hierarchical_2d(g, config).partition;
    const Partition v = greedy_2d(g, Partition::singletons(n));
    identical += h == v;
    equal_se += tree_se(g, h) == tree_se(g, v);
  }
  return {identical == 50 && equal_se == 50,
          fmt("%d/50 identical partitions, %d/50 bit-equal entropies", identical, equal_se)};
}

// Connected-pairs vs all-pairs candidate scopes.
Outcome scope_agreement() {
  std::mt19937_64 rng(404);
  double worst = 0.0;
  int diverged = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 39;
    const auto g = from_raw(n, testing::random_edges(rng, n, 0.05 + 0.4 * (rng() % 100) / 100.0));
    GreedyOptions all;
    all.scope = CandidateScope::kAllPairs;
    const double a = tree_se(g, greedy_2d(g, Partition::singletons(n)));
    const double b = tree_se(g, greedy_2d(g, Partition::singletons(n), all));
    const double diff = std::fabs(a - b);
    worst = std::max(worst, diff);
    if (diff > 1e-9) {
      ++diverged;
      std::printf("  divergence: trial %d, %zu nodes, connected %.17g, all-pairs %.17g\n", trial,
                  n, a, b);
    }
  }
  return {diverged == 0, fmt("100 graphs, %d divergences, max |delta SE| %.3g (<= 1e-9)", diverged,
                             worst)};
}

SynthSpec eight_events() {
  SynthSpec spec;
  spec.events = 8;
  spec.messages_per_event = 100;
  spec.leak = 0.05;
  spec.noise = 0.3;
  spec.seed = 1;
  return spec;
}

Outcome planted_recovery() {
  const auto corpus = synthesize_corpus(eight_events());
  const auto start = Clock::now();
  const Detection d = run_detection(corpus.records, {});
  const double elapsed = seconds_since(start);
  const Scores s = score_labels(d.partition.labels(), corpus.truth);
  return {s.ari >= 0.9 && s.ami >= 0.9 && elapsed < 60.0,
          fmt("ARI %.4f, AMI %.4f (>= 0.9), k %zu, %zu clusters, %.2f s (< 60 s)", s.ari, s.ami,
              d.report.chosen_k, d.report.clusters, elapsed)};
}

Outcome semantic_ablation() {
  SynthSpec spec = eight_events();
  // Two messages of one event share the tag with probability 0.7.
  spec.tag_probability = std::sqrt(0.7);
  const auto corpus = synthesize_corpus(spec);
  std::size_t intra = 0;
  std::size_t unlinked = 0;
  for (std::size_t i = 0; i < corpus.records.size(); ++i) {
    for (std::size_t j = i + 1; j < corpus.records.size(); ++j) {
      if (corpus.truth[i] != corpus.truth[j]) continue;
      ++intra;
      const auto& a = corpus.records[i].attributes;
      const auto& b = corpus.records[j].attributes;
      const bool shared = std::any_of(a.begin(), a.end(), [&](const std::string& x) {
        return std::find(b.begin(), b.end(), x) != b.end();
      });
      unlinked += !shared;
    }
  }
  RunConfig attributes_only;
  attributes_only.semantic_edges = false;
  const double both = score_labels(run_detection(corpus.records, {}).partition.labels(),
                                   corpus.truth).ari;
  const double only = score_labels(
      run_detection(corpus.records, attributes_only).partition.labels(), corpus.truth).ari;
  const double share = static_cast<double>(unlinked) / static_cast<double>(intra);
  return {both - only >= 0.1,
          fmt("%.1f%% intra pairs without shared attributes, ARI both %.4f, attributes only "
              "%.4f, gap %.4f (>= 0.1)",
              100.0 * share, both, only, both - only)};
}

Outcome speedup() {
  BenchSpec spec;
  spec.sizes = {2000};
  spec.subgraph_sizes = {400, 200};
  spec.scopes = {CandidateScope::kAllPairs};
  const auto rows = run_bench(spec);
  double vanilla = 0.0;
  std::map<std::size_t, double> hierarchical;
  for (const auto& r : rows) {
    if (r.method == "vanilla") {
      vanilla = r.seconds;
    } else {
      hierarchical[r.subgraph_size] = r.seconds;
    }
  }
  const double ratio = vanilla / hierarchical[200];
  return {ratio >= 10.0 && hierarchical[200] <= hierarchical[400],
          fmt("2000 nodes, all-pairs scope: vanilla %.3f s, n=400 %.3f s, n=200 %.3f s, "
              "speedup %.1fx (>= 10), n=200 not slower than n=400",
              vanilla, hierarchical[400], hierarchical[200], ratio)};
}

Outcome robustness() {
  const auto corpus = synthesize_corpus(eight_events());
  double lo = 1.0;
  double hi = -1.0;
  std::string values;
  for (std::size_t n : {100, 200, 400}) {
    RunConfig config;
    config.minimizer.subgraph_size = n;
    const double a = score_labels(run_detection(corpus.records, config).partition.labels(),
                                  corpus.truth).ari;
    lo = std::min(lo, a);
    hi = std::max(hi, a);
    values += fmt(" n=%zu:%.4f", n, a);
  }
  return {hi - lo <= 0.1, fmt("ARI%s, range %.4f (<= 0.1)", values.c_str(), hi - lo)};
}

LabeledPartition lp(const std::vector<std::uint32_t>& pred,
                    const std::vector<std::uint32_t>& truth) {
  return LabeledPartition({pred.begin(), pred.end()}, {truth.begin(), truth.end()});
}

Outcome metrics() {
  int failures = 0;
  int checks = 0;
  auto check = [&](double got, double want) {
    ++checks;
    if (!(std::fabs(got - want) <= 1e-12)) ++failures;
  };
  const std::vector<std::uint32_t> six{0, 0, 1, 2, 2, 2};
  check(ari(lp(six, six)), 1.0);
  check(ami(lp(six, six)), 1.0);
  check(nmi(lp(six, six)), 1.0);
  check(ari(lp({0, 0, 0, 0, 0}, {0, 1, 2, 3, 4})), 0.0);
  check(ami(lp({0, 0, 0, 0}, {5, 5, 5, 5})), 1.0);
  const std::vector<std::uint32_t> crossed_pred{0, 0, 1, 1};
  const std::vector<std::uint32_t> crossed_truth{0, 1, 0, 1};
  check(ari(lp(crossed_pred, crossed_truth)),
        testing::pair_count_ari(crossed_pred, crossed_truth));
  const std::vector<std::uint32_t> pred6{0, 0, 1, 1, 2, 2};
  const std::vector<std::uint32_t> truth6{0, 0, 0, 1, 1, 1};
  check(ari(lp(pred6, truth6)), testing::pair_count_ari(pred6, truth6));
  check(ami(lp(pred6, truth6)), testing::direct_ami(pred6, truth6));
  check(nmi(lp(pred6, truth6)), testing::direct_nmi(pred6, truth6));
  std::mt19937_64 rng(1000);
  std::vector<std::uint32_t> a(1000), b(1000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = rng() & 1;
    b[i] = rng() & 1;
  }
  const double coin = nmi(lp(a, b));
  ++checks;
  failures += coin > 0.05;
  return {failures == 0, fmt("%d/%d checks within 1e-12, coin-flip NMI %.4g (<= 0.05)",
                             checks - failures, checks, coin)};
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "seclust");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != kExitOk) std::printf("  seclust %s: exit %d: %s", args[1].c_str(), code,
                                   err.str().c_str());
  return code;
}

Outcome determinism() {
  const char* base = std::getenv("SECLUST_TEST_TMP");
  const std::filesystem::path dir =
      std::filesystem::path(base ? base : std::filesystem::temp_directory_path().string()) /
      "seclust_acceptance";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto path = [&](const char* name) { return (dir / name).string(); };
  bool ok = cli({"synth", "--events", "8", "--messages", "100", "--leak", "0.05", "--noise",
                 "0.3", "--seed", "7", "--out", path("corpus.jsonl"), "--truth",
                 path("truth.json")}) == kExitOk;
  for (const char* out : {"first.json", "second.json"}) {
    ok = ok && cli({"detect", "--corpus", path("corpus.jsonl"), "--out", path(out), "--report",
                    path("report.json")}) == kExitOk;
  }
  const bool same = ok && io::read_text(path("first.json")) == io::read_text(path("second.json"));
  const std::size_t bytes = ok ? io::read_text(path("first.json")).size() : 0;
  std::filesystem::remove_all(dir);
  return {same, fmt("two detect runs on one corpus, partition files %s (%zu bytes)",
                    same ? "byte-identical" : "differ", bytes)};
}

}  // namespace
}  // namespace seclust

int main() {
  using Criterion = std::pair<const char*, std::function<seclust::Outcome()>>;
  const std::vector<Criterion> criteria{
      {"incremental-1d-entropy", seclust::incremental_entropy},
      {"merge-delta", seclust::merge_delta_equivalence},
      {"triangles-global-optimum", seclust::triangles_optimum},
      {"hierarchical-vanilla-agreement", seclust::hierarchical_vanilla},
      {"candidate-scope-agreement", seclust::scope_agreement},
      {"planted-recovery", seclust::planted_recovery},
      {"semantic-edge-ablation", seclust::semantic_ablation},
      {"hierarchical-speedup", seclust::speedup},
      {"subgraph-size-robustness", seclust::robustness},
      {"metrics", seclust::metrics},
      {"determinism", seclust::determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    seclust::Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failed += !outcome.pass;
    std::printf("%s %s: %s\n", outcome.pass ? "PASS" : "FAIL", name, outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
