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

#include "seclust/cli.hpp"

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seclust/error.hpp"
#include "seclust/io.hpp"
#include "seclust/pipeline.hpp"
#include "seclust/synth.hpp"

namespace seclust {
namespace {

struct CorpusArgs {
  std::string corpus;
  std::string embeddings;
};

void add_corpus_options(CLI::App* cmd, CorpusArgs& args) {
  cmd->add_option("--corpus", args.corpus, "JSON-lines corpus")->required();
  cmd->add_option("--embeddings", args.embeddings,
                  "Binary embedding sidecar; rows follow corpus order");
}

std::vector<MessageRecord> load_corpus(const CorpusArgs& args) {
  std::optional<std::filesystem::path> sidecar;
  if (!args.embeddings.empty()) sidecar = args.embeddings;
  return io::read_corpus(args.corpus, sidecar);
}

std::vector<std::string> ids_of(const std::vector<MessageRecord>& records) {
  std::vector<std::string> ids;
  ids.reserve(records.size());
  for (const auto& r : records) ids.push_back(r.id);
  return ids;
}

struct DetectArgs {
  CorpusArgs corpus;
  std::string out;
  std::string report;
  std::string config;
  std::optional<std::size_t> subgraph_size;
  std::optional<std::size_t> max_doublings;
  std::optional<std::string> scope;
  std::optional<std::size_t> threads;
  std::optional<std::size_t> k;
  bool no_attributes = false;
  bool no_semantic = false;
};

RunConfig resolve_config(const DetectArgs& a) {
  RunConfig config = a.config.empty() ? RunConfig{} : load_run_config(a.config);
  if (a.subgraph_size) config.minimizer.subgraph_size = *a.subgraph_size;
  if (a.max_doublings) config.minimizer.max_n_doublings = *a.max_doublings;
  if (a.scope) config.minimizer.candidate_scope = parse_scope(*a.scope);
  if (a.threads) {
    config.minimizer.threads = *a.threads;
    config.ranking.threads = *a.threads;
  }
  if (a.k) config.fixed_k = *a.k;
  if (a.no_attributes) config.attribute_edges = false;
  if (a.no_semantic) config.semantic_edges = false;
  config.minimizer.validate();
  return config;
}

int cmd_detect(const DetectArgs& a, std::ostream& out) {
  const RunConfig config = resolve_config(a);
  const auto records = load_corpus(a.corpus);
  const Detection detection = run_detection(records, config);
  const auto ids = ids_of(records);
  io::write_partition(a.out, detection.partition, ids);
  const std::string report = detection.report.to_json();
  if (a.report.empty()) {
    out << report;
  } else {
    io::write_text(a.report, report);
  }
  return kExitOk;
}

struct EvalArgs {
  std::string partition;
  std::string truth;
  std::string out;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const Scores scores =
      score_partitions(io::read_partition(a.partition), io::read_partition(a.truth));
  if (a.out.empty()) {
    out << scores.to_json();
  } else {
    io::write_text(a.out, scores.to_json());
  }
  return kExitOk;
}

struct SynthArgs {
  SynthSpec spec;
  std::string out;
  std::string truth;
  std::string embeddings;
};

int cmd_synth(const SynthArgs& a) {
  const SynthCorpus corpus = synthesize_corpus(a.spec);
  if (a.embeddings.empty()) {
    io::write_corpus(a.out, corpus.records, true);
  } else {
    io::EmbeddingBlock block;
    block.rows = static_cast<std::uint32_t>(corpus.records.size());
    block.dim = static_cast<std::uint32_t>(a.spec.dim);
    for (const auto& r : corpus.records) {
      for (double x : r.embedding) block.values.push_back(static_cast<float>(x));
    }
    io::write_embeddings(a.embeddings, block);
    io::write_corpus(a.out, corpus.records, false);
  }
  std::vector<std::vector<NodeId>> clusters(a.spec.events);
  for (NodeId i = 0; i < corpus.truth.size(); ++i) clusters[corpus.truth[i]].push_back(i);
  io::write_partition(a.truth, Partition(std::move(clusters), corpus.records.size()),
                      ids_of(corpus.records));
  return kExitOk;
}

struct BenchArgs {
  BenchSpec spec;
  std::vector<std::string> scopes;
  bool no_vanilla = false;
  std::string out;
};

int cmd_bench(BenchArgs a, std::ostream& out) {
  if (!a.scopes.empty()) {
    a.spec.scopes.clear();
    for (const auto& s : a.scopes) a.spec.scopes.push_back(parse_scope(s));
  }
  a.spec.vanilla = !a.no_vanilla;
  const auto rows = run_bench(a.spec);
  const std::string csv = format_bench_csv(rows);
  if (a.out.empty()) {
    out << csv;
  } else {
    io::write_text(a.out, csv);
  }
  return kExitOk;
}

struct TraceArgs {
  CorpusArgs corpus;
  std::string out;
};

int cmd_knn_trace(const TraceArgs& a, std::ostream& out) {
  const auto records = load_corpus(a.corpus);
  const auto embeddings = EmbeddingMatrix::from_records(records);
  const SeTrace trace = select_k(rank_neighbors(embeddings));
  const std::string csv = format_trace_csv(trace);
  if (a.out.empty()) {
    out << csv;
  } else {
    io::write_text(a.out, csv);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structural-entropy event detection over message graphs", "seclust"};
  app.require_subcommand(1);

  DetectArgs detect;
  auto* detect_cmd = app.add_subcommand("detect", "Build the message graph and partition it");
  add_corpus_options(detect_cmd, detect.corpus);
  detect_cmd->add_option("--out", detect.out, "Partition JSON output")->required();
  detect_cmd->add_option("--report", detect.report, "Report JSON output (default: stdout)");
  detect_cmd->add_option("--config", detect.config, "JSON run configuration; flags override");
  detect_cmd->add_option("-n,--subgraph-size", detect.subgraph_size, "Sub-graph size n");
  detect_cmd->add_option("--max-doublings", detect.max_doublings, "Cap on doublings of n");
  detect_cmd->add_option("--scope", detect.scope, "connected-pairs or all-pairs");
  detect_cmd->add_option("--threads", detect.threads, "Worker threads (0: all cores)");
  detect_cmd->add_option("-k", detect.k, "Fixed neighbor count instead of the entropy search");
  detect_cmd->add_flag("--no-attributes", detect.no_attributes, "Drop attribute edges");
  detect_cmd->add_flag("--no-semantic", detect.no_semantic, "Drop semantic edges");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score a partition against a truth partition");
  eval_cmd->add_option("--partition", eval.partition, "Predicted partition JSON")->required();
  eval_cmd->add_option("--truth", eval.truth, "Truth partition JSON")->required();
  eval_cmd->add_option("--out", eval.out, "Metrics JSON output (default: stdout)");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Write a planted-event corpus and its truth");
  synth_cmd->add_option("--events", synth.spec.events, "Number of events")->capture_default_str();
  synth_cmd->add_option("--messages", synth.spec.messages_per_event, "Messages per event")
      ->capture_default_str();
  synth_cmd->add_option("--dim", synth.spec.dim, "Embedding dimension")->capture_default_str();
  synth_cmd->add_option("--noise", synth.spec.noise,
                        "Noise norm relative to the mean centroid distance")
      ->capture_default_str();
  synth_cmd->add_option("--tag-probability", synth.spec.tag_probability,
                        "Chance a message carries its event tag")
      ->capture_default_str();
  synth_cmd->add_option("--leak", synth.spec.leak, "Chance of a tag from another event")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.spec.seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "Corpus output")->required();
  synth_cmd->add_option("--truth", synth.truth, "Truth partition output")->required();
  synth_cmd->add_option("--embeddings", synth.embeddings,
                        "Write embeddings to this sidecar instead of inline");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time vanilla and hierarchical minimization");
  bench_cmd->add_option("--sizes", bench.spec.sizes, "Graph sizes")
      ->delimiter(',')
      ->required();
  bench_cmd->add_option("-n,--subgraph-sizes", bench.spec.subgraph_sizes, "Sub-graph sizes")
      ->delimiter(',');
  bench_cmd->add_option("--scope", bench.scopes, "Candidate scopes")->delimiter(',');
  bench_cmd->add_option("--block-size", bench.spec.block_size, "Planted block size")
      ->capture_default_str();
  bench_cmd->add_option("--p-in", bench.spec.p_in, "Intra-block edge probability")
      ->capture_default_str();
  bench_cmd->add_option("--p-out", bench.spec.p_out, "Inter-block edge probability")
      ->capture_default_str();
  bench_cmd->add_option("--threads", bench.spec.threads, "Batch workers")->capture_default_str();
  bench_cmd->add_option("--seed", bench.spec.seed, "Random seed")->capture_default_str();
  bench_cmd->add_flag("--no-vanilla", bench.no_vanilla, "Skip the vanilla baseline");
  bench_cmd->add_option("--out", bench.out, "CSV output (default: stdout)");

  TraceArgs trace;
  auto* trace_cmd = app.add_subcommand("knn-trace", "Dump the 1D entropy trace over k as CSV");
  add_corpus_options(trace_cmd, trace.corpus);
  trace_cmd->add_option("--out", trace.out, "CSV output (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*detect_cmd) return cmd_detect(detect, out);
    if (*eval_cmd) return cmd_eval(eval, out);
    if (*synth_cmd) return cmd_synth(synth);
    if (*bench_cmd) return cmd_bench(bench, out);
    if (*trace_cmd) return cmd_knn_trace(trace, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
  return kExitInternalError;
}

}  // namespace seclust
