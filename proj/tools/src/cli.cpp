// Copyright 2026 The Sybilbench Authors
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

#include "sybilbench/cli.hpp"

#include <cstdlib>
#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "sybilbench/discovery.hpp"
#include "sybilbench/errors.hpp"
#include "sybilbench/eval.hpp"
#include "sybilbench/graph_io.hpp"
#include "sybilbench/traversing.hpp"

namespace sybilbench {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<unsigned> threads;
  std::string strategy;
  std::optional<std::size_t> budget;
  std::string pae_mode;
  std::string from;  // stats only
  bool quiet = false;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "Pipeline config (JSON)");
  cmd->add_option("--seed", o.seed, "Master seed; replaces the config seeds");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--threads", o.threads,
                  "Worker cap (fallback: SYBILBENCH_THREADS)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--strategy", o.strategy, "Attack strategy")
      ->check(CLI::IsMember({"random", "preat", "bfs"}));
  cmd->add_option("--budget", o.budget, "MB and PAE reveal budget");
  cmd->add_option("--pae-mode", o.pae_mode, "PAE neighbor rule")
      ->check(CLI::IsMember({"union", "literal"}));
  cmd->add_flag("--quiet", o.quiet, "Only log warnings and errors");
}

PipelineConfig resolve_config(const Options& o) {
  PipelineConfig config;
  if (!o.config.empty()) {
    if (!fs::exists(o.config)) {
      throw ConfigError("config file not found: " + o.config);
    }
    config = load_pipeline_config(o.config);
  }
  if (o.seed) config.seeds = {*o.seed};
  if (!o.out.empty()) config.output_dir = o.out;
  if (o.threads) {
    config.threads = *o.threads;
  } else if (const char* env = std::getenv("SYBILBENCH_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v <= 0) throw std::invalid_argument("non-positive");
      config.threads = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      throw ConfigError(std::string("SYBILBENCH_THREADS must be a positive "
                                    "integer, got '") + env + "'");
    }
  }
  if (!o.strategy.empty()) config.strategies = {parse_strategy(o.strategy)};
  if (o.budget) {
    config.mb.budget = *o.budget;
    config.pae.budget = *o.budget;
  }
  if (!o.pae_mode.empty()) config.pae.mode = parse_pae_mode(o.pae_mode);
  config.validate();
  return config;
}

std::uint64_t master_seed(const PipelineConfig& config) {
  if (config.seeds.size() > 1) {
    spdlog::info("using the first of {} configured seeds", config.seeds.size());
  }
  spdlog::info("master seed {}", config.seeds.front());
  return config.seeds.front();
}

std::string to_text(auto writer) {
  std::ostringstream ss;
  writer(ss);
  return ss.str();
}

void write_manifest(const fs::path& dir, std::string_view command,
                    const PipelineConfig& config) {
  write_file_atomic(dir / "manifest.json",
                    make_manifest(command, config).dump(2) + "\n");
}

Instance build_instance(const PipelineConfig& config, std::uint64_t seed,
                        const DirectedGraph& benign) {
  AttackConfig attack = config.attack;
  attack.strategy = config.strategies.front();
  return make_instance(benign, attack, config.train_fraction, seed);
}

std::size_t budget_or_default(const std::optional<std::size_t>& budget,
                              std::size_t num_benign) {
  return budget.value_or(default_budget(num_benign));
}

void cmd_synth(const PipelineConfig& config) {
  const std::uint64_t seed = master_seed(config);
  const fs::path dir = config.output_dir;
  DirectedGraph benign;
  std::vector<std::int64_t> raw_ids;
  if (config.dataset.path.empty()) {
    benign = generate_community_graph(config.dataset.generator);
  } else {
    LoadedGraph loaded =
        load_edge_list(config.dataset.path, config.dataset.directed);
    benign = std::move(loaded.graph);
    raw_ids = std::move(loaded.raw_ids);
  }
  AttackConfig attack = config.attack;
  attack.strategy = config.strategies.front();
  attack.seed = seed;
  const AttackOutcome outcome = synthesize_attack(benign, attack);

  write_file_atomic(dir / "graph.txt", to_text([&](std::ostream& os) {
                      write_edge_list(os, outcome.graph);
                    }));
  write_file_atomic(dir / "labels.txt", to_text([&](std::ostream& os) {
                      write_labels(os, outcome.truth);
                    }));
  write_file_atomic(dir / "resistance.txt", to_text([&](std::ostream& os) {
                      write_resistance(os, outcome.resistance);
                    }));
  if (!raw_ids.empty()) {
    write_file_atomic(dir / "node_map.txt", to_text([&](std::ostream& os) {
                        write_node_map(os, raw_ids);
                      }));
  }
  write_file_atomic(dir / "stats.json",
                    to_json(stats_report(outcome)).dump(2) + "\n");
  write_manifest(dir, "synth", config);
  spdlog::info("synthesized {} nodes, {} edges, {} attack edges into {}",
               outcome.graph.num_nodes(), outcome.graph.num_edges(),
               outcome.attack_edges.size(), dir.string());
}

void cmd_mb(const PipelineConfig& config) {
  const std::uint64_t seed = master_seed(config);
  const fs::path dir = config.output_dir;
  const DirectedGraph benign = load_dataset(config.dataset);
  const Instance inst = build_instance(config, seed, benign);
  const std::size_t k = budget_or_default(config.mb.budget, benign.num_nodes());

  RevealOracle oracle(inst.outcome.resistance.resistant);
  const RevealSet reveals = run_mb_algorithm(
      config.mb.algorithm, inst, k, config.mb, oracle, seed, config.threads);
  DiscoveryEngine engine(inst.outcome.graph, inst.known);
  const std::vector<std::uint8_t>& r = inst.outcome.resistance.resistant;
  std::string csv = "step,node,resistant,discovered_total\n";
  for (std::size_t i = 0; i < reveals.nodes.size(); ++i) {
    const NodeId v = reveals.nodes[i];
    const std::size_t total =
        engine.count(std::span<const NodeId>(reveals.nodes.data(), i + 1), r);
    csv += std::to_string(i + 1) + "," + std::to_string(v) + "," +
           std::to_string(static_cast<int>(oracle.answer(v))) + "," +
           std::to_string(total) + "\n";
  }
  write_file_atomic(dir / "mb_reveals.csv", csv);
  const DiscoveryResult found = engine.discover(reveals.nodes, r);
  std::string discovered;
  for (NodeId v : found.discovered) discovered += std::to_string(v) + "\n";
  write_file_atomic(dir / "discovered.txt", discovered);

  std::vector<MbCurveRow> rows;
  for (std::uint64_t s : config.seeds) {
    const Instance curve_inst = build_instance(config, s, benign);
    const auto part = experiment_mb_curve(
        curve_inst, config.mb_curve.algorithms, config.mb_curve.k_max, s,
        config.mb, config.record_timings, config.threads);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  write_file_atomic(dir / "mb_curve.csv", mb_curve_csv(rows));
  write_manifest(dir, "mb", config);
  spdlog::info("{} revealed {} nodes and discovered {} benigns",
               to_string(config.mb.algorithm), reveals.nodes.size(),
               found.discovered.size());
}

void cmd_pae(const PipelineConfig& config) {
  const std::uint64_t seed = master_seed(config);
  const fs::path dir = config.output_dir;
  const DirectedGraph benign = load_dataset(config.dataset);
  const Instance inst = build_instance(config, seed, benign);
  const std::size_t k =
      budget_or_default(config.pae.budget, benign.num_nodes());

  RevealOracle oracle(inst.outcome.resistance.resistant);
  const std::vector<NodeId> probed =
      pae_select_top_k(inst.outcome.graph, inst.known,
                       inst.outcome.resistance.probability, k, config.pae.mode);
  const PaeResult res = pae_reveal(inst.outcome.graph, inst.known, probed,
                                   oracle, &inst.outcome.truth);
  std::string csv = "from,to,attack\n";
  for (const Edge& e : res.pae_edges) {
    const bool attack = std::binary_search(res.true_attack_edges.begin(),
                                           res.true_attack_edges.end(), e);
    csv += std::to_string(e.from) + "," + std::to_string(e.to) + "," +
           (attack ? "1" : "0") + "\n";
  }
  write_file_atomic(dir / "pae_edges.csv", csv);

  std::vector<PaeCurveRow> rows;
  for (std::uint64_t s : config.seeds) {
    const Instance curve_inst = build_instance(config, s, benign);
    const auto part = experiment_pae_curve(curve_inst, config.pae_curve.k_max,
                                           s, config.pae.mode);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  write_file_atomic(dir / "pae_curve.csv", pae_curve_csv(rows));
  write_manifest(dir, "pae", config);
  spdlog::info("probed {} nodes: {} PAEs, {} true attack edges", probed.size(),
               res.pae_edges.size(), res.true_attack_edges.size());
}

void cmd_detect(const PipelineConfig& config) {
  const std::uint64_t seed = master_seed(config);
  const fs::path dir = config.output_dir;
  const DirectedGraph benign = load_dataset(config.dataset);
  const Instance inst = build_instance(config, seed, benign);
  AucReport report;
  for (DetectorKind kind : config.detector_kinds) {
    const ScoreVector scores =
        run_detector(kind, inst.outcome.graph, EdgeWeights{}, inst.split,
                     config.detectors, seed);
    std::string name = to_string(kind);
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    write_file_atomic(dir / ("scores_" + name + ".csv"),
                      scores_csv(scores, inst.split));
    AucRow row;
    row.dataset = config.dataset.name;
    row.strategy = config.strategies.front();
    row.step = Step::kInit;
    row.detector = kind;
    row.seed = seed;
    row.auc = auc(scores.scores, inst.split.truth);
    report.rows.push_back(row);
    spdlog::info("{} AUC {:.4f}", to_string(kind), row.auc);
  }
  write_file_atomic(dir / "auc.csv", auc_csv(report));
  write_manifest(dir, "detect", config);
}

void cmd_pipeline(const PipelineConfig& config) {
  for (std::uint64_t s : config.seeds) spdlog::info("master seed {}", s);
  const fs::path dir = config.output_dir;
  const DirectedGraph benign = load_dataset(config.dataset);
  const AucReport report = run_pipeline(config, benign);
  write_file_atomic(dir / "auc.csv", auc_csv(report));
  write_file_atomic(dir / "report.json", report_json(report).dump(2) + "\n");

  for (AttackStrategy strategy : config.strategies) {
    if (!config.mb_curve.enabled && !config.pae_curve.enabled) break;
    PipelineConfig one = config;
    one.strategies = {strategy};
    std::vector<MbCurveRow> mb_rows;
    std::vector<PaeCurveRow> pae_rows;
    for (std::uint64_t s : config.seeds) {
      const Instance inst = build_instance(one, s, benign);
      if (config.mb_curve.enabled) {
        const auto part = experiment_mb_curve(
            inst, config.mb_curve.algorithms, config.mb_curve.k_max, s,
            config.mb, config.record_timings, config.threads);
        mb_rows.insert(mb_rows.end(), part.begin(), part.end());
      }
      if (config.pae_curve.enabled) {
        const auto part =
            experiment_pae_curve(inst, config.pae_curve.k_max, s, config.pae.mode);
        pae_rows.insert(pae_rows.end(), part.begin(), part.end());
      }
    }
    const std::string suffix = std::string("_") + to_string(strategy) + ".csv";
    if (config.mb_curve.enabled) {
      write_file_atomic(dir / ("mb_curve" + suffix), mb_curve_csv(mb_rows));
    }
    if (config.pae_curve.enabled) {
      write_file_atomic(dir / ("pae_curve" + suffix), pae_curve_csv(pae_rows));
    }
  }
  write_manifest(dir, "pipeline", config);

  std::size_t failed = 0;
  for (const SeedSummary& s : report.seeds) failed += !s.error.empty();
  spdlog::info("wrote {} AUC rows to {}", report.rows.size(), dir.string());
  if (failed > 0) {
    throw Error(std::to_string(failed) + " seed run(s) aborted; see report.json");
  }
}

void cmd_stats(const PipelineConfig& config, const std::string& from) {
  const fs::path dir = config.output_dir;
  nlohmann::json stats;
  if (!from.empty()) {
    const fs::path src = from;
    const LoadedGraph loaded = load_edge_list(src / "graph.txt", true);
    // graph.txt uses dense ids; keep them rather than the re-densified order.
    std::size_t n = 0;
    for (std::int64_t id : loaded.raw_ids) {
      n = std::max<std::size_t>(n, static_cast<std::size_t>(id) + 1);
    }
    std::vector<Edge> edges;
    for (const Edge& e : loaded.graph.edges()) {
      edges.push_back({static_cast<NodeId>(loaded.raw_ids[e.from]),
                       static_cast<NodeId>(loaded.raw_ids[e.to])});
    }
    std::ifstream labels_in(src / "labels.txt");
    std::ifstream res_in(src / "resistance.txt");
    if (!labels_in || !res_in) {
      throw Error("stats --from needs labels.txt and resistance.txt in " +
                  src.string());
    }
    // Isolated nodes only appear in the label file.
    std::size_t label_lines = 0;
    for (std::string l; std::getline(labels_in, l);) label_lines += !l.empty();
    n = std::max(n, label_lines);
    labels_in.clear();
    labels_in.seekg(0);
    const DirectedGraph graph = DirectedGraph::FromEdges(n, edges);
    const LabelPartition truth =
        parse_labels(labels_in, n, (src / "labels.txt").string());
    const ResistanceModel res =
        parse_resistance(res_in, n, (src / "resistance.txt").string());
    stats = to_json(compute_stats(graph, truth, res));
  } else {
    const std::uint64_t seed = master_seed(config);
    const DirectedGraph benign = load_dataset(config.dataset);
    AttackConfig attack = config.attack;
    attack.strategy = config.strategies.front();
    attack.seed = seed;
    stats = to_json(stats_report(synthesize_attack(benign, attack)));
  }
  write_file_atomic(dir / "stats.json", stats.dump(2) + "\n");
  write_manifest(dir, "stats", config);
  std::cout << stats.dump(2) << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Sybil attack synthesis, resistance-based preprocessing and "
               "detector evaluation"};
  app.name(args.empty() ? "sybilbench" : fs::path(args[0]).filename().string());
  app.set_version_flag("--version", std::string(library_version()));
  app.require_subcommand(1);

  Options o;
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"synth", "Synthesize an attacked graph with labels and resistance"},
      {"mb", "Run benign discovery and its budget curve"},
      {"pae", "Probe for potential attack edges and their budget curve"},
      {"detect", "Run the detectors on the raw attacked graph"},
      {"pipeline", "Run Init, MB and MB+PAE arms and report AUC"},
      {"stats", "Instance statistics for a synthesized graph"},
  };
  for (const Sub& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    add_common(cmd, o);
    if (std::string_view(s.name) == "stats") {
      cmd->add_option("--from", o.from,
                      "Directory written by synth (graph, labels, resistance)");
    }
  }

  std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1),
                               args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, std::cout, std::cerr);
      return kExitOk;
    }
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  auto logger = spdlog::stderr_color_st("sybilbench");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(o.quiet ? spdlog::level::warn : spdlog::level::info);

  const std::string command = app.get_subcommands().front()->get_name();
  int code = kExitOk;
  try {
    const PipelineConfig config = resolve_config(o);
    if (command == "synth") {
      cmd_synth(config);
    } else if (command == "mb") {
      cmd_mb(config);
    } else if (command == "pae") {
      cmd_pae(config);
    } else if (command == "detect") {
      cmd_detect(config);
    } else if (command == "pipeline") {
      cmd_pipeline(config);
    } else {
      cmd_stats(config, o.from);
    }
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    code = kExitData;
  } catch (const fs::filesystem_error& e) {
    spdlog::error("{}", e.what());
    code = kExitData;
  } catch (const std::out_of_range& e) {
    spdlog::error("invalid input: {}", e.what());
    code = kExitData;
  }
  spdlog::drop("sybilbench");
  return code;
}

}  // namespace sybilbench
