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

#include <atomic>
#include <chrono>
#include <thread>

#include <spdlog/spdlog.h>

#include "sybilbench/discovery.hpp"
#include "sybilbench/errors.hpp"
#include "sybilbench/eval.hpp"

namespace sybilbench {
namespace {

struct Job {
  AttackStrategy strategy;
  std::uint64_t seed;
};

struct JobResult {
  std::vector<AucRow> rows;
  SeedSummary summary;
};

void run_detectors(const PipelineConfig& config, const DirectedGraph& graph,
                   const EdgeWeights& weights, const TrainTestSplit& split,
                   Step step, const Job& job, std::vector<AucRow>& rows) {
  for (DetectorKind kind : config.detector_kinds) {
    const auto start = std::chrono::steady_clock::now();
    const ScoreVector scores =
        run_detector(kind, graph, weights, split, config.detectors, job.seed);
    AucRow row;
    row.dataset = config.dataset.name;
    row.strategy = job.strategy;
    row.step = step;
    row.detector = kind;
    row.seed = job.seed;
    row.auc = auc(scores.scores, split.truth);
    if (config.record_timings) {
      row.runtime_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    }
    rows.push_back(row);
  }
}

JobResult run_job(const PipelineConfig& config,
                  const DirectedGraph& benign_graph, const Job& job) {
  JobResult out;
  SeedSummary& s = out.summary;
  s.strategy = job.strategy;
  s.seed = job.seed;
  try {
    AttackConfig attack = config.attack;
    attack.strategy = job.strategy;
    const Instance inst =
        make_instance(benign_graph, attack, config.train_fraction, job.seed);
    const DirectedGraph& g = inst.outcome.graph;
    const std::size_t n = g.num_nodes();
    s.nodes = n;
    s.edges = g.num_edges();
    s.attack_edges = inst.outcome.attack_edges.size();
    s.train_benign = inst.split.train_benign.size();
    s.train_sybil = inst.split.train_sybil.size();
    s.test_nodes_init = inst.split.test_nodes.size();
    s.mb_budget = config.mb.budget.value_or(
        default_budget(benign_graph.num_nodes()));
    s.pae_budget = config.pae.budget.value_or(
        default_budget(benign_graph.num_nodes()));

    const EdgeWeights unit;
    run_detectors(config, g, unit, inst.split, Step::kInit, job, out.rows);

    RevealOracle oracle(inst.outcome.resistance.resistant);
    const RevealSet reveals = run_mb_algorithm(
        config.mb.algorithm, inst, s.mb_budget, config.mb, oracle, job.seed);
    std::vector<std::uint8_t> revealed_resistant(n, 0);
    for (NodeId v : oracle.revealed()) revealed_resistant[v] = oracle.answer(v);
    const DiscoveryResult found =
        discover_benigns(g, inst.known, reveals.nodes, revealed_resistant);
    s.mb_reveals = reveals.nodes.size();
    s.discovered = found.discovered.size();
    const TrainTestSplit mb_split = augment_known_benigns(
        inst.split, found.discovered, &inst.outcome.truth);
    s.test_nodes_mb = mb_split.test_nodes.size();
    run_detectors(config, g, unit, mb_split, Step::kMb, job, out.rows);

    if (config.pae.enabled) {
      const LabelPartition known = LabelPartition::Create(
          n, mb_split.train_benign, mb_split.train_sybil);
      const std::vector<std::uint8_t> exclude =
          make_mask(n, oracle.revealed());
      const std::vector<NodeId> probed = pae_select_top_k(
          g, known, inst.outcome.resistance.probability, s.pae_budget,
          config.pae.mode, exclude);
      const PaeResult pae =
          pae_reveal(g, known, probed, oracle, &inst.outcome.truth);
      s.pae_probed = probed.size();
      s.pae_edges = pae.pae_edges.size();
      s.pae_true_attack_edges = pae.true_attack_edges.size();
      const EdgeWeights weights =
          apply_pae_downweight(g, pae.pae_edges, config.pae.downweight);
      run_detectors(config, g, weights, mb_split, Step::kMbPae, job,
                    out.rows);
    }
    spdlog::info("{} seed {}: discovered {} benigns, {} PAEs",
                 to_string(job.strategy), job.seed, s.discovered, s.pae_edges);
  } catch (const Error& e) {
    spdlog::error("{} seed {} aborted: {}", to_string(job.strategy), job.seed,
                  e.what());
    out.rows.clear();
    s.error = e.what();
  }
  return out;
}

}  // namespace

AucReport run_pipeline(const PipelineConfig& config,
                       const DirectedGraph& benign_graph) {
  config.validate();
  std::vector<Job> jobs;
  for (AttackStrategy strategy : config.strategies) {
    for (std::uint64_t seed : config.seeds) jobs.push_back({strategy, seed});
  }
  std::vector<JobResult> results(jobs.size());
  const unsigned workers = std::max(
      1u, std::min<unsigned>(config.threads, static_cast<unsigned>(jobs.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      results[i] = run_job(config, benign_graph, jobs[i]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
          results[i] = run_job(config, benign_graph, jobs[i]);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  AucReport report;
  for (JobResult& r : results) {
    report.rows.insert(report.rows.end(), r.rows.begin(), r.rows.end());
    report.seeds.push_back(std::move(r.summary));
  }
  return report;
}

AucReport run_pipeline(const PipelineConfig& config) {
  return run_pipeline(config, load_dataset(config.dataset));
}

}  // namespace sybilbench
