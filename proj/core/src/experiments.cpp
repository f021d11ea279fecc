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

#include <algorithm>
#include <chrono>

#include "sybilbench/discovery.hpp"
#include "sybilbench/eval.hpp"
#include "sybilbench/rng.hpp"

namespace sybilbench {

std::vector<MbCurveRow> experiment_mb_curve(
    const Instance& instance, std::span<const MbAlgorithm> algorithms,
    std::size_t k_max, std::uint64_t seed, const MbConfig& config,
    bool record_timings, unsigned threads) {
  const DirectedGraph& g = instance.outcome.graph;
  const std::vector<std::uint8_t>& r = instance.outcome.resistance.resistant;
  DiscoveryEngine engine(g, instance.known);
  std::vector<MbCurveRow> rows;
  for (MbAlgorithm algorithm : algorithms) {
    RevealOracle oracle(r);
    const auto start = std::chrono::steady_clock::now();
    const RevealSet reveals =
        run_mb_algorithm(algorithm, instance, k_max, config, oracle, seed,
                         threads);
    const double elapsed =
        record_timings
            ? std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count()
            : 0.0;
    for (std::size_t k = 1; k <= k_max; ++k) {
      const std::size_t used = std::min(k, reveals.nodes.size());
      const std::span<const NodeId> prefix(reveals.nodes.data(), used);
      rows.push_back({algorithm, k, engine.count(prefix, r), elapsed, seed});
    }
  }
  return rows;
}

std::vector<PaeCurveRow> experiment_pae_curve(const Instance& instance,
                                              std::size_t k_max,
                                              std::uint64_t seed,
                                              PaeMode mode) {
  const DirectedGraph& g = instance.outcome.graph;
  const LabelPartition& known = instance.known;
  const std::vector<std::uint8_t>& r = instance.outcome.resistance.resistant;
  const std::vector<NodeId> benign = known.benign();
  k_max = std::min(k_max, benign.size());

  const std::vector<std::pair<PaeAlgorithm, std::vector<NodeId>>> orders = {
      {PaeAlgorithm::kProposed,
       pae_select_top_k(g, known, instance.outcome.resistance.probability,
                        k_max, mode)},
      {PaeAlgorithm::kRandom,
       pae_baseline_random(benign, k_max, derive_seed(seed, Stream::kBaseline))},
      {PaeAlgorithm::kFullKnowledge,
       pae_full_knowledge(g, known, instance.outcome.truth, r, k_max).nodes},
  };

  std::vector<PaeCurveRow> rows;
  for (const auto& [algorithm, order] : orders) {
    for (std::size_t k = 1; k <= k_max; ++k) {
      RevealOracle oracle(r);
      const std::span<const NodeId> prefix(order.data(),
                                           std::min(k, order.size()));
      const PaeResult res =
          pae_reveal(g, known, prefix, oracle, &instance.outcome.truth);
      PaeCurveRow row;
      row.budget = k;
      row.pae_count = res.pae_edges.size();
      row.attack_edge_count = res.true_attack_edges.size();
      row.attack_ratio_percent =
          row.pae_count == 0 ? 0.0
                             : 100.0 * static_cast<double>(row.attack_edge_count) /
                                   static_cast<double>(row.pae_count);
      row.algorithm = algorithm;
      row.seed = seed;
      rows.push_back(row);
    }
  }
  return rows;
}

InstanceStats compute_stats(const DirectedGraph& graph,
                            const LabelPartition& truth,
                            const ResistanceModel& resistance) {
  InstanceStats s;
  const std::size_t n = graph.num_nodes();
  s.nodes = n;
  s.edges = graph.num_edges();
  std::size_t n_sybil = 0, n_benign = 0;
  double in_s = 0, out_s = 0, in_b = 0, out_b = 0;
  for (NodeId v = 0; v < n; ++v) {
    const bool sybil = truth.is_sybil(v);
    for (NodeId w : graph.out_neighbors(v)) {
      const bool to_sybil = truth.is_sybil(w);
      if (sybil && to_sybil) {
        ++s.sybil_sybil;
      } else if (sybil) {
        ++s.attacks;
      } else if (to_sybil) {
        ++s.reverse_attacks;
      } else {
        ++s.benign_benign;
      }
    }
    if (sybil) {
      ++n_sybil;
      in_s += static_cast<double>(graph.in_degree(v));
      out_s += static_cast<double>(graph.out_degree(v));
    } else {
      ++n_benign;
      in_b += static_cast<double>(graph.in_degree(v));
      out_b += static_cast<double>(graph.out_degree(v));
    }
  }
  auto mean = [](double total, std::size_t count) {
    return count == 0 ? 0.0 : total / static_cast<double>(count);
  };
  s.avg_in_sybil = mean(in_s, n_sybil);
  s.avg_out_sybil = mean(out_s, n_sybil);
  s.avg_in_benign = mean(in_b, n_benign);
  s.avg_out_benign = mean(out_b, n_benign);
  double r_total = 0.0, p_total = 0.0;
  for (std::size_t v = 0; v < resistance.resistant.size(); ++v) {
    r_total += resistance.resistant[v];
  }
  for (double p : resistance.probability) p_total += p;
  s.avg_r = mean(r_total, resistance.resistant.size());
  s.avg_p_r = mean(p_total, resistance.probability.size());
  return s;
}

InstanceStats stats_report(const AttackOutcome& outcome) {
  return compute_stats(outcome.graph, outcome.truth, outcome.resistance);
}

nlohmann::json to_json(const InstanceStats& s) {
  return {
      {"nodes", s.nodes},
      {"edges", s.edges},
      {"attacks", s.attacks},
      {"reverse_attacks", s.reverse_attacks},
      {"sybil_to_sybil", s.sybil_sybil},
      {"benign_to_benign", s.benign_benign},
      {"avg_in_degree_sybils", s.avg_in_sybil},
      {"avg_out_degree_sybils", s.avg_out_sybil},
      {"avg_in_degree_benigns", s.avg_in_benign},
      {"avg_out_degree_benigns", s.avg_out_benign},
      {"avg_r", s.avg_r},
      {"avg_p_r", s.avg_p_r},
  };
}

}  // namespace sybilbench
