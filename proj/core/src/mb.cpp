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

#include "sybilbench/mb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include <spdlog/spdlog.h>

#include "sybilbench/errors.hpp"
#include "sybilbench/rng.hpp"

namespace sybilbench {
namespace {

std::vector<NodeId> distinct(std::span<const NodeId> nodes) {
  std::vector<NodeId> out(nodes.begin(), nodes.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t clamp_budget(std::size_t k, std::size_t available,
                         const char* who) {
  if (k > available) {
    spdlog::warn("{}: budget {} exceeds {} candidates; clamped", who, k,
                 available);
    return available;
  }
  return k;
}

}  // namespace

double exact_f(const DirectedGraph& graph, const LabelPartition& labels,
               std::span<const NodeId> reveal_set,
               std::span<const double> p_r) {
  const std::vector<NodeId> nodes = distinct(reveal_set);
  if (nodes.size() > kExactMaxRevealSize) {
    throw RefusedError("exact_f enumerates 2^|A| outcomes and refuses |A| = " +
                       std::to_string(nodes.size()) + " > " +
                       std::to_string(kExactMaxRevealSize));
  }
  DiscoveryEngine engine(graph, labels);
  std::vector<std::uint8_t> resistant(graph.num_nodes(), 0);
  const std::uint64_t outcomes = std::uint64_t{1} << nodes.size();
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < outcomes; ++mask) {
    double prob = 1.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const bool bit = (mask >> i) & 1U;
      resistant[nodes[i]] = bit;
      prob *= bit ? p_r[nodes[i]] : 1.0 - p_r[nodes[i]];
    }
    if (prob == 0.0) continue;
    total += prob * static_cast<double>(engine.count(nodes, resistant));
  }
  return total;
}

void EstimatorParams::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("alpha must lie in (0, 1)");
  }
  if (iterations && *iterations == 0) {
    throw ConfigError("iterations must be at least 1");
  }
  if (max_iterations == 0) throw ConfigError("max_iterations must be >= 1");
}

std::uint64_t hoeffding_iterations(std::size_t k, std::size_t max_in_degree,
                                   double epsilon, double alpha) {
  const double range = static_cast<double>(k) *
                       static_cast<double>(max_in_degree);
  const double bound =
      std::ceil(range * range * std::log(1.0 / (1.0 - alpha)) /
                (2.0 * epsilon * epsilon));
  if (!(bound >= 1.0)) return 1;
  if (bound >= 1.8e19) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(bound);
}

std::uint64_t resolve_iterations(const EstimatorParams& params, std::size_t k,
                                 std::size_t max_in_degree) {
  params.validate();
  if (params.iterations) return *params.iterations;
  const std::uint64_t bound =
      hoeffding_iterations(k, max_in_degree, params.epsilon, params.alpha);
  const std::uint64_t used = std::min(bound, params.max_iterations);
  spdlog::info("estimator trials: Hoeffding bound {} (k={}, max in-degree={}), "
               "cap {}, using {}",
               bound, k, max_in_degree, params.max_iterations, used);
  return used;
}

FEstimator::FEstimator(const DirectedGraph& graph, const LabelPartition& labels,
                       unsigned threads)
    : graph_(&graph), labels_(&labels), threads_(std::max(1U, threads)) {
  engines_.reserve(threads_);
  for (unsigned t = 0; t < threads_; ++t) {
    engines_.emplace_back(graph, labels);
    scratch_.emplace_back(graph.num_nodes(), 0);
  }
}

std::uint64_t FEstimator::run_trials(std::size_t worker,
                                     std::span<const NodeId> reveal_set,
                                     std::span<const double> p_r,
                                     std::uint64_t begin, std::uint64_t end,
                                     std::uint64_t seed) {
  DiscoveryEngine& engine = engines_[worker];
  std::vector<std::uint8_t>& resistant = scratch_[worker];
  std::uint64_t total = 0;
  for (std::uint64_t t = begin; t < end; ++t) {
    Rng rng(derive_seed(seed, t));
    for (NodeId v : reveal_set) resistant[v] = rng.bernoulli(p_r[v]);
    total += engine.count(reveal_set, resistant);
  }
  return total;
}

double FEstimator::estimate(std::span<const NodeId> reveal_set,
                            std::span<const double> p_r,
                            std::uint64_t iterations, std::uint64_t seed) {
  if (iterations == 0) throw ConfigError("iterations must be at least 1");
  const std::uint64_t workers =
      std::min<std::uint64_t>(threads_, (iterations + 1023) / 1024);
  std::uint64_t total = 0;
  if (workers <= 1) {
    total = run_trials(0, reveal_set, p_r, 0, iterations, seed);
  } else {
    std::vector<std::uint64_t> partial(workers, 0);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (iterations + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min(iterations, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        partial[w] = run_trials(w, reveal_set, p_r, begin, end, seed);
      });
    }
    for (auto& t : pool) t.join();
    for (std::uint64_t p : partial) total += p;
  }
  return static_cast<double>(total) / static_cast<double>(iterations);
}

double estimate_f(const DirectedGraph& graph, const LabelPartition& labels,
                  std::span<const NodeId> reveal_set,
                  std::span<const double> p_r, std::uint64_t iterations,
                  std::uint64_t seed, unsigned threads) {
  FEstimator estimator(graph, labels, threads);
  return estimator.estimate(reveal_set, p_r, iterations, seed);
}

RevealSet greedy_select(std::size_t k, const CandidateFn& candidates,
                        const SetScoreFn& score, const SelectFn& on_select) {
  RevealSet result;
  result.budget = k;
  std::vector<NodeId> working;
  for (std::size_t round = 0; round < k; ++round) {
    std::vector<NodeId> pool = candidates(result.nodes);
    std::sort(pool.begin(), pool.end());
    if (pool.empty()) break;
    NodeId best = kNoNode;
    double best_score = -std::numeric_limits<double>::infinity();
    working = result.nodes;
    working.push_back(kNoNode);
    for (NodeId w : pool) {
      working.back() = w;
      const double s = score(working, round);
      if (s > best_score) {
        best_score = s;
        best = w;
      }
    }
    result.nodes.push_back(best);
    if (on_select) on_select(best);
  }
  return result;
}

std::vector<NodeId> frontier_candidates(
    DiscoveryEngine& engine, std::span<const NodeId> resistant_set,
    std::span<const std::uint8_t> exclude) {
  const LabelPartition& labels = engine.labels();
  std::vector<std::uint8_t> all_resistant(labels.num_nodes(), 1);
  DiscoveryResult reachable = engine.discover(resistant_set, all_resistant);
  std::vector<NodeId> out;
  for (NodeId v = 0; v < labels.num_nodes(); ++v) {
    if (labels.is_benign(v) && !exclude[v]) out.push_back(v);
  }
  for (NodeId v : reachable.discovered) {
    if (!exclude[v]) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<NodeId> literal_candidates(std::size_t n,
                                       std::span<const std::uint8_t> exclude) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < n; ++v) {
    if (!exclude[v]) out.push_back(v);
  }
  return out;
}

}  // namespace

RevealSet mc_greedy(const DirectedGraph& graph, const LabelPartition& labels,
                    std::size_t k, std::span<const double> p_r,
                    const EstimatorParams& params, std::uint64_t seed,
                    const GreedyOptions& options) {
  const std::uint64_t iterations =
      resolve_iterations(params, k, graph.max_in_degree());
  FEstimator estimator(graph, labels, options.threads);
  DiscoveryEngine engine(graph, labels);
  std::vector<std::uint8_t> chosen(graph.num_nodes(), 0);

  auto candidates = [&](std::span<const NodeId> set) {
    if (options.literal_candidates) {
      return literal_candidates(graph.num_nodes(), chosen);
    }
    return frontier_candidates(engine, set, chosen);
  };
  auto score = [&](std::span<const NodeId> set, std::size_t round) {
    return estimator.estimate(set, p_r, iterations,
                              derive_seed(seed, round));
  };
  return greedy_select(k, candidates, score,
                       [&](NodeId v) { chosen[v] = 1; });
}

RevealSet mc_greedy_resistance_aware(const DirectedGraph& graph,
                                     const LabelPartition& labels,
                                     std::size_t k,
                                     std::span<const double> p_r,
                                     const EstimatorParams& params,
                                     RevealOracle& oracle, std::uint64_t seed,
                                     const GreedyOptions& options) {
  const std::uint64_t iterations =
      resolve_iterations(params, k, graph.max_in_degree());
  FEstimator estimator(graph, labels, options.threads);
  DiscoveryEngine engine(graph, labels);
  std::vector<std::uint8_t> excluded(graph.num_nodes(), 0);
  for (NodeId v : oracle.revealed()) excluded[v] = 1;
  std::vector<double> p_known(p_r.begin(), p_r.end());
  std::vector<NodeId> resistant_set;  // A'
  std::vector<NodeId> scored;

  auto candidates = [&](std::span<const NodeId>) {
    if (options.literal_candidates) {
      return literal_candidates(graph.num_nodes(), excluded);
    }
    return frontier_candidates(engine, resistant_set, excluded);
  };
  auto score = [&](std::span<const NodeId> set, std::size_t round) {
    // Only A' plus the candidate (the last element) is scored.
    scored = resistant_set;
    scored.push_back(set.back());
    return estimator.estimate(scored, p_known, iterations,
                              derive_seed(seed, round));
  };
  auto on_select = [&](NodeId v) {
    excluded[v] = 1;
    if (oracle.query(v)) {
      resistant_set.push_back(v);
      p_known[v] = 1.0;
    }
  };
  return greedy_select(k, candidates, score, on_select);
}

std::vector<NodeId> top_k_by_score(std::span<const NodeId> nodes,
                                   std::span<const double> scores,
                                   std::size_t k) {
  std::vector<NodeId> order(nodes.begin(), nodes.end());
  k = std::min(k, order.size());
  auto better = [&](NodeId a, NodeId b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(k),
                    order.end(), better);
  order.resize(k);
  return order;
}

RevealSet baseline_random(std::span<const NodeId> benign, std::size_t k,
                          std::uint64_t seed) {
  k = clamp_budget(k, benign.size(), "baseline_random");
  Rng rng(seed);
  RevealSet result;
  result.budget = k;
  result.nodes = sample_without_replacement(benign, k, rng);
  return result;
}

RevealSet baseline_highest_resistance(std::span<const NodeId> benign,
                                      std::span<const double> p_r,
                                      std::size_t k) {
  k = clamp_budget(k, benign.size(), "baseline_highest_resistance");
  RevealSet result;
  result.budget = k;
  result.nodes = top_k_by_score(benign, p_r, k);
  return result;
}

std::size_t unlabeled_in_degree(const DirectedGraph& graph,
                                const LabelPartition& labels, NodeId v) {
  std::size_t count = 0;
  for (NodeId u : graph.in_neighbors(v)) count += !labels.is_known(u);
  return count;
}

RevealSet baseline_resistance_degree(const DirectedGraph& graph,
                                     const LabelPartition& labels,
                                     std::span<const double> p_r,
                                     std::size_t k) {
  const std::vector<NodeId> benign = labels.benign();
  k = clamp_budget(k, benign.size(), "baseline_resistance_degree");
  std::vector<double> score(graph.num_nodes(), 0.0);
  for (NodeId v : benign) {
    score[v] = p_r[v] * static_cast<double>(unlabeled_in_degree(graph, labels, v));
  }
  RevealSet result;
  result.budget = k;
  result.nodes = top_k_by_score(benign, score, k);
  return result;
}

}  // namespace sybilbench
