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

#include "sybilbench/detectors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iterator>
#include <string>

#include <spdlog/spdlog.h>

#include "sybilbench/errors.hpp"
#include "sybilbench/rng.hpp"

namespace sybilbench {

std::size_t TrainTestSplit::test_sybils() const {
  return static_cast<std::size_t>(std::count(truth.begin(), truth.end(), 1));
}

TrainTestSplit make_split(const LabelPartition& truth, double fraction,
                          std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw ConfigError("train fraction must lie in (0, 1), got " +
                      std::to_string(fraction));
  }
  const std::vector<NodeId> benign = truth.benign();
  const std::vector<NodeId> sybil = truth.sybil();
  const std::size_t n_train = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::floor(fraction * static_cast<double>(benign.size()) + 1e-9)));
  if (benign.size() < n_train) {
    throw ConfigError("not enough benigns for a training set of " +
                      std::to_string(n_train));
  }
  if (sybil.size() <= n_train) {
    throw ConfigError("need more than " + std::to_string(n_train) +
                      " sybils to leave a test set, have " +
                      std::to_string(sybil.size()));
  }

  Rng rng(seed);
  TrainTestSplit split;
  split.train_benign =
      sample_without_replacement(std::span<const NodeId>(benign), n_train, rng);
  std::vector<NodeId> sybil_order = sample_without_replacement(
      std::span<const NodeId>(sybil), sybil.size(), rng);
  split.train_sybil.assign(sybil_order.begin(), sybil_order.begin() + n_train);
  std::vector<NodeId> test_sybil(sybil_order.begin() + n_train,
                                 sybil_order.end());

  std::sort(split.train_benign.begin(), split.train_benign.end());
  std::vector<NodeId> untrained;
  std::set_difference(benign.begin(), benign.end(), split.train_benign.begin(),
                      split.train_benign.end(), std::back_inserter(untrained));
  if (untrained.size() < test_sybil.size()) {
    throw ConfigError("not enough untrained benigns to balance " +
                      std::to_string(test_sybil.size()) + " test sybils");
  }
  std::vector<NodeId> test_benign = sample_without_replacement(
      std::span<const NodeId>(untrained), test_sybil.size(), rng);

  std::sort(split.train_sybil.begin(), split.train_sybil.end());
  split.test_nodes = test_sybil;
  split.test_nodes.insert(split.test_nodes.end(), test_benign.begin(),
                          test_benign.end());
  std::sort(split.test_nodes.begin(), split.test_nodes.end());
  split.truth.reserve(split.test_nodes.size());
  for (NodeId v : split.test_nodes) split.truth.push_back(truth.is_sybil(v));
  return split;
}

void validate_split(const TrainTestSplit& split, std::size_t num_nodes) {
  auto check_sorted = [&](const std::vector<NodeId>& nodes, const char* name) {
    if (!std::is_sorted(nodes.begin(), nodes.end()) ||
        std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) {
      throw ConfigError(std::string(name) + " is not sorted and unique");
    }
    if (!nodes.empty() && nodes.back() >= num_nodes) {
      throw ConfigError(std::string(name) + " references node " +
                        std::to_string(nodes.back()) + " out of range");
    }
  };
  check_sorted(split.train_benign, "train_benign");
  check_sorted(split.train_sybil, "train_sybil");
  check_sorted(split.test_nodes, "test_nodes");
  if (split.truth.size() != split.test_nodes.size()) {
    throw ConfigError("test truth is not aligned with test nodes");
  }
  std::vector<std::uint8_t> role(num_nodes, 0);
  auto mark = [&](const std::vector<NodeId>& nodes, std::uint8_t bit) {
    for (NodeId v : nodes) {
      if (role[v] != 0) {
        throw ConfigError("node " + std::to_string(v) +
                          " appears in more than one split set");
      }
      role[v] = bit;
    }
  };
  mark(split.train_benign, 1);
  mark(split.train_sybil, 2);
  mark(split.test_nodes, 3);
}

TrainTestSplit augment_known_benigns(const TrainTestSplit& split,
                                     std::span<const NodeId> discovered,
                                     const LabelPartition* truth) {
  std::vector<NodeId> add(discovered.begin(), discovered.end());
  std::sort(add.begin(), add.end());
  add.erase(std::unique(add.begin(), add.end()), add.end());

  for (NodeId v : add) {
    if (std::binary_search(split.train_sybil.begin(), split.train_sybil.end(),
                           v)) {
      throw ConfigError("discovered node " + std::to_string(v) +
                        " is a training sybil");
    }
    if (truth != nullptr && truth->is_sybil(v)) {
      throw ConfigError("discovered node " + std::to_string(v) +
                        " is a true sybil; the oracle is inconsistent");
    }
    const auto it = std::lower_bound(split.test_nodes.begin(),
                                     split.test_nodes.end(), v);
    if (it != split.test_nodes.end() && *it == v &&
        split.truth[static_cast<std::size_t>(it - split.test_nodes.begin())]) {
      throw ConfigError("discovered node " + std::to_string(v) +
                        " is a sybil in the test truth");
    }
  }

  TrainTestSplit out;
  out.train_sybil = split.train_sybil;
  std::set_union(split.train_benign.begin(), split.train_benign.end(),
                 add.begin(), add.end(), std::back_inserter(out.train_benign));
  for (std::size_t i = 0; i < split.test_nodes.size(); ++i) {
    const NodeId v = split.test_nodes[i];
    if (std::binary_search(add.begin(), add.end(), v)) continue;
    out.test_nodes.push_back(v);
    out.truth.push_back(split.truth[i]);
  }
  return out;
}

SymmetricGraph symmetrize(const DirectedGraph& graph,
                          const EdgeWeights& weights) {
  const std::size_t n = graph.num_nodes();
  SymmetricGraph out;
  out.offsets.assign(n + 1, 0);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId u : graph.undirected_neighbors(v)) {
      double w = 0.0;
      if (graph.has_edge(u, v)) w = weights.get(u, v);
      if (graph.has_edge(v, u)) w = std::max(w, weights.get(v, u));
      out.neighbors.push_back(u);
      out.weights.push_back(w);
    }
    out.offsets[v + 1] = out.neighbors.size();
  }
  return out;
}

namespace {

std::vector<std::int8_t> train_signs(const TrainTestSplit& split,
                                     std::size_t n) {
  std::vector<std::int8_t> sign(n, 0);
  for (NodeId v : split.train_benign) sign[v] = -1;
  for (NodeId v : split.train_sybil) sign[v] = 1;
  return sign;
}

ScoreVector gather(const TrainTestSplit& split, const std::vector<double>& x,
                   double offset) {
  ScoreVector out;
  out.nodes = split.test_nodes;
  out.scores.reserve(split.test_nodes.size());
  for (NodeId v : split.test_nodes) out.scores.push_back(x[v] + offset);
  return out;
}

}  // namespace

ScoreVector sybilscar(const DirectedGraph& graph, const EdgeWeights& weights,
                      const TrainTestSplit& split,
                      const SybilScarConfig& config) {
  const SymmetricGraph sym = symmetrize(graph, weights);
  const std::size_t n = sym.num_nodes();
  const std::vector<std::int8_t> sign = train_signs(split, n);
  std::vector<double> prior(n);
  for (std::size_t v = 0; v < n; ++v) prior[v] = config.prior * sign[v];

  // Per-source factor (θ − 0.5) / d(u); the edge weight is applied per pair.
  std::vector<double> scale(n, 0.0);
  for (NodeId u = 0; u < n; ++u) {
    if (sym.degree(u) > 0) {
      scale[u] = (config.theta - 0.5) / static_cast<double>(sym.degree(u));
    }
  }

  std::vector<double> p = prior, next(n);
  for (std::size_t it = 0; it < config.max_iter; ++it) {
    double change = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      double acc = prior[v];
      for (std::size_t e = sym.offsets[v]; e < sym.offsets[v + 1]; ++e) {
        const NodeId u = sym.neighbors[e];
        acc += 2.0 * p[u] * sym.weights[e] * scale[u];
      }
      acc = std::clamp(acc, -0.5, 0.5);
      change = std::max(change, std::abs(acc - p[v]));
      next[v] = acc;
    }
    p.swap(next);
    if (change < config.tol) break;
  }
  return gather(split, p, 0.5);
}

ScoreVector sybilwalk(const DirectedGraph& graph, const EdgeWeights& weights,
                      const TrainTestSplit& split,
                      const SybilWalkConfig& config, std::size_t* iterations) {
  const SymmetricGraph sym = symmetrize(graph, weights);
  const std::size_t n = sym.num_nodes();
  const std::vector<std::int8_t> sign = train_signs(split, n);

  // Total weight at v, including the unit edge to its label node.
  std::vector<double> total(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    double w = sign[v] != 0 ? 1.0 : 0.0;
    for (std::size_t e = sym.offsets[v]; e < sym.offsets[v + 1]; ++e) {
      w += sym.weights[e];
    }
    total[v] = w;
  }

  std::vector<double> x(n, 0.5), next(n, 0.5);
  std::size_t sweeps = 0;
  while (sweeps < config.max_iter) {
    ++sweeps;
    double change = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      if (total[v] <= 0.0) {
        next[v] = 0.5;
        continue;
      }
      double acc = sign[v] > 0 ? 1.0 : 0.0;  // x(l_s) = 1, x(l_b) = 0
      for (std::size_t e = sym.offsets[v]; e < sym.offsets[v + 1]; ++e) {
        acc += sym.weights[e] * x[sym.neighbors[e]];
      }
      next[v] = acc / total[v];
      change = std::max(change, std::abs(next[v] - x[v]));
    }
    x.swap(next);
    if (change < config.tol) break;
  }
  if (iterations != nullptr) *iterations = sweeps;
  return gather(split, x, 0.0);
}

EdgeWeights apply_pae_downweight(const DirectedGraph& graph,
                                 std::span<const Edge> pae_edges,
                                 double factor, EdgeWeights base) {
  if (!(factor >= 0.0 && factor < 1.0)) {
    throw ConfigError("down-weight factor must lie in [0, 1), got " +
                      std::to_string(factor));
  }
  for (const Edge& e : pae_edges) {
    if (e.from >= graph.num_nodes() || e.to >= graph.num_nodes() ||
        !graph.has_edge(e.from, e.to)) {
      spdlog::warn("skipping down-weight of missing edge {} -> {}", e.from,
                   e.to);
      continue;
    }
    base.set(e.from, e.to, factor);
    if (graph.has_edge(e.to, e.from)) base.set(e.to, e.from, factor);
  }
  return base;
}

void DetectorConfig::validate() const {
  if (!(sybilscar.theta > 0.5 && sybilscar.theta <= 1.0)) {
    throw ConfigError("sybilscar.theta must lie in (0.5, 1]");
  }
  if (!(sybilscar.prior > 0.0 && sybilscar.prior <= 0.5)) {
    throw ConfigError("sybilscar.prior must lie in (0, 0.5]");
  }
  if (sybilscar.max_iter == 0 || sybilwalk.max_iter == 0) {
    throw ConfigError("detector iteration counts must be positive");
  }
  if (!(sybilscar.tol > 0.0) || !(sybilwalk.tol > 0.0)) {
    throw ConfigError("detector tolerances must be positive");
  }
  if (!(sybilmetric.learning_rate > 0.0) || sybilmetric.epochs == 0) {
    throw ConfigError("sybilmetric needs a positive rate and epoch count");
  }
  if (!(sybilmetric.l2 >= 0.0)) {
    throw ConfigError("sybilmetric.l2 must be non-negative");
  }
  if (sybilmetric.features.empty()) {
    throw ConfigError("sybilmetric.features must not be empty");
  }
  if (sybilmetric.centrality_samples == 0) {
    throw ConfigError("sybilmetric.centrality_samples must be positive");
  }
}

const char* to_string(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::kSybilScar:
      return "SybilSCAR";
    case DetectorKind::kSybilWalk:
      return "SybilWalk";
    case DetectorKind::kSybilMetric:
      return "SybilMetric";
  }
  return "?";
}

DetectorKind parse_detector(std::string_view name) {
  for (DetectorKind kind : all_detectors()) {
    std::string lower = to_string(kind);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    std::string given(name);
    std::transform(given.begin(), given.end(), given.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (lower == given) return kind;
  }
  throw ConfigError("unknown detector '" + std::string(name) + "'");
}

std::vector<DetectorKind> all_detectors() {
  return {DetectorKind::kSybilScar, DetectorKind::kSybilWalk,
          DetectorKind::kSybilMetric};
}

ScoreVector run_detector(DetectorKind kind, const DirectedGraph& graph,
                         const EdgeWeights& weights,
                         const TrainTestSplit& split,
                         const DetectorConfig& config, std::uint64_t seed) {
  switch (kind) {
    case DetectorKind::kSybilScar:
      return sybilscar(graph, weights, split, config.sybilscar);
    case DetectorKind::kSybilWalk:
      return sybilwalk(graph, weights, split, config.sybilwalk);
    case DetectorKind::kSybilMetric:
      return sybilmetric_train_predict(
          node_metrics(graph, weights, config.sybilmetric, seed), split,
          config.sybilmetric);
  }
  throw ConfigError("unknown detector");
}

}  // namespace sybilbench
