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

#ifndef SYBILBENCH_DETECTORS_HPP_
#define SYBILBENCH_DETECTORS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sybilbench/graph.hpp"

namespace sybilbench {

struct TrainTestSplit {
  std::vector<NodeId> train_benign;  // sorted
  std::vector<NodeId> train_sybil;   // sorted
  std::vector<NodeId> test_nodes;    // sorted
  std::vector<std::uint8_t> truth;   // aligned with test_nodes, 1 = sybil

  std::size_t test_sybils() const;
  std::size_t test_benigns() const { return test_nodes.size() - test_sybils(); }
};

// `fraction` of the true benigns (rounded down, at least one) and as many
// sybils form the training set. The remaining sybils and an equal number of
// untrained benigns, drawn uniformly, form the test set.
TrainTestSplit make_split(const LabelPartition& truth, double fraction,
                          std::uint64_t seed);

// Throws ConfigError when train and test overlap, sets are unsorted or out of
// range, or truth is misaligned.
void validate_split(const TrainTestSplit& split, std::size_t num_nodes);

// Moves `discovered` into train_benign and out of the test set. The test set
// is not rebalanced. Throws ConfigError if a discovered node is a train sybil
// or, when `truth` is given, a true sybil.
TrainTestSplit augment_known_benigns(const TrainTestSplit& split,
                                     std::span<const NodeId> discovered,
                                     const LabelPartition* truth = nullptr);

// Scores aligned with TrainTestSplit::test_nodes; higher is more sybil-like.
struct ScoreVector {
  std::vector<NodeId> nodes;
  std::vector<double> scores;
};

// Undirected view used by the propagation detectors. A pair linked in either
// direction becomes one edge whose weight is the larger of the two.
struct SymmetricGraph {
  std::vector<std::size_t> offsets;
  std::vector<NodeId> neighbors;
  std::vector<double> weights;

  std::size_t num_nodes() const { return offsets.size() - 1; }
  std::size_t degree(NodeId v) const { return offsets[v + 1] - offsets[v]; }
};

SymmetricGraph symmetrize(const DirectedGraph& graph,
                          const EdgeWeights& weights);

struct SybilScarConfig {
  double theta = 0.6;
  std::size_t max_iter = 30;
  double prior = 0.4;
  double tol = 1e-4;
};

struct SybilWalkConfig {
  std::size_t max_iter = 1000;
  double tol = 1e-6;
};

enum class Feature {
  kInDegree,
  kOutDegree,
  kClustering,
  kEigenvector,
  kBetweenness,
  kAspl,
};

const char* to_string(Feature feature);
Feature parse_feature(std::string_view name);
std::vector<Feature> all_features();

struct SybilMetricConfig {
  double learning_rate = 0.1;
  std::size_t epochs = 500;
  double l2 = 1e-4;
  std::vector<Feature> features = all_features();
  std::size_t centrality_samples = 64;
};

struct DetectorConfig {
  SybilScarConfig sybilscar;
  SybilWalkConfig sybilwalk;
  SybilMetricConfig sybilmetric;

  void validate() const;
};

ScoreVector sybilscar(const DirectedGraph& graph, const EdgeWeights& weights,
                      const TrainTestSplit& split,
                      const SybilScarConfig& config = {});

// Returns the number of sweeps performed through `iterations` when non-null.
ScoreVector sybilwalk(const DirectedGraph& graph, const EdgeWeights& weights,
                      const TrainTestSplit& split,
                      const SybilWalkConfig& config = {},
                      std::size_t* iterations = nullptr);

// Row-major node-by-feature matrix.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::vector<std::string> names;
  std::vector<double> data;

  std::size_t cols() const { return names.size(); }
  double& at(std::size_t r, std::size_t c) { return data[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const {
    return data[r * cols() + c];
  }
};

std::vector<double> clustering_coefficients(const SymmetricGraph& graph);
std::vector<double> eigenvector_centrality(const SymmetricGraph& graph,
                                           std::size_t steps = 100);

struct PathStats {
  std::vector<double> betweenness;
  std::vector<double> aspl;
};

// Brandes accumulation from the given BFS sources over unweighted undirected
// paths, scaled by n / |sources| and halved for undirected pairs. `aspl[v]`
// averages d(s, v) over sources s ≠ v that reach v, 0 if none.
PathStats sampled_path_stats(const SymmetricGraph& graph,
                             std::span<const NodeId> sources);

// Reference betweenness from all-pairs path counts. O(n^3); tests only.
std::vector<double> exact_betweenness(const SymmetricGraph& graph);

// Raw (unstandardized) features. Weighted degrees use `weights`.
FeatureMatrix node_metrics(const DirectedGraph& graph,
                           const EdgeWeights& weights,
                           const SybilMetricConfig& config,
                           std::uint64_t seed);

// Z-scores every column with the mean and standard deviation of `rows`.
// Columns with zero deviation become 0.
void standardize(FeatureMatrix& features, std::span<const NodeId> rows);

struct LogisticModel {
  std::vector<double> weights;
  double bias = 0.0;
};

// Mean log-loss plus (l2 / 2)·|w|² over the selected rows; writes the
// gradient into grad_w (resized) and grad_b.
double logistic_loss(const FeatureMatrix& x, std::span<const NodeId> rows,
                     std::span<const std::uint8_t> y,
                     const LogisticModel& model, double l2,
                     std::vector<double>& grad_w, double& grad_b);

LogisticModel train_logistic(const FeatureMatrix& x,
                             std::span<const NodeId> rows,
                             std::span<const std::uint8_t> y,
                             const SybilMetricConfig& config);

double predict_logistic(const LogisticModel& model, const FeatureMatrix& x,
                        NodeId row);

// Standardizes on the train rows, fits, and scores the test nodes. Throws
// ConfigError naming the node and feature if any used value is not finite.
ScoreVector sybilmetric_train_predict(FeatureMatrix features,
                                      const TrainTestSplit& split,
                                      const SybilMetricConfig& config);

// Copy of `base` with each listed edge and its reverse (when present) set to
// `factor`. Edges absent from the graph are skipped with a warning.
EdgeWeights apply_pae_downweight(const DirectedGraph& graph,
                                 std::span<const Edge> pae_edges,
                                 double factor, EdgeWeights base = {});

enum class DetectorKind { kSybilScar, kSybilWalk, kSybilMetric };

const char* to_string(DetectorKind kind);
DetectorKind parse_detector(std::string_view name);
std::vector<DetectorKind> all_detectors();

ScoreVector run_detector(DetectorKind kind, const DirectedGraph& graph,
                         const EdgeWeights& weights,
                         const TrainTestSplit& split,
                         const DetectorConfig& config, std::uint64_t seed);

}  // namespace sybilbench

#endif  // SYBILBENCH_DETECTORS_HPP_
