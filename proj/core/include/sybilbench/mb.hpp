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

#ifndef SYBILBENCH_MB_HPP_
#define SYBILBENCH_MB_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sybilbench/discovery.hpp"
#include "sybilbench/graph.hpp"

namespace sybilbench {

// Exact enumeration refuses reveal sets larger than this.
inline constexpr std::size_t kExactMaxRevealSize = 20;

// f(A): expected number of discovered benigns when every v in A is revealed
// resistant independently with probability p_r(v). Enumerates all 2^|A|
// outcomes; throws RefusedError when |A| > kExactMaxRevealSize.
double exact_f(const DirectedGraph& graph, const LabelPartition& labels,
               std::span<const NodeId> reveal_set,
               std::span<const double> p_r);

struct EstimatorParams {
  double epsilon = 0.05;  // additive error margin
  double alpha = 0.95;    // confidence
  // Explicit trial count; when unset it is derived from the Hoeffding bound
  // and clipped to max_iterations.
  std::optional<std::uint64_t> iterations;
  std::uint64_t max_iterations = 100000;

  void validate() const;
};

// ceil(k^2 * max_in_degree^2 * ln(1 / (1 - alpha)) / (2 epsilon^2)), at least
// 1. Saturates at UINT64_MAX.
std::uint64_t hoeffding_iterations(std::size_t k, std::size_t max_in_degree,
                                   double epsilon, double alpha);

// Trial count actually used for budget k on `graph`; logs the bound and cap.
std::uint64_t resolve_iterations(const EstimatorParams& params, std::size_t k,
                                 std::size_t max_in_degree);

// Monte Carlo estimate of f(A). Trial t draws its resistances from a stream
// seeded by (seed, t), so any split of trials over threads yields the same
// integer total and therefore the same mean.
class FEstimator {
 public:
  FEstimator(const DirectedGraph& graph, const LabelPartition& labels,
             unsigned threads = 1);

  double estimate(std::span<const NodeId> reveal_set,
                  std::span<const double> p_r, std::uint64_t iterations,
                  std::uint64_t seed);

 private:
  std::uint64_t run_trials(std::size_t worker,
                           std::span<const NodeId> reveal_set,
                           std::span<const double> p_r, std::uint64_t begin,
                           std::uint64_t end, std::uint64_t seed);

  const DirectedGraph* graph_;
  const LabelPartition* labels_;
  unsigned threads_;
  std::vector<DiscoveryEngine> engines_;
  std::vector<std::vector<std::uint8_t>> scratch_;
};

double estimate_f(const DirectedGraph& graph, const LabelPartition& labels,
                  std::span<const NodeId> reveal_set,
                  std::span<const double> p_r, std::uint64_t iterations,
                  std::uint64_t seed, unsigned threads = 1);

// Candidates for the next probe given the nodes already chosen.
using CandidateFn =
    std::function<std::vector<NodeId>(std::span<const NodeId> chosen)>;
// Score of a candidate set chosen ∪ {w}; `round` is |chosen|.
using SetScoreFn =
    std::function<double(std::span<const NodeId> set, std::size_t round)>;
// Called with each selected node; may update state seen by the other hooks.
using SelectFn = std::function<void(NodeId)>;

// k rounds of argmax over candidates (ascending id, strict improvement, so
// ties go to the lowest id). Stops early when no candidate remains.
RevealSet greedy_select(std::size_t k, const CandidateFn& candidates,
                        const SetScoreFn& score,
                        const SelectFn& on_select = {});

struct GreedyOptions {
  // Score every node outside A instead of only B plus the optimistic
  // discovery frontier.
  bool literal_candidates = false;
  unsigned threads = 1;
};

// Nodes that could still certify new benigns: B plus every node discovered
// when all of `resistant_set` is resistant, minus `exclude`. Sybils never
// qualify. Sorted ascending.
std::vector<NodeId> frontier_candidates(DiscoveryEngine& engine,
                                        std::span<const NodeId> resistant_set,
                                        std::span<const std::uint8_t> exclude);

RevealSet mc_greedy(const DirectedGraph& graph, const LabelPartition& labels,
                    std::size_t k, std::span<const double> p_r,
                    const EstimatorParams& params, std::uint64_t seed,
                    const GreedyOptions& options = {});

// Queries each pick on the oracle. Revealed-resistant picks form A', are
// scored with r = 1 in later estimates, and extend the candidate frontier.
RevealSet mc_greedy_resistance_aware(const DirectedGraph& graph,
                                     const LabelPartition& labels,
                                     std::size_t k,
                                     std::span<const double> p_r,
                                     const EstimatorParams& params,
                                     RevealOracle& oracle, std::uint64_t seed,
                                     const GreedyOptions& options = {});

// Top k of `nodes` by descending score, ties to the lowest id. `scores` is
// indexed by node id.
std::vector<NodeId> top_k_by_score(std::span<const NodeId> nodes,
                                   std::span<const double> scores,
                                   std::size_t k);

// k > |B| is clamped with a warning.
RevealSet baseline_random(std::span<const NodeId> benign, std::size_t k,
                          std::uint64_t seed);
RevealSet baseline_highest_resistance(std::span<const NodeId> benign,
                                      std::span<const double> p_r,
                                      std::size_t k);
// Score p_r(v) * |in-neighbors of v outside B ∪ S| over v in B.
RevealSet baseline_resistance_degree(const DirectedGraph& graph,
                                     const LabelPartition& labels,
                                     std::span<const double> p_r,
                                     std::size_t k);

// |in-neighbors of v outside B ∪ S|.
std::size_t unlabeled_in_degree(const DirectedGraph& graph,
                                const LabelPartition& labels, NodeId v);

}  // namespace sybilbench

#endif  // SYBILBENCH_MB_HPP_
