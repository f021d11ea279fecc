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

#ifndef SYBILBENCH_PAE_HPP_
#define SYBILBENCH_PAE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sybilbench/discovery.hpp"
#include "sybilbench/graph.hpp"

namespace sybilbench {

// Which in-neighbors count toward a candidate's value. kUnion excludes
// in-neighbors in B ∪ S. kLiteral excludes B ∩ S, which is empty for any
// valid partition, so every in-neighbor counts.
enum class PaeMode { kUnion, kLiteral };

const char* to_string(PaeMode mode);
PaeMode parse_pae_mode(std::string_view name);

struct PaeCandidate {
  NodeId node = 0;
  double value = 0.0;  // (1 − p_r(v)) · |counted in-neighbors|
};

struct PaeResult {
  std::vector<NodeId> probed;
  std::vector<Edge> pae_edges;          // sorted
  std::vector<Edge> true_attack_edges;  // sorted, subset of pae_edges
};

// Number of in-neighbors of v that count under `mode`.
std::size_t pae_exposure(const DirectedGraph& graph,
                         const LabelPartition& labels, NodeId v, PaeMode mode);

double pae_value(const DirectedGraph& graph, const LabelPartition& labels,
                 std::span<const double> p_r, NodeId v,
                 PaeMode mode = PaeMode::kUnion);

// Candidates for every benign node not masked by `exclude` (may be empty).
std::vector<PaeCandidate> pae_candidates(const DirectedGraph& graph,
                                         const LabelPartition& labels,
                                         std::span<const double> p_r,
                                         PaeMode mode,
                                         std::span<const std::uint8_t> exclude);

// The k benign nodes of largest value, ordered by value descending then id.
// k above the candidate count is clamped with a warning.
std::vector<NodeId> pae_select_top_k(const DirectedGraph& graph,
                                     const LabelPartition& labels,
                                     std::span<const double> p_r,
                                     std::size_t k,
                                     PaeMode mode = PaeMode::kUnion,
                                     std::span<const std::uint8_t> exclude = {});

// Probes each node on the oracle. Every in-edge (u, v) of a non-resistant
// probed v with u ∉ B ∪ S becomes a PAE. `truth`, when given, marks which
// PAEs originate at true sybils. Throws ConfigError if a probed node is not
// in B.
PaeResult pae_reveal(const DirectedGraph& graph, const LabelPartition& labels,
                     std::span<const NodeId> probed, RevealOracle& oracle,
                     const LabelPartition* truth = nullptr);

std::vector<NodeId> pae_baseline_random(std::span<const NodeId> benign,
                                        std::size_t k, std::uint64_t seed);

struct FullKnowledgeSelection {
  std::vector<NodeId> nodes;
  // Cumulative (Σ attack edges) / (Σ PAEs) after each pick; 0 when no PAE.
  std::vector<double> ratio_trace;
};

// Greedy over non-resistant benign nodes maximizing the cumulative attack-edge
// ratio; ties prefer more attack edges, then the lower id. Resistant nodes
// follow in id order.
FullKnowledgeSelection pae_full_knowledge(const DirectedGraph& graph,
                                          const LabelPartition& labels,
                                          const LabelPartition& truth,
                                          std::span<const std::uint8_t> resistant,
                                          std::size_t k);

double pae_expected_value(const DirectedGraph& graph,
                          const LabelPartition& labels,
                          std::span<const double> p_r,
                          std::span<const NodeId> reveal_set,
                          PaeMode mode = PaeMode::kUnion);

}  // namespace sybilbench

#endif  // SYBILBENCH_PAE_HPP_
