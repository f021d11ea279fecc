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

#ifndef SYBILBENCH_ATTACK_HPP_
#define SYBILBENCH_ATTACK_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sybilbench/graph.hpp"

namespace sybilbench {

enum class AttackStrategy { kRandom, kPreferential, kBfs };

const char* to_string(AttackStrategy strategy);
// Accepts "random", "preat" / "preferential", "bfs". Throws ConfigError.
AttackStrategy parse_strategy(std::string_view name);

struct AttackConfig {
  AttackStrategy strategy = AttackStrategy::kRandom;
  double c = 4.0;                        // request multiplier
  double sybil_fraction = 0.10;          // of the final network
  double reverse_prob = 0.5;             // chance an accepted edge is mirrored
  double nonresistant_fraction = 0.25;   // share of nodes with r = 0
  std::uint64_t seed = 1;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Bijection between sybils and the benign nodes they copy.
class DualMap {
 public:
  DualMap() = default;
  explicit DualMap(std::size_t num_nodes) : dual_(num_nodes, kNoNode) {}

  void link(NodeId sybil, NodeId benign);
  NodeId dual(NodeId v) const { return v < dual_.size() ? dual_[v] : kNoNode; }
  std::size_t num_pairs() const { return pairs_; }
  std::size_t num_nodes() const { return dual_.size(); }

  // dual(dual(x)) == x for every linked x.
  bool is_involution() const;

 private:
  std::vector<NodeId> dual_;
  std::size_t pairs_ = 0;
};

// Size of B' so that sybils are `fraction` of the final network:
// ceil(fraction * |B| / (1 - fraction)). Throws ConfigError unless
// 0 < fraction < 1 and the result fits in B.
std::size_t dual_subset_size(std::size_t num_benign, double fraction);

// B' as the first |B'| nodes of a BFS (over in- and out-edges, restricted to
// `benign`) from a random benign root, restarting from a random unvisited
// benign node whenever the component runs out.
std::vector<NodeId> select_dual_subset(const DirectedGraph& graph,
                                       std::span<const NodeId> benign,
                                       double sybil_fraction,
                                       std::uint64_t seed);

struct SybilRegion {
  std::vector<NodeId> sybils;        // sybils[i] copies dual_subset[i]
  std::vector<Edge> internal_edges;  // sybil -> sybil
  DualMap dual;
};

// Sybil i receives id first_sybil_id + i. The returned DualMap spans
// first_sybil_id + |B'| nodes.
SybilRegion build_sybil_region(const DirectedGraph& graph,
                               std::span<const NodeId> dual_subset,
                               NodeId first_sybil_id);

// Exactly floor(fraction * num_nodes) nodes, chosen uniformly without
// replacement, get r = 0; all others r = 1.
std::vector<std::uint8_t> assign_resistance(std::size_t num_nodes,
                                            double nonresistant_fraction,
                                            std::uint64_t seed);

// p_r = (1 - r) x^3 + r (1 - x^3) for a given draw x in [0, 1].
inline double resistance_prob_from_draw(std::uint8_t resistant, double x) {
  const double x3 = x * x * x;
  return resistant ? 1.0 - x3 : x3;
}

// Independent x ~ U[0,1] per node.
std::vector<double> derive_resistance_prob(std::span<const std::uint8_t> r,
                                           std::uint64_t seed);

// AE(i) = |boundary({dual(s_i)}, B \ B')| for every sybil, in `sybils` order.
std::vector<std::size_t> target_attack_counts(
    const DirectedGraph& graph, const DualMap& dual,
    std::span<const NodeId> sybils, std::span<const NodeId> benign,
    std::span<const NodeId> dual_subset);

// Requests sent per sybil: ceil(c * AE), capped at |B|.
std::size_t request_budget(double c, std::size_t target, std::size_t num_benign);

// Modified preferential-attachment distribution over `benign` (same order).
// P1 is proportional to 1 + in-degree from B, P2 to 1 + in-degree from S,
// each normalized over B; the result is their average. Throws ConfigError if
// `benign` is empty.
std::vector<double> modified_ba_probabilities(const DirectedGraph& current,
                                              std::span<const NodeId> benign,
                                              std::span<const NodeId> sybils);

// Same distribution from precomputed in-degree counts aligned with `benign`.
std::vector<double> modified_ba_from_counts(
    std::span<const std::size_t> from_benign,
    std::span<const std::size_t> from_sybil);

struct AttackInputs {
  // Graph holding benign edges and the sybil-internal copy. Used for the
  // in-degree-from-B term and for BFS neighborhoods.
  const DirectedGraph* graph = nullptr;
  std::span<const NodeId> benign;
  std::span<const NodeId> sybils;
  std::span<const std::size_t> target_counts;   // AE, aligned with sybils
  std::span<const std::uint8_t> resistant;      // r over all graph nodes
  const DualMap* dual = nullptr;                // required for BFS
  double c = 4.0;
  double reverse_prob = 0.5;
  std::uint64_t seed = 1;
};

struct AttackEdges {
  std::vector<Edge> attack_edges;     // sybil -> benign, accepted requests
  std::vector<Edge> reverse_edges;    // benign -> sybil mirrors
  std::vector<std::size_t> requests_sent;           // aligned with sybils
  std::vector<std::vector<NodeId>> request_targets; // in send order
  std::size_t capped_budgets = 0;
};

AttackEdges attack_random(const AttackInputs& in);
AttackEdges attack_preferential(const AttackInputs& in);
AttackEdges attack_bfs(const AttackInputs& in);

struct AttackOutcome {
  DirectedGraph graph;        // benign + sybil-internal + attack + reverse
  LabelPartition truth;       // B = original nodes, S = sybil copies
  DualMap dual;
  std::vector<NodeId> dual_subset;
  std::vector<NodeId> sybils;
  std::vector<std::size_t> target_counts;
  std::vector<Edge> sybil_internal_edges;
  std::vector<Edge> attack_edges;
  std::vector<Edge> reverse_edges;
  std::vector<std::size_t> requests_sent;
  ResistanceModel resistance;
  AttackConfig config;
};

// Full synthesis: B is every node of `benign_graph`; sybils get ids after it.
AttackOutcome synthesize_attack(const DirectedGraph& benign_graph,
                                const AttackConfig& config);

}  // namespace sybilbench

#endif  // SYBILBENCH_ATTACK_HPP_
