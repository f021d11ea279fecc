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

#ifndef SYBILBENCH_GRAPH_HPP_
#define SYBILBENCH_GRAPH_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace sybilbench {

// Dense node index; contiguous 0..n-1 for a loaded graph.
using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct Edge {
  NodeId from = 0;
  NodeId to = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable directed graph in compressed sparse row form, holding both the
// out- and in-adjacency. Neighbor lists are sorted by id. Self-loops and
// duplicate edges are removed on construction.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  // Builds a graph on `num_nodes` nodes. Edges with an endpoint out of range
  // throw std::out_of_range. `dropped_self_loops` and `collapsed_duplicates`
  // receive the counts of discarded input edges when non-null.
  static DirectedGraph FromEdges(std::size_t num_nodes,
                                 std::span<const Edge> edges,
                                 std::size_t* dropped_self_loops = nullptr,
                                 std::size_t* collapsed_duplicates = nullptr);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return out_targets_.size(); }

  std::span<const NodeId> out_neighbors(NodeId v) const {
    return {out_targets_.data() + out_offsets_[v],
            out_targets_.data() + out_offsets_[v + 1]};
  }
  std::span<const NodeId> in_neighbors(NodeId v) const {
    return {in_sources_.data() + in_offsets_[v],
            in_sources_.data() + in_offsets_[v + 1]};
  }

  std::size_t out_degree(NodeId v) const {
    return out_offsets_[v + 1] - out_offsets_[v];
  }
  std::size_t in_degree(NodeId v) const {
    return in_offsets_[v + 1] - in_offsets_[v];
  }
  std::size_t degree(NodeId v) const { return in_degree(v) + out_degree(v); }

  std::size_t max_in_degree() const { return max_in_degree_; }
  std::size_t max_out_degree() const { return max_out_degree_; }

  bool has_edge(NodeId from, NodeId to) const;

  // All edges ordered by (from, to).
  std::vector<Edge> edges() const;

  // Union of in- and out-neighbors, sorted and deduplicated.
  std::vector<NodeId> undirected_neighbors(NodeId v) const;

 private:
  std::size_t num_nodes_ = 0;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeId> in_sources_;
  std::size_t max_in_degree_ = 0;
  std::size_t max_out_degree_ = 0;
};

// Sparse per-edge weights with an implicit default of 1.0.
class EdgeWeights {
 public:
  double get(NodeId from, NodeId to) const {
    auto it = weights_.find(key(from, to));
    return it == weights_.end() ? 1.0 : it->second;
  }
  void set(NodeId from, NodeId to, double weight) {
    weights_[key(from, to)] = weight;
  }
  std::size_t num_overrides() const { return weights_.size(); }
  bool empty() const { return weights_.empty(); }

 private:
  static std::uint64_t key(NodeId from, NodeId to) {
    return (static_cast<std::uint64_t>(from) << 32) | to;
  }
  std::unordered_map<std::uint64_t, double> weights_;
};

enum class Label : std::uint8_t { kUnknown = 0, kBenign = 1, kSybil = 2 };

const char* to_string(Label label);

// Outcome of checking a candidate (B, S) pair against a node range.
struct PartitionReport {
  bool ok = true;
  std::vector<std::string> violations;
  std::vector<NodeId> unknown;  // implicit complement U, valid when ok
};

// Never throws; every problem is listed in the report.
PartitionReport validate_partition(std::size_t num_nodes,
                                   std::span<const NodeId> benign,
                                   std::span<const NodeId> sybil);

// Disjoint benign / sybil / unknown sets over 0..n-1.
class LabelPartition {
 public:
  LabelPartition() = default;
  explicit LabelPartition(std::size_t num_nodes)
      : labels_(num_nodes, Label::kUnknown) {}

  // Throws ConfigError carrying the violation report if the sets overlap or
  // reference out-of-range nodes.
  static LabelPartition Create(std::size_t num_nodes,
                               std::span<const NodeId> benign,
                               std::span<const NodeId> sybil);

  std::size_t num_nodes() const { return labels_.size(); }
  Label label(NodeId v) const { return labels_[v]; }
  bool is_benign(NodeId v) const { return labels_[v] == Label::kBenign; }
  bool is_sybil(NodeId v) const { return labels_[v] == Label::kSybil; }
  bool is_known(NodeId v) const { return labels_[v] != Label::kUnknown; }

  void set(NodeId v, Label label) { labels_[v] = label; }

  std::vector<NodeId> nodes_with(Label label) const;
  std::vector<NodeId> benign() const { return nodes_with(Label::kBenign); }
  std::vector<NodeId> sybil() const { return nodes_with(Label::kSybil); }
  std::vector<NodeId> unknown() const { return nodes_with(Label::kUnknown); }

  std::span<const Label> labels() const { return labels_; }

 private:
  std::vector<Label> labels_;
};

// Ground-truth resistance r(v) in {0,1} and its estimate p_r(v) in [0,1].
struct ResistanceModel {
  std::vector<std::uint8_t> resistant;
  std::vector<double> probability;
};

// A node sequence v1..vk; valid when every consecutive pair is an edge.
struct PathWitness {
  std::vector<NodeId> nodes;
};

bool is_path(const DirectedGraph& graph, const PathWitness& path);

// The directed edges leaving `from_set` and entering `to_set`, ordered by
// (from, to).
std::vector<Edge> boundary_edges(const DirectedGraph& graph,
                                 std::span<const NodeId> from_set,
                                 std::span<const NodeId> to_set);

struct InducedSubgraph {
  DirectedGraph graph;
  std::vector<NodeId> to_parent;    // subgraph id -> parent id
  std::vector<NodeId> from_parent;  // parent id -> subgraph id or kNoNode
};

// Subgraph ids follow the order of `nodes`. Duplicate ids are ignored after
// their first occurrence.
InducedSubgraph induced_subgraph(const DirectedGraph& graph,
                                 std::span<const NodeId> nodes);

// Membership mask of `nodes` over 0..num_nodes-1.
std::vector<std::uint8_t> make_mask(std::size_t num_nodes,
                                    std::span<const NodeId> nodes);

// Undirected planted-community graph: nodes are split into `communities`
// equal blocks; each node draws `intra_degree` partners inside its block and
// `inter_degree` outside it. Every chosen pair is added in both directions.
struct CommunityGraphParams {
  std::size_t num_nodes = 2000;
  std::size_t communities = 20;
  std::size_t intra_degree = 8;
  std::size_t inter_degree = 1;
  std::uint64_t seed = 1;
};

DirectedGraph generate_community_graph(const CommunityGraphParams& params);

}  // namespace sybilbench

#endif  // SYBILBENCH_GRAPH_HPP_
