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

#include "sybilbench/graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "sybilbench/errors.hpp"
#include "sybilbench/rng.hpp"

namespace sybilbench {

DirectedGraph DirectedGraph::FromEdges(std::size_t num_nodes,
                                       std::span<const Edge> edges,
                                       std::size_t* dropped_self_loops,
                                       std::size_t* collapsed_duplicates) {
  std::vector<Edge> sorted;
  sorted.reserve(edges.size());
  std::size_t self_loops = 0;
  for (const Edge& e : edges) {
    if (e.from >= num_nodes || e.to >= num_nodes) {
      throw std::out_of_range("edge endpoint out of range");
    }
    if (e.from == e.to) {
      ++self_loops;
      continue;
    }
    sorted.push_back(e);
  }
  std::sort(sorted.begin(), sorted.end());
  const std::size_t before = sorted.size();
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (dropped_self_loops != nullptr) *dropped_self_loops = self_loops;
  if (collapsed_duplicates != nullptr) {
    *collapsed_duplicates = before - sorted.size();
  }

  DirectedGraph g;
  g.num_nodes_ = num_nodes;
  g.out_offsets_.assign(num_nodes + 1, 0);
  g.in_offsets_.assign(num_nodes + 1, 0);
  for (const Edge& e : sorted) {
    ++g.out_offsets_[e.from + 1];
    ++g.in_offsets_[e.to + 1];
  }
  for (std::size_t v = 0; v < num_nodes; ++v) {
    g.max_out_degree_ = std::max(g.max_out_degree_, g.out_offsets_[v + 1]);
    g.max_in_degree_ = std::max(g.max_in_degree_, g.in_offsets_[v + 1]);
    g.out_offsets_[v + 1] += g.out_offsets_[v];
    g.in_offsets_[v + 1] += g.in_offsets_[v];
  }
  g.out_targets_.resize(sorted.size());
  g.in_sources_.resize(sorted.size());
  std::vector<std::size_t> in_cursor(g.in_offsets_.begin(),
                                     g.in_offsets_.end() - 1);
  // `sorted` is ordered by (from, to), so both fills produce sorted lists.
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    g.out_targets_[i] = sorted[i].to;
    g.in_sources_[in_cursor[sorted[i].to]++] = sorted[i].from;
  }
  return g;
}

bool DirectedGraph::has_edge(NodeId from, NodeId to) const {
  if (from >= num_nodes_ || to >= num_nodes_) return false;
  auto out = out_neighbors(from);
  return std::binary_search(out.begin(), out.end(), to);
}

std::vector<Edge> DirectedGraph::edges() const {
  std::vector<Edge> result;
  result.reserve(num_edges());
  for (NodeId v = 0; v < num_nodes_; ++v) {
    for (NodeId w : out_neighbors(v)) result.push_back({v, w});
  }
  return result;
}

std::vector<NodeId> DirectedGraph::undirected_neighbors(NodeId v) const {
  auto out = out_neighbors(v);
  auto in = in_neighbors(v);
  std::vector<NodeId> merged;
  merged.reserve(out.size() + in.size());
  std::set_union(out.begin(), out.end(), in.begin(), in.end(),
                 std::back_inserter(merged));
  return merged;
}

const char* to_string(Label label) {
  switch (label) {
    case Label::kBenign:
      return "benign";
    case Label::kSybil:
      return "sybil";
    case Label::kUnknown:
      return "unknown";
  }
  return "unknown";
}

PartitionReport validate_partition(std::size_t num_nodes,
                                   std::span<const NodeId> benign,
                                   std::span<const NodeId> sybil) {
  PartitionReport report;
  std::vector<std::uint8_t> seen(num_nodes, 0);
  auto mark = [&](std::span<const NodeId> set, std::uint8_t bit,
                  const char* name) {
    for (NodeId v : set) {
      if (v >= num_nodes) {
        report.ok = false;
        report.violations.push_back(std::string(name) + " contains node " +
                                    std::to_string(v) + " outside 0.." +
                                    std::to_string(num_nodes));
        continue;
      }
      seen[v] |= bit;
    }
  };
  mark(benign, 1, "B");
  mark(sybil, 2, "S");
  std::size_t overlap = 0;
  for (std::size_t v = 0; v < num_nodes; ++v) {
    if (seen[v] == 3) ++overlap;
    if (seen[v] == 0) report.unknown.push_back(static_cast<NodeId>(v));
  }
  if (overlap > 0) {
    report.ok = false;
    report.violations.push_back("B∩S nonempty (" + std::to_string(overlap) +
                                " nodes)");
  }
  if (!report.ok) report.unknown.clear();
  return report;
}

LabelPartition LabelPartition::Create(std::size_t num_nodes,
                                      std::span<const NodeId> benign,
                                      std::span<const NodeId> sybil) {
  PartitionReport report = validate_partition(num_nodes, benign, sybil);
  if (!report.ok) {
    std::string message = "invalid label partition:";
    for (const auto& v : report.violations) message += " " + v + ";";
    throw ConfigError(message);
  }
  LabelPartition partition(num_nodes);
  for (NodeId v : benign) partition.labels_[v] = Label::kBenign;
  for (NodeId v : sybil) partition.labels_[v] = Label::kSybil;
  return partition;
}

std::vector<NodeId> LabelPartition::nodes_with(Label label) const {
  std::vector<NodeId> result;
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    if (labels_[v] == label) result.push_back(static_cast<NodeId>(v));
  }
  return result;
}

bool is_path(const DirectedGraph& graph, const PathWitness& path) {
  if (path.nodes.empty()) return false;
  for (NodeId v : path.nodes) {
    if (v >= graph.num_nodes()) return false;
  }
  for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
    if (!graph.has_edge(path.nodes[i], path.nodes[i + 1])) return false;
  }
  return true;
}

std::vector<std::uint8_t> make_mask(std::size_t num_nodes,
                                    std::span<const NodeId> nodes) {
  std::vector<std::uint8_t> mask(num_nodes, 0);
  for (NodeId v : nodes) {
    if (v < num_nodes) mask[v] = 1;
  }
  return mask;
}

std::vector<Edge> boundary_edges(const DirectedGraph& graph,
                                 std::span<const NodeId> from_set,
                                 std::span<const NodeId> to_set) {
  std::vector<std::uint8_t> to_mask = make_mask(graph.num_nodes(), to_set);
  std::vector<NodeId> sources(from_set.begin(), from_set.end());
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  std::vector<Edge> result;
  for (NodeId v : sources) {
    if (v >= graph.num_nodes()) continue;
    for (NodeId w : graph.out_neighbors(v)) {
      if (to_mask[w]) result.push_back({v, w});
    }
  }
  return result;
}

InducedSubgraph induced_subgraph(const DirectedGraph& graph,
                                 std::span<const NodeId> nodes) {
  InducedSubgraph sub;
  sub.from_parent.assign(graph.num_nodes(), kNoNode);
  for (NodeId v : nodes) {
    if (v >= graph.num_nodes()) throw std::out_of_range("node out of range");
    if (sub.from_parent[v] != kNoNode) continue;
    sub.from_parent[v] = static_cast<NodeId>(sub.to_parent.size());
    sub.to_parent.push_back(v);
  }
  std::vector<Edge> edges;
  for (NodeId local = 0; local < sub.to_parent.size(); ++local) {
    for (NodeId w : graph.out_neighbors(sub.to_parent[local])) {
      if (sub.from_parent[w] != kNoNode) {
        edges.push_back({local, sub.from_parent[w]});
      }
    }
  }
  sub.graph = DirectedGraph::FromEdges(sub.to_parent.size(), edges);
  return sub;
}

DirectedGraph generate_community_graph(const CommunityGraphParams& params) {
  if (params.num_nodes == 0 || params.communities == 0 ||
      params.communities > params.num_nodes) {
    throw ConfigError("community graph needs 1 <= communities <= nodes");
  }
  Rng rng(params.seed);
  const std::size_t n = params.num_nodes;
  const std::size_t block = n / params.communities;
  auto community_of = [&](std::size_t v) {
    return std::min(v / block, params.communities - 1);
  };
  auto block_begin = [&](std::size_t c) { return c * block; };
  auto block_end = [&](std::size_t c) {
    return c + 1 == params.communities ? n : (c + 1) * block;
  };
  std::vector<Edge> edges;
  edges.reserve(2 * n * (params.intra_degree + params.inter_degree));
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t c = community_of(v);
    const std::size_t lo = block_begin(c);
    const std::size_t size = block_end(c) - lo;
    if (size > 1) {
      for (std::size_t i = 0; i < params.intra_degree; ++i) {
        std::size_t u = lo + rng.below(size);
        if (u == v) continue;
        edges.push_back({static_cast<NodeId>(v), static_cast<NodeId>(u)});
        edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
      }
    }
    const std::size_t outside = n - size;
    if (outside > 0) {
      for (std::size_t i = 0; i < params.inter_degree; ++i) {
        std::size_t u = rng.below(outside);
        if (u >= lo) u += size;
        edges.push_back({static_cast<NodeId>(v), static_cast<NodeId>(u)});
        edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
      }
    }
  }
  return DirectedGraph::FromEdges(n, edges);
}

}  // namespace sybilbench
