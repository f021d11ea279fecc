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

#include "sybilbench/traversing.hpp"

#include <algorithm>

namespace sybilbench {

TraversingFrontier::TraversingFrontier(const DirectedGraph& graph,
                                       const LabelPartition& labels)
    : graph_(&graph) {
  const std::size_t n = graph.num_nodes();
  in_begin_.assign(n + 1, 0);
  in_size_.assign(n, 0);
  link_begin_.assign(n + 1, 0);
  for (NodeId v = 0; v < n; ++v) {
    std::size_t residual = 0;
    for (NodeId u : graph.in_neighbors(v)) residual += !labels.is_known(u);
    in_begin_[v + 1] = in_begin_[v] + residual;
    link_begin_[v + 1] =
        link_begin_[v] + (labels.is_known(v) ? 0 : graph.out_degree(v));
  }
  slots_.resize(in_begin_[n]);
  links_.resize(link_begin_[n]);
  for (NodeId u = 0; u < n; ++u) {
    if (labels.is_known(u)) continue;
    std::size_t link = link_begin_[u];
    for (NodeId w : graph.out_neighbors(u)) {
      const std::size_t slot = in_begin_[w] + in_size_[w]++;
      slots_[slot] = {u, static_cast<std::uint32_t>(link)};
      links_[link] = {w, static_cast<std::uint32_t>(slot)};
      ++link;
    }
  }

  frontier_pos_.assign(n, kAbsent);
  discovered_.assign(n, 0);
  parent_.assign(n, kNoNode);
  for (NodeId v = 0; v < n; ++v) {
    if (labels.is_benign(v)) frontier_add(v);
  }
}

std::vector<NodeId> TraversingFrontier::residual_in_neighbors(NodeId v) const {
  std::vector<NodeId> out;
  out.reserve(in_size_[v]);
  for (std::size_t i = 0; i < in_size_[v]; ++i) {
    out.push_back(slots_[in_begin_[v] + i].source);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void TraversingFrontier::frontier_add(NodeId v) {
  frontier_pos_[v] = frontier_.size();
  frontier_.push_back(v);
}

void TraversingFrontier::frontier_remove(NodeId v) {
  const std::size_t pos = frontier_pos_[v];
  const NodeId last = frontier_.back();
  frontier_[pos] = last;
  frontier_pos_[last] = pos;
  frontier_.pop_back();
  frontier_pos_[v] = kAbsent;
}

NodeId TraversingFrontier::pick(std::span<const double> p_r) const {
  NodeId best = kNoNode;
  double best_score = -1.0;
  for (NodeId v : frontier_) {
    const double score = p_r[v] * static_cast<double>(in_size_[v]);
    if (score > best_score || (score == best_score && v < best)) {
      best = v;
      best_score = score;
    }
  }
  return best;
}

void TraversingFrontier::detach(NodeId u) {
  const std::size_t end = link_begin_[u + 1];
  for (std::size_t l = link_begin_[u]; l < end; ++l) {
    const NodeId w = links_[l].target;
    const std::size_t slot = links_[l].slot;
    const std::size_t last = in_begin_[w] + in_size_[w] - 1;
    if (slot != last) {
      slots_[slot] = slots_[last];
      links_[slots_[slot].link].slot = static_cast<std::uint32_t>(slot);
    }
    --in_size_[w];
    ++update_ops_;
  }
}

std::vector<NodeId> TraversingFrontier::reveal(NodeId v, bool resistant) {
  if (in_frontier(v)) frontier_remove(v);
  if (!resistant) return {};
  std::vector<NodeId> fresh;
  fresh.reserve(in_size_[v]);
  for (std::size_t i = 0; i < in_size_[v]; ++i) {
    fresh.push_back(slots_[in_begin_[v] + i].source);
  }
  std::sort(fresh.begin(), fresh.end());
  for (NodeId u : fresh) {
    discovered_[u] = 1;
    parent_[u] = v;
    discovered_order_.push_back(u);
    frontier_add(u);
  }
  for (NodeId u : fresh) detach(u);
  return fresh;
}

DiscoveryResult TraversingFrontier::result() const {
  DiscoveryResult out;
  out.discovered = discovered_order_;
  std::sort(out.discovered.begin(), out.discovered.end());
  out.witnesses.reserve(out.discovered.size());
  for (NodeId u : out.discovered) {
    PathWitness path;
    for (NodeId v = u; v != kNoNode; v = parent_[v]) path.nodes.push_back(v);
    out.witnesses.push_back(std::move(path));
  }
  return out;
}

TraversingResult traversing(const DirectedGraph& graph,
                            const LabelPartition& labels, std::size_t k,
                            std::span<const double> p_r, RevealOracle& oracle) {
  TraversingFrontier frontier(graph, labels);
  TraversingResult result;
  result.reveals.budget = k;
  std::size_t total = 0;
  while (result.reveals.nodes.size() < k) {
    const NodeId v = frontier.pick(p_r);
    if (v == kNoNode) break;
    result.reveals.nodes.push_back(v);
    total += frontier.reveal(v, oracle.query(v)).size();
    result.discovered_after.push_back(total);
  }
  result.discovery = frontier.result();
  result.update_ops = frontier.update_ops();
  return result;
}

}  // namespace sybilbench
