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

#ifndef SYBILBENCH_TRAVERSING_HPP_
#define SYBILBENCH_TRAVERSING_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sybilbench/discovery.hpp"
#include "sybilbench/graph.hpp"

namespace sybilbench {

// State of the frontier-based benign discovery.
//
// For every node v the structure keeps the residual in-neighbor list
// Γ̂_in(v): in-neighbors that are neither labeled nor already discovered. Each
// unlabeled node u also keeps one cross-link per out-edge (u, w) pointing at
// u's slot inside Γ̂_in(w), and each slot points back at the cross-link. When u
// is discovered it is swap-removed from every Γ̂_in(w) in O(1) per out-edge,
// with the displaced entry's cross-link patched to its new slot. A reveal
// therefore costs O(Δ_in · Δ_out) list updates plus an O(|N|) argmax scan.
class TraversingFrontier {
 public:
  TraversingFrontier(const DirectedGraph& graph, const LabelPartition& labels);

  // γ_in(v) = |Γ̂_in(v)|.
  std::size_t gamma_in(NodeId v) const { return in_size_[v]; }
  std::vector<NodeId> residual_in_neighbors(NodeId v) const;

  bool in_frontier(NodeId v) const { return frontier_pos_[v] != kAbsent; }
  std::size_t frontier_size() const { return frontier_.size(); }
  bool is_discovered(NodeId v) const { return discovered_[v] != 0; }

  // Frontier node maximizing p_r(v) · γ_in(v), ties to the lowest id;
  // kNoNode when the frontier is empty.
  NodeId pick(std::span<const double> p_r) const;

  // Removes v from the frontier. When resistant, every node of Γ̂_in(v) is
  // certified benign, joins the frontier and is dropped from the residual
  // lists of its out-neighbors. Returns the newly certified nodes.
  std::vector<NodeId> reveal(NodeId v, bool resistant);

  // Total residual-list removals so far.
  std::size_t update_ops() const { return update_ops_; }

  DiscoveryResult result() const;

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

  struct InSlot {
    NodeId source;
    std::uint32_t link;  // index into links_
  };
  struct Link {
    NodeId target;
    std::uint32_t slot;  // index into slots_
  };

  void frontier_add(NodeId v);
  void frontier_remove(NodeId v);
  void detach(NodeId u);

  const DirectedGraph* graph_;
  std::vector<std::size_t> in_begin_;
  std::vector<std::size_t> in_size_;
  std::vector<InSlot> slots_;
  std::vector<std::size_t> link_begin_;
  std::vector<Link> links_;

  std::vector<NodeId> frontier_;
  std::vector<std::size_t> frontier_pos_;
  std::vector<std::uint8_t> discovered_;
  std::vector<NodeId> parent_;
  std::vector<NodeId> discovered_order_;
  std::size_t update_ops_ = 0;
};

struct TraversingResult {
  RevealSet reveals;
  DiscoveryResult discovery;
  // discovered_after[i] = total discovered after the first i + 1 reveals.
  std::vector<std::size_t> discovered_after;
  std::size_t update_ops = 0;
};

// Reveals up to k frontier nodes on the oracle. Returns early when the
// frontier empties.
TraversingResult traversing(const DirectedGraph& graph,
                            const LabelPartition& labels, std::size_t k,
                            std::span<const double> p_r, RevealOracle& oracle);

}  // namespace sybilbench

#endif  // SYBILBENCH_TRAVERSING_HPP_
