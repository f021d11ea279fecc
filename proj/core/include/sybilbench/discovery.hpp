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

#ifndef SYBILBENCH_DISCOVERY_HPP_
#define SYBILBENCH_DISCOVERY_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sybilbench/graph.hpp"

namespace sybilbench {

// Ordered probe list with its budget.
struct RevealSet {
  std::vector<NodeId> nodes;
  std::size_t budget = 0;
};

// Answers resistance queries from a ground-truth vector and remembers every
// answer it has given. Repeated queries return the memoized answer.
class RevealOracle {
 public:
  explicit RevealOracle(std::vector<std::uint8_t> truth)
      : truth_(std::move(truth)), answer_(truth_.size(), kUnrevealed) {}

  bool query(NodeId v);
  bool is_revealed(NodeId v) const { return answer_[v] != kUnrevealed; }
  // Valid only for revealed nodes.
  bool answer(NodeId v) const { return answer_[v] == 1; }

  const std::vector<NodeId>& revealed() const { return order_; }
  std::size_t num_nodes() const { return truth_.size(); }

 private:
  static constexpr std::uint8_t kUnrevealed = 0xff;
  std::vector<std::uint8_t> truth_;
  std::vector<std::uint8_t> answer_;
  std::vector<NodeId> order_;
};

// Newly certified benigns. witnesses[i] certifies discovered[i]: it starts at
// that node, ends in B, and every node after the first was revealed resistant.
struct DiscoveryResult {
  std::vector<NodeId> discovered;
  std::vector<PathWitness> witnesses;
};

// Multi-source BFS over reversed edges. Sources are the revealed-resistant
// benigns; the search continues only through revealed-resistant nodes and
// marks every unlabeled in-neighbor it touches as discovered. One engine
// reuses its scratch buffers across calls, so hot loops should keep one per
// thread.
class DiscoveryEngine {
 public:
  DiscoveryEngine(const DirectedGraph& graph, const LabelPartition& labels);

  // Number of discovered nodes. `resistant[v]` is consulted only for v in
  // `reveal_set`; it must span every node.
  std::size_t count(std::span<const NodeId> reveal_set,
                    std::span<const std::uint8_t> resistant);

  DiscoveryResult discover(std::span<const NodeId> reveal_set,
                           std::span<const std::uint8_t> resistant);

  const DirectedGraph& graph() const { return *graph_; }
  const LabelPartition& labels() const { return *labels_; }

 private:
  template <bool kTrackParents>
  std::size_t run(std::span<const NodeId> reveal_set,
                  std::span<const std::uint8_t> resistant);
  void next_epoch();

  const DirectedGraph* graph_;
  const LabelPartition* labels_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> in_reveal_;   // == epoch when in the reveal set
  std::vector<std::uint32_t> expanded_;    // == epoch when enqueued
  std::vector<std::uint32_t> found_;       // == epoch when discovered
  std::vector<NodeId> parent_;
  std::vector<NodeId> queue_;
  std::vector<NodeId> found_list_;
};

DiscoveryResult discover_benigns(const DirectedGraph& graph,
                                 const LabelPartition& labels,
                                 std::span<const NodeId> reveal_set,
                                 std::span<const std::uint8_t> resistant);

}  // namespace sybilbench

#endif  // SYBILBENCH_DISCOVERY_HPP_
