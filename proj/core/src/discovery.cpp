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

#include "sybilbench/discovery.hpp"

#include <algorithm>

namespace sybilbench {

bool RevealOracle::query(NodeId v) {
  if (answer_[v] == kUnrevealed) {
    answer_[v] = truth_[v] ? 1 : 0;
    order_.push_back(v);
  }
  return answer_[v] == 1;
}

DiscoveryEngine::DiscoveryEngine(const DirectedGraph& graph,
                                 const LabelPartition& labels)
    : graph_(&graph),
      labels_(&labels),
      in_reveal_(graph.num_nodes(), 0),
      expanded_(graph.num_nodes(), 0),
      found_(graph.num_nodes(), 0),
      parent_(graph.num_nodes(), kNoNode) {
  queue_.reserve(graph.num_nodes());
}

void DiscoveryEngine::next_epoch() {
  if (++epoch_ == 0) {
    std::fill(in_reveal_.begin(), in_reveal_.end(), 0);
    std::fill(expanded_.begin(), expanded_.end(), 0);
    std::fill(found_.begin(), found_.end(), 0);
    epoch_ = 1;
  }
}

template <bool kTrackParents>
std::size_t DiscoveryEngine::run(std::span<const NodeId> reveal_set,
                                 std::span<const std::uint8_t> resistant) {
  next_epoch();
  const std::uint32_t epoch = epoch_;
  const LabelPartition& labels = *labels_;
  queue_.clear();
  if constexpr (kTrackParents) found_list_.clear();

  for (NodeId v : reveal_set) in_reveal_[v] = epoch;
  for (NodeId v : reveal_set) {
    if (labels.is_benign(v) && resistant[v] && expanded_[v] != epoch) {
      expanded_[v] = epoch;
      if constexpr (kTrackParents) parent_[v] = kNoNode;
      queue_.push_back(v);
    }
  }

  std::size_t count = 0;
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const NodeId w = queue_[head];
    for (NodeId u : graph_->in_neighbors(w)) {
      const Label label = labels.label(u);
      if (label == Label::kSybil) continue;
      if (label == Label::kUnknown && found_[u] != epoch) {
        found_[u] = epoch;
        ++count;
        if constexpr (kTrackParents) {
          parent_[u] = w;
          found_list_.push_back(u);
        }
      }
      if (in_reveal_[u] == epoch && resistant[u] && expanded_[u] != epoch) {
        expanded_[u] = epoch;
        if constexpr (kTrackParents) {
          // Benign sources keep kNoNode; unknown nodes already got w above.
          if (label == Label::kBenign) parent_[u] = kNoNode;
        }
        queue_.push_back(u);
      }
    }
  }
  return count;
}

std::size_t DiscoveryEngine::count(std::span<const NodeId> reveal_set,
                                   std::span<const std::uint8_t> resistant) {
  return run<false>(reveal_set, resistant);
}

DiscoveryResult DiscoveryEngine::discover(
    std::span<const NodeId> reveal_set,
    std::span<const std::uint8_t> resistant) {
  run<true>(reveal_set, resistant);
  std::vector<NodeId> nodes = found_list_;
  std::sort(nodes.begin(), nodes.end());
  DiscoveryResult result;
  result.discovered = nodes;
  result.witnesses.reserve(nodes.size());
  for (NodeId u : nodes) {
    PathWitness path;
    NodeId v = u;
    while (v != kNoNode) {
      path.nodes.push_back(v);
      v = parent_[v];
    }
    result.witnesses.push_back(std::move(path));
  }
  return result;
}

DiscoveryResult discover_benigns(const DirectedGraph& graph,
                                 const LabelPartition& labels,
                                 std::span<const NodeId> reveal_set,
                                 std::span<const std::uint8_t> resistant) {
  DiscoveryEngine engine(graph, labels);
  return engine.discover(reveal_set, resistant);
}

}  // namespace sybilbench
