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

#ifndef SYBILBENCH_SELECTION_HPP_
#define SYBILBENCH_SELECTION_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "sybilbench/graph.hpp"

namespace sybilbench {

struct ScoredNode {
  NodeId node = 0;
  double value = 0.0;
};

// Strict total order used for top-k: larger value first, then lower id.
inline bool ranks_before(const ScoredNode& a, const ScoredNode& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.node < b.node;
}

// Rearranges `items` so that items[nth] is the element a full sort under
// ranks_before would place there, with every earlier element ranking before
// it. Deterministic worst-case linear time (median of medians).
void mom_select(std::span<ScoredNode> items, std::size_t nth);

// The k best items under ranks_before, sorted. k is clamped to the input size.
std::vector<ScoredNode> select_top_k(std::vector<ScoredNode> items,
                                     std::size_t k);

}  // namespace sybilbench

#endif  // SYBILBENCH_SELECTION_HPP_
