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

#include "sybilbench/selection.hpp"

#include <algorithm>
#include <utility>

namespace sybilbench {
namespace {

void insertion_sort(std::span<ScoredNode> a, std::size_t lo, std::size_t hi) {
  for (std::size_t i = lo + 1; i < hi; ++i) {
    for (std::size_t j = i; j > lo && ranks_before(a[j], a[j - 1]); --j) {
      std::swap(a[j], a[j - 1]);
    }
  }
}

std::size_t select_in(std::span<ScoredNode> a, std::size_t lo, std::size_t hi,
                      std::size_t nth);

// Index in [lo, hi) of a pivot guaranteed to split the range 30/70 or better.
std::size_t pivot_index(std::span<ScoredNode> a, std::size_t lo,
                        std::size_t hi) {
  std::size_t medians = lo;
  for (std::size_t g = lo; g < hi; g += 5) {
    const std::size_t end = std::min(g + 5, hi);
    insertion_sort(a, g, end);
    std::swap(a[medians++], a[g + (end - g) / 2]);
  }
  const std::size_t mid = lo + (medians - lo) / 2;
  return select_in(a, lo, medians, mid);
}

// Three-way partition around a[pivot]; returns [lt, gt) holding items equal
// to the pivot under the order.
std::pair<std::size_t, std::size_t> partition(std::span<ScoredNode> a,
                                              std::size_t lo, std::size_t hi,
                                              std::size_t pivot) {
  const ScoredNode p = a[pivot];
  std::size_t lt = lo, i = lo, gt = hi;
  while (i < gt) {
    if (ranks_before(a[i], p)) {
      std::swap(a[lt++], a[i++]);
    } else if (ranks_before(p, a[i])) {
      std::swap(a[i], a[--gt]);
    } else {
      ++i;
    }
  }
  return {lt, gt};
}

std::size_t select_in(std::span<ScoredNode> a, std::size_t lo, std::size_t hi,
                      std::size_t nth) {
  while (true) {
    if (hi - lo <= 5) {
      insertion_sort(a, lo, hi);
      return nth;
    }
    const std::size_t pivot = pivot_index(a, lo, hi);
    const auto [lt, gt] = partition(a, lo, hi, pivot);
    if (nth < lt) {
      hi = lt;
    } else if (nth >= gt) {
      lo = gt;
    } else {
      return nth;
    }
  }
}

}  // namespace

void mom_select(std::span<ScoredNode> items, std::size_t nth) {
  if (nth >= items.size()) return;
  select_in(items, 0, items.size(), nth);
}

std::vector<ScoredNode> select_top_k(std::vector<ScoredNode> items,
                                     std::size_t k) {
  k = std::min(k, items.size());
  if (k == 0) return {};
  if (k < items.size()) {
    mom_select(items, k - 1);
    // Everything left of position k - 1 ranks before it; the rest after.
    items.resize(k);
  }
  std::sort(items.begin(), items.end(), ranks_before);
  return items;
}

}  // namespace sybilbench
