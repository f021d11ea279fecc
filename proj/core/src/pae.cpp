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

#include "sybilbench/pae.hpp"

#include <algorithm>
#include <string>

#include <spdlog/spdlog.h>

#include "sybilbench/errors.hpp"
#include "sybilbench/rng.hpp"
#include "sybilbench/selection.hpp"

namespace sybilbench {

const char* to_string(PaeMode mode) {
  return mode == PaeMode::kUnion ? "union" : "literal";
}

PaeMode parse_pae_mode(std::string_view name) {
  if (name == "union") return PaeMode::kUnion;
  if (name == "literal") return PaeMode::kLiteral;
  throw ConfigError("unknown PAE mode '" + std::string(name) +
                    "' (expected union or literal)");
}

std::size_t pae_exposure(const DirectedGraph& graph,
                         const LabelPartition& labels, NodeId v,
                         PaeMode mode) {
  if (mode == PaeMode::kLiteral) {
    std::size_t count = 0;
    for (NodeId u : graph.in_neighbors(v)) {
      count += !(labels.is_benign(u) && labels.is_sybil(u));
    }
    return count;
  }
  std::size_t count = 0;
  for (NodeId u : graph.in_neighbors(v)) count += !labels.is_known(u);
  return count;
}

double pae_value(const DirectedGraph& graph, const LabelPartition& labels,
                 std::span<const double> p_r, NodeId v, PaeMode mode) {
  return (1.0 - p_r[v]) *
         static_cast<double>(pae_exposure(graph, labels, v, mode));
}

std::vector<PaeCandidate> pae_candidates(const DirectedGraph& graph,
                                         const LabelPartition& labels,
                                         std::span<const double> p_r,
                                         PaeMode mode,
                                         std::span<const std::uint8_t> exclude) {
  std::vector<PaeCandidate> out;
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    if (!labels.is_benign(v)) continue;
    if (!exclude.empty() && exclude[v]) continue;
    out.push_back({v, pae_value(graph, labels, p_r, v, mode)});
  }
  return out;
}

std::vector<NodeId> pae_select_top_k(const DirectedGraph& graph,
                                     const LabelPartition& labels,
                                     std::span<const double> p_r,
                                     std::size_t k, PaeMode mode,
                                     std::span<const std::uint8_t> exclude) {
  std::vector<ScoredNode> items;
  for (const PaeCandidate& c :
       pae_candidates(graph, labels, p_r, mode, exclude)) {
    items.push_back({c.node, c.value});
  }
  if (k > items.size()) {
    spdlog::warn("PAE budget {} exceeds {} candidates; clamping", k,
                 items.size());
    k = items.size();
  }
  std::vector<NodeId> out;
  out.reserve(k);
  for (const ScoredNode& s : select_top_k(std::move(items), k)) {
    out.push_back(s.node);
  }
  return out;
}

PaeResult pae_reveal(const DirectedGraph& graph, const LabelPartition& labels,
                     std::span<const NodeId> probed, RevealOracle& oracle,
                     const LabelPartition* truth) {
  PaeResult result;
  result.probed.assign(probed.begin(), probed.end());
  for (NodeId v : probed) {
    if (v >= graph.num_nodes() || !labels.is_benign(v)) {
      throw ConfigError("PAE probe " + std::to_string(v) +
                        " is not a known benign");
    }
    if (oracle.query(v)) continue;
    for (NodeId u : graph.in_neighbors(v)) {
      if (labels.is_known(u)) continue;
      result.pae_edges.push_back({u, v});
      if (truth != nullptr && truth->is_sybil(u)) {
        result.true_attack_edges.push_back({u, v});
      }
    }
  }
  std::sort(result.pae_edges.begin(), result.pae_edges.end());
  result.pae_edges.erase(
      std::unique(result.pae_edges.begin(), result.pae_edges.end()),
      result.pae_edges.end());
  std::sort(result.true_attack_edges.begin(), result.true_attack_edges.end());
  result.true_attack_edges.erase(std::unique(result.true_attack_edges.begin(),
                                             result.true_attack_edges.end()),
                                 result.true_attack_edges.end());
  return result;
}

std::vector<NodeId> pae_baseline_random(std::span<const NodeId> benign,
                                        std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  return sample_without_replacement(benign, k, rng);
}

namespace {

// a/b with a zero denominator read as 0.
struct Ratio {
  std::size_t num = 0;
  std::size_t den = 0;

  double value() const {
    return den == 0 ? 0.0
                    : static_cast<double>(num) / static_cast<double>(den);
  }
};

// Exact comparison by cross-multiplication; edge counts fit in 32 bits.
int compare(const Ratio& a, const Ratio& b) {
  const std::uint64_t an = a.den == 0 ? 0 : a.num;
  const std::uint64_t ad = a.den == 0 ? 1 : a.den;
  const std::uint64_t bn = b.den == 0 ? 0 : b.num;
  const std::uint64_t bd = b.den == 0 ? 1 : b.den;
  const std::uint64_t l = an * bd, r = bn * ad;
  return l < r ? -1 : (l > r ? 1 : 0);
}

}  // namespace

FullKnowledgeSelection pae_full_knowledge(
    const DirectedGraph& graph, const LabelPartition& labels,
    const LabelPartition& truth, std::span<const std::uint8_t> resistant,
    std::size_t k) {
  struct Item {
    NodeId node;
    std::size_t attacks;
    std::size_t paes;
  };
  std::vector<Item> open;
  std::vector<NodeId> resistant_nodes;
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    if (!labels.is_benign(v)) continue;
    if (resistant[v]) {
      resistant_nodes.push_back(v);
      continue;
    }
    Item item{v, 0, 0};
    for (NodeId u : graph.in_neighbors(v)) {
      if (labels.is_known(u)) continue;
      ++item.paes;
      item.attacks += truth.is_sybil(u);
    }
    open.push_back(item);
  }

  FullKnowledgeSelection out;
  Ratio total;
  std::vector<std::uint8_t> used(open.size(), 0);
  while (out.nodes.size() < k && out.nodes.size() < open.size()) {
    std::size_t best = open.size();
    Ratio best_ratio;
    for (std::size_t i = 0; i < open.size(); ++i) {
      if (used[i]) continue;
      const Ratio r{total.num + open[i].attacks, total.den + open[i].paes};
      if (best == open.size()) {
        best = i;
        best_ratio = r;
        continue;
      }
      const int cmp = compare(r, best_ratio);
      if (cmp > 0 || (cmp == 0 && open[i].attacks > open[best].attacks)) {
        best = i;
        best_ratio = r;
      }
      // Equal ratio and attack count: the earlier (lower) id stays.
    }
    used[best] = 1;
    total = best_ratio;
    out.nodes.push_back(open[best].node);
    out.ratio_trace.push_back(total.value());
  }
  for (NodeId v : resistant_nodes) {
    if (out.nodes.size() >= k) break;
    out.nodes.push_back(v);
    out.ratio_trace.push_back(total.value());
  }
  return out;
}

double pae_expected_value(const DirectedGraph& graph,
                          const LabelPartition& labels,
                          std::span<const double> p_r,
                          std::span<const NodeId> reveal_set, PaeMode mode) {
  // Summed in id order so the result depends only on the set.
  std::vector<NodeId> nodes(reveal_set.begin(), reveal_set.end());
  std::sort(nodes.begin(), nodes.end());
  double total = 0.0;
  for (NodeId v : nodes) total += pae_value(graph, labels, p_r, v, mode);
  return total;
}

}  // namespace sybilbench
