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

#include "sybilbench/attack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include <spdlog/spdlog.h>

#include "sybilbench/errors.hpp"
#include "sybilbench/rng.hpp"

namespace sybilbench {

const char* to_string(AttackStrategy strategy) {
  switch (strategy) {
    case AttackStrategy::kRandom:
      return "random";
    case AttackStrategy::kPreferential:
      return "preat";
    case AttackStrategy::kBfs:
      return "bfs";
  }
  return "random";
}

AttackStrategy parse_strategy(std::string_view name) {
  if (name == "random") return AttackStrategy::kRandom;
  if (name == "preat" || name == "preferential" || name == "ba") {
    return AttackStrategy::kPreferential;
  }
  if (name == "bfs") return AttackStrategy::kBfs;
  throw ConfigError("unknown attack strategy '" + std::string(name) +
                    "' (expected random, preat or bfs)");
}

void AttackConfig::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw ConfigError("attack.c must be a positive finite number");
  }
  if (!(sybil_fraction > 0.0 && sybil_fraction < 1.0)) {
    throw ConfigError("attack.sybil_fraction must lie in (0, 1)");
  }
  if (!(reverse_prob >= 0.0 && reverse_prob <= 1.0)) {
    throw ConfigError("attack.reverse_prob must lie in [0, 1]");
  }
  if (!(nonresistant_fraction >= 0.0 && nonresistant_fraction <= 1.0)) {
    throw ConfigError("attack.nonresistant_fraction must lie in [0, 1]");
  }
}

void DualMap::link(NodeId sybil, NodeId benign) {
  const std::size_t needed = std::max(sybil, benign) + std::size_t{1};
  if (dual_.size() < needed) dual_.resize(needed, kNoNode);
  if (dual_[sybil] == kNoNode) ++pairs_;
  dual_[sybil] = benign;
  dual_[benign] = sybil;
}

bool DualMap::is_involution() const {
  for (std::size_t v = 0; v < dual_.size(); ++v) {
    const NodeId d = dual_[v];
    if (d == kNoNode) continue;
    if (d >= dual_.size() || dual_[d] != v || d == v) return false;
  }
  return true;
}

std::size_t dual_subset_size(std::size_t num_benign, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw ConfigError("sybil_fraction must lie in (0, 1)");
  }
  const double exact =
      fraction * static_cast<double>(num_benign) / (1.0 - fraction);
  const auto size = static_cast<std::size_t>(std::ceil(exact - 1e-9));
  if (size > num_benign) {
    throw ConfigError("sybil_fraction " + std::to_string(fraction) +
                      " needs more dual nodes than the " +
                      std::to_string(num_benign) + " benign nodes available");
  }
  return size;
}

std::vector<NodeId> select_dual_subset(const DirectedGraph& graph,
                                       std::span<const NodeId> benign,
                                       double sybil_fraction,
                                       std::uint64_t seed) {
  const std::size_t target = dual_subset_size(benign.size(), sybil_fraction);
  Rng rng(seed);
  std::vector<NodeId> roots =
      sample_without_replacement(benign, benign.size(), rng);
  std::vector<std::uint8_t> allowed = make_mask(graph.num_nodes(), benign);
  std::vector<std::uint8_t> visited(graph.num_nodes(), 0);

  std::vector<NodeId> chosen;
  chosen.reserve(target);
  std::vector<NodeId> queue;
  std::size_t next_root = 0;
  while (chosen.size() < target) {
    while (visited[roots[next_root]]) ++next_root;
    queue.assign(1, roots[next_root]);
    visited[roots[next_root]] = 1;
    for (std::size_t head = 0; head < queue.size() && chosen.size() < target;
         ++head) {
      const NodeId v = queue[head];
      chosen.push_back(v);
      for (NodeId w : graph.undirected_neighbors(v)) {
        if (allowed[w] && !visited[w]) {
          visited[w] = 1;
          queue.push_back(w);
        }
      }
    }
  }
  return chosen;
}

SybilRegion build_sybil_region(const DirectedGraph& graph,
                               std::span<const NodeId> dual_subset,
                               NodeId first_sybil_id) {
  InducedSubgraph sub = induced_subgraph(graph, dual_subset);
  SybilRegion region;
  region.dual = DualMap(first_sybil_id + sub.to_parent.size());
  region.sybils.reserve(sub.to_parent.size());
  for (NodeId i = 0; i < sub.to_parent.size(); ++i) {
    const NodeId sybil = first_sybil_id + i;
    region.sybils.push_back(sybil);
    region.dual.link(sybil, sub.to_parent[i]);
  }
  for (const Edge& e : sub.graph.edges()) {
    region.internal_edges.push_back(
        {first_sybil_id + e.from, first_sybil_id + e.to});
  }
  return region;
}

std::vector<std::uint8_t> assign_resistance(std::size_t num_nodes,
                                            double nonresistant_fraction,
                                            std::uint64_t seed) {
  if (!(nonresistant_fraction >= 0.0 && nonresistant_fraction <= 1.0)) {
    throw ConfigError("nonresistant_fraction must lie in [0, 1]");
  }
  const auto zeros = static_cast<std::size_t>(std::floor(
      nonresistant_fraction * static_cast<double>(num_nodes) + 1e-9));
  std::vector<NodeId> ids(num_nodes);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  Rng rng(seed);
  std::vector<NodeId> picked =
      sample_without_replacement<NodeId>(ids, zeros, rng);
  std::vector<std::uint8_t> r(num_nodes, 1);
  for (NodeId v : picked) r[v] = 0;
  return r;
}

std::vector<double> derive_resistance_prob(std::span<const std::uint8_t> r,
                                           std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> p(r.size());
  for (std::size_t v = 0; v < r.size(); ++v) {
    p[v] = resistance_prob_from_draw(r[v], rng.uniform());
  }
  return p;
}

std::vector<std::size_t> target_attack_counts(
    const DirectedGraph& graph, const DualMap& dual,
    std::span<const NodeId> sybils, std::span<const NodeId> benign,
    std::span<const NodeId> dual_subset) {
  std::vector<std::uint8_t> outside = make_mask(graph.num_nodes(), benign);
  for (NodeId v : dual_subset) {
    if (v < outside.size()) outside[v] = 0;
  }
  std::vector<std::size_t> counts;
  counts.reserve(sybils.size());
  for (NodeId s : sybils) {
    const NodeId d = dual.dual(s);
    std::size_t count = 0;
    if (d != kNoNode && d < graph.num_nodes()) {
      for (NodeId w : graph.out_neighbors(d)) count += outside[w];
    }
    counts.push_back(count);
  }
  return counts;
}

std::size_t request_budget(double c, std::size_t target,
                           std::size_t num_benign) {
  const auto wanted = static_cast<std::size_t>(
      std::ceil(c * static_cast<double>(target) - 1e-9));
  return std::min(wanted, num_benign);
}

std::vector<double> modified_ba_from_counts(
    std::span<const std::size_t> from_benign,
    std::span<const std::size_t> from_sybil) {
  if (from_benign.empty()) {
    throw ConfigError("modified BA distribution needs a nonempty benign set");
  }
  double total_b = 0.0;
  double total_s = 0.0;
  for (std::size_t i = 0; i < from_benign.size(); ++i) {
    total_b += 1.0 + static_cast<double>(from_benign[i]);
    total_s += 1.0 + static_cast<double>(from_sybil[i]);
  }
  std::vector<double> p(from_benign.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = 0.5 * ((1.0 + static_cast<double>(from_benign[i])) / total_b +
                  (1.0 + static_cast<double>(from_sybil[i])) / total_s);
  }
  return p;
}

std::vector<double> modified_ba_probabilities(const DirectedGraph& current,
                                              std::span<const NodeId> benign,
                                              std::span<const NodeId> sybils) {
  std::vector<std::uint8_t> is_b = make_mask(current.num_nodes(), benign);
  std::vector<std::uint8_t> is_s = make_mask(current.num_nodes(), sybils);
  std::vector<std::size_t> from_b(benign.size(), 0);
  std::vector<std::size_t> from_s(benign.size(), 0);
  for (std::size_t i = 0; i < benign.size(); ++i) {
    for (NodeId u : current.in_neighbors(benign[i])) {
      from_b[i] += is_b[u];
      from_s[i] += is_s[u];
    }
  }
  return modified_ba_from_counts(from_b, from_s);
}

namespace {

// Sequential weighted sampling without replacement over indices 0..n-1.
// Draws from the full CDF and rejects taken indices; after a run of
// rejections the CDF is rebuilt over the remaining indices.
class WeightedDrawer {
 public:
  explicit WeightedDrawer(std::vector<double> weights)
      : weights_(std::move(weights)), taken_(weights_.size(), 0) {
    rebuild();
  }

  std::size_t draw(Rng& rng) {
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxRejections) {
        rebuild();
        attempt = 0;
      }
      const double target = rng.uniform() * total_;
      auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
      std::size_t pos = static_cast<std::size_t>(it - cdf_.begin());
      if (pos >= index_.size()) pos = index_.size() - 1;
      const std::size_t idx = index_[pos];
      if (!taken_[idx]) {
        taken_[idx] = 1;
        return idx;
      }
    }
  }

  // Marks an index as already used without drawing it.
  void take(std::size_t idx) { taken_[idx] = 1; }

 private:
  static constexpr int kMaxRejections = 32;

  void rebuild() {
    cdf_.clear();
    index_.clear();
    total_ = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if (taken_[i] || weights_[i] <= 0.0) continue;
      total_ += weights_[i];
      cdf_.push_back(total_);
      index_.push_back(i);
    }
    if (index_.empty()) {
      // Only zero-weight entries remain; fall back to uniform over them.
      for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (taken_[i]) continue;
        total_ += 1.0;
        cdf_.push_back(total_);
        index_.push_back(i);
      }
    }
  }

  std::vector<double> weights_;
  std::vector<std::uint8_t> taken_;
  std::vector<double> cdf_;
  std::vector<std::size_t> index_;
  double total_ = 0.0;
};

void check_inputs(const AttackInputs& in) {
  if (in.graph == nullptr) throw ConfigError("attack inputs need a graph");
  if (in.target_counts.size() != in.sybils.size()) {
    throw ConfigError("target_counts must align with sybils");
  }
  if (in.resistant.size() < in.graph->num_nodes()) {
    throw ConfigError("resistance must cover every graph node");
  }
}

// Shared request loop. `next_target(i, j, rng)` returns the position in
// in.benign of the j-th request from sybil i; `on_accept(pos)` observes each
// accepted request.
template <typename Begin, typename Next, typename Accept>
AttackEdges run_requests(const AttackInputs& in, Begin begin_sybil,
                         Next next_target, Accept on_accept) {
  check_inputs(in);
  Rng rng(in.seed);
  AttackEdges out;
  out.requests_sent.resize(in.sybils.size(), 0);
  out.request_targets.resize(in.sybils.size());
  for (std::size_t i = 0; i < in.sybils.size(); ++i) {
    const std::size_t wanted = static_cast<std::size_t>(
        std::ceil(in.c * static_cast<double>(in.target_counts[i]) - 1e-9));
    const std::size_t budget =
        request_budget(in.c, in.target_counts[i], in.benign.size());
    if (budget < wanted) {
      ++out.capped_budgets;
      spdlog::debug("sybil {} request budget {} capped at |B| = {}",
                    in.sybils[i], wanted, in.benign.size());
    }
    begin_sybil(i);
    const NodeId s = in.sybils[i];
    out.request_targets[i].reserve(budget);
    for (std::size_t j = 0; j < budget; ++j) {
      const std::size_t pos = next_target(i, j, rng);
      const NodeId u = in.benign[pos];
      out.request_targets[i].push_back(u);
      if (in.resistant[u] == 0) {
        out.attack_edges.push_back({s, u});
        on_accept(pos);
        if (rng.bernoulli(in.reverse_prob)) {
          out.reverse_edges.push_back({u, s});
        }
      }
    }
    out.requests_sent[i] = budget;
  }
  if (out.capped_budgets > 0) {
    spdlog::warn("{} sybil request budgets were capped at |B| = {}",
                 out.capped_budgets, in.benign.size());
  }
  return out;
}

std::vector<std::size_t> in_degree_from(const DirectedGraph& graph,
                                        std::span<const NodeId> targets,
                                        std::span<const NodeId> sources) {
  std::vector<std::uint8_t> mask = make_mask(graph.num_nodes(), sources);
  std::vector<std::size_t> counts(targets.size(), 0);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (NodeId u : graph.in_neighbors(targets[i])) counts[i] += mask[u];
  }
  return counts;
}

}  // namespace

AttackEdges attack_random(const AttackInputs& in) {
  // Positions [j, |B|) of `pool` hold the not-yet-requested benign positions
  // of the current sybil; any arrangement of the pool gives a uniform draw.
  std::vector<std::size_t> pool(in.benign.size());
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  return run_requests(
      in, [](std::size_t) {},
      [&](std::size_t, std::size_t j, Rng& rng) {
        const std::size_t k = j + rng.below(pool.size() - j);
        std::swap(pool[j], pool[k]);
        return pool[j];
      },
      [](std::size_t) {});
}

AttackEdges attack_preferential(const AttackInputs& in) {
  check_inputs(in);
  const std::vector<std::size_t> from_b =
      in_degree_from(*in.graph, in.benign, in.benign);
  std::vector<std::size_t> from_s =
      in_degree_from(*in.graph, in.benign, in.sybils);
  std::optional<WeightedDrawer> drawer;
  return run_requests(
      in,
      [&](std::size_t) {
        drawer.emplace(modified_ba_from_counts(from_b, from_s));
      },
      [&](std::size_t, std::size_t, Rng& rng) { return drawer->draw(rng); },
      [&](std::size_t pos) { ++from_s[pos]; });
}

AttackEdges attack_bfs(const AttackInputs& in) {
  check_inputs(in);
  if (in.dual == nullptr) throw ConfigError("BFS attack needs a dual map");
  const DirectedGraph& g = *in.graph;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> position(g.num_nodes(), kNone);
  for (std::size_t i = 0; i < in.benign.size(); ++i) {
    position[in.benign[i]] = i;
  }
  const std::vector<std::size_t> from_b =
      in_degree_from(g, in.benign, in.benign);
  std::vector<std::size_t> from_s = in_degree_from(g, in.benign, in.sybils);

  // Lazy BFS state for the current sybil. Stamps avoid clearing per sybil.
  std::vector<std::uint32_t> seen(g.num_nodes(), 0);
  std::uint32_t stamp = 0;
  std::vector<NodeId> queue;
  std::size_t head = 0;
  std::optional<WeightedDrawer> drawer;

  auto next_from_stream = [&]() -> std::size_t {
    while (head < queue.size()) {
      const NodeId v = queue[head++];
      for (NodeId w : g.undirected_neighbors(v)) {
        if (position[w] != kNone && seen[w] != stamp) {
          seen[w] = stamp;
          queue.push_back(w);
        }
      }
      // The root is the dual itself and is never a target.
      if (head > 1) return position[v];
    }
    return kNone;
  };

  return run_requests(
      in,
      [&](std::size_t i) {
        ++stamp;
        queue.clear();
        head = 0;
        const NodeId root = in.dual->dual(in.sybils[i]);
        if (root != kNoNode && root < g.num_nodes() &&
            position[root] != kNone) {
          queue.push_back(root);
          seen[root] = stamp;
        }
        drawer.emplace(modified_ba_from_counts(from_b, from_s));
      },
      [&](std::size_t, std::size_t, Rng& rng) {
        const std::size_t pos = next_from_stream();
        if (pos != kNone) {
          drawer->take(pos);
          return pos;
        }
        return drawer->draw(rng);
      },
      [&](std::size_t pos) { ++from_s[pos]; });
}

AttackOutcome synthesize_attack(const DirectedGraph& benign_graph,
                                const AttackConfig& config) {
  config.validate();
  const std::size_t n = benign_graph.num_nodes();
  std::vector<NodeId> benign(n);
  std::iota(benign.begin(), benign.end(), NodeId{0});

  AttackOutcome out;
  out.config = config;
  out.dual_subset =
      select_dual_subset(benign_graph, benign, config.sybil_fraction,
                         derive_seed(config.seed, Stream::kDualSubset));
  SybilRegion region = build_sybil_region(benign_graph, out.dual_subset,
                                          static_cast<NodeId>(n));
  out.sybils = region.sybils;
  out.dual = region.dual;
  out.sybil_internal_edges = region.internal_edges;
  const std::size_t total = n + out.sybils.size();

  std::vector<Edge> edges = benign_graph.edges();
  edges.insert(edges.end(), region.internal_edges.begin(),
               region.internal_edges.end());
  const DirectedGraph pre_attack = DirectedGraph::FromEdges(total, edges);

  out.resistance.resistant =
      assign_resistance(total, config.nonresistant_fraction,
                        derive_seed(config.seed, Stream::kResistance));
  out.resistance.probability = derive_resistance_prob(
      out.resistance.resistant,
      derive_seed(config.seed, Stream::kResistanceProb));
  out.target_counts = target_attack_counts(benign_graph, out.dual, out.sybils,
                                           benign, out.dual_subset);

  AttackInputs inputs;
  inputs.graph = &pre_attack;
  inputs.benign = benign;
  inputs.sybils = out.sybils;
  inputs.target_counts = out.target_counts;
  inputs.resistant = out.resistance.resistant;
  inputs.dual = &out.dual;
  inputs.c = config.c;
  inputs.reverse_prob = config.reverse_prob;
  inputs.seed = derive_seed(config.seed, Stream::kAttack);

  AttackEdges attack;
  switch (config.strategy) {
    case AttackStrategy::kRandom:
      attack = attack_random(inputs);
      break;
    case AttackStrategy::kPreferential:
      attack = attack_preferential(inputs);
      break;
    case AttackStrategy::kBfs:
      attack = attack_bfs(inputs);
      break;
  }
  out.attack_edges = std::move(attack.attack_edges);
  out.reverse_edges = std::move(attack.reverse_edges);
  out.requests_sent = std::move(attack.requests_sent);

  edges.insert(edges.end(), out.attack_edges.begin(), out.attack_edges.end());
  edges.insert(edges.end(), out.reverse_edges.begin(),
               out.reverse_edges.end());
  out.graph = DirectedGraph::FromEdges(total, edges);
  out.truth = LabelPartition::Create(total, benign, out.sybils);
  return out;
}

}  // namespace sybilbench
