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


#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include <benchmark/benchmark.h>

#include "sybilbench/attack.hpp"
#include "sybilbench/detectors.hpp"
#include "sybilbench/discovery.hpp"
#include "sybilbench/eval.hpp"
#include "sybilbench/mb.hpp"
#include "sybilbench/pae.hpp"
#include "sybilbench/rng.hpp"
#include "sybilbench/selection.hpp"
#include "sybilbench/traversing.hpp"

namespace sybilbench {
namespace {

// One attacked instance per benign-graph size, reused across benchmarks.
const Instance& instance(std::size_t num_nodes) {
  static std::map<std::size_t, Instance> cache;
  auto it = cache.find(num_nodes);
  if (it == cache.end()) {
    CommunityGraphParams gp;
    gp.num_nodes = num_nodes;
    gp.communities = std::max<std::size_t>(1, num_nodes / 100);
    it = cache.emplace(num_nodes,
                       make_instance(generate_community_graph(gp), AttackConfig{},
                                     0.02, 1))
             .first;
  }
  return it->second;
}

void BM_Traversing(benchmark::State& state) {
  const Instance& inst = instance(static_cast<std::size_t>(state.range(0)));
  const auto& g = inst.outcome.graph;
  const auto k = default_budget(inst.outcome.graph.num_nodes());
  for (auto _ : state) {
    RevealOracle oracle(inst.outcome.resistance.resistant);
    TraversingResult r = traversing(g, inst.known, k, inst.outcome.resistance.probability,
                                    oracle);
    benchmark::DoNotOptimize(r.discovered_after.data());
  }
}
BENCHMARK(BM_Traversing)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_DiscoveryCount(benchmark::State& state) {
  const Instance& inst = instance(2000);
  DiscoveryEngine engine(inst.outcome.graph, inst.known);
  std::vector<NodeId> reveal = inst.known.benign();
  reveal.resize(std::min<std::size_t>(reveal.size(), 20));
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.count(reveal, inst.outcome.resistance.resistant));
  }
}
BENCHMARK(BM_DiscoveryCount);

void BM_EstimateF(benchmark::State& state) {
  const Instance& inst = instance(2000);
  std::vector<NodeId> reveal = inst.known.benign();
  reveal.resize(std::min<std::size_t>(reveal.size(), 10));
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_f(inst.outcome.graph, inst.known, reveal,
                                        inst.outcome.resistance.probability, trials, 7));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateF)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

std::vector<ScoredNode> random_scores(std::size_t n) {
  Rng rng(5);
  std::vector<ScoredNode> items(n);
  for (std::size_t i = 0; i < n; ++i) {
    items[i] = {static_cast<NodeId>(i), static_cast<double>(rng.below(1000))};
  }
  return items;
}

void BM_MomSelect(benchmark::State& state) {
  const auto base = random_scores(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto items = base;
    mom_select(items, items.size() / 100);
    benchmark::DoNotOptimize(items.data());
  }
}
BENCHMARK(BM_MomSelect)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

void BM_SortSelect(benchmark::State& state) {
  const auto base = random_scores(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto items = base;
    std::sort(items.begin(), items.end(), ranks_before);
    benchmark::DoNotOptimize(items.data());
  }
}
BENCHMARK(BM_SortSelect)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

void BM_PaeSelect(benchmark::State& state) {
  const Instance& inst = instance(static_cast<std::size_t>(state.range(0)));
  const auto k = default_budget(inst.outcome.graph.num_nodes());
  for (auto _ : state) {
    benchmark::DoNotOptimize(pae_select_top_k(inst.outcome.graph, inst.known,
                                              inst.outcome.resistance.probability, k));
  }
}
BENCHMARK(BM_PaeSelect)->Arg(2000)->Arg(10000);

void BM_Detector(benchmark::State& state) {
  const Instance& inst = instance(2000);
  const auto kind = static_cast<DetectorKind>(state.range(0));
  DetectorConfig config;
  for (auto _ : state) {
    ScoreVector s = run_detector(kind, inst.outcome.graph, {}, inst.split, config, 1);
    benchmark::DoNotOptimize(s.scores.data());
  }
  state.SetLabel(to_string(kind));
}
BENCHMARK(BM_Detector)
    ->Arg(static_cast<int>(DetectorKind::kSybilScar))
    ->Arg(static_cast<int>(DetectorKind::kSybilWalk))
    ->Arg(static_cast<int>(DetectorKind::kSybilMetric))
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sybilbench

BENCHMARK_MAIN();
