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


#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sybilbench/discovery.hpp"

namespace sybilbench {
namespace {

using testing::ChainFanFixture;
using testing::make_graph;

TEST(Discovery, EmptyRevealSet) {
  ChainFanFixture fx;
  std::vector<std::uint8_t> r(6, 1);
  EXPECT_TRUE(discover_benigns(fx.graph, fx.labels, {}, r).discovered.empty());
}

TEST(Discovery, SingleHop) {
  DirectedGraph g = make_graph(2, {{0, 1}});
  LabelPartition l(2);
  l.set(1, Label::kBenign);
  std::vector<NodeId> a{1};
  std::vector<std::uint8_t> r{0, 1};
  DiscoveryResult d = discover_benigns(g, l, a, r);
  EXPECT_EQ(d.discovered, (std::vector<NodeId>{0}));
  EXPECT_EQ(d.witnesses[0].nodes, (std::vector<NodeId>{0, 1}));
  r[1] = 0;
  EXPECT_TRUE(discover_benigns(g, l, a, r).discovered.empty());
}

TEST(Discovery, ChainThroughRevealedResistantNodes) {
  ChainFanFixture fx;
  std::vector<NodeId> a{0, 1};
  std::vector<std::uint8_t> r(6, 1);
  DiscoveryResult d = discover_benigns(fx.graph, fx.labels, a, r);
  EXPECT_EQ(d.discovered, (std::vector<NodeId>{1, 2}));
  EXPECT_EQ(d.witnesses[1].nodes, (std::vector<NodeId>{2, 1, 0}));
}

TEST(Discovery, SybilsNeitherDiscoveredNorRelayed) {
  // 3 -> 2 -> 0 with 2 a sybil that is (wrongly) in the reveal set.
  DirectedGraph g = make_graph(4, {{2, 0}, {3, 2}, {1, 0}});
  LabelPartition l(4);
  l.set(0, Label::kBenign);
  l.set(2, Label::kSybil);
  std::vector<NodeId> a{0, 2};
  std::vector<std::uint8_t> r(4, 1);
  EXPECT_EQ(discover_benigns(g, l, a, r).discovered, (std::vector<NodeId>{1}));
}

TEST(Discovery, BenignRelaysWithoutBeingCounted) {
  // 2 -> 1 -> 0, both 0 and 1 benign.
  DirectedGraph g = make_graph(3, {{1, 0}, {2, 1}});
  LabelPartition l(3);
  l.set(0, Label::kBenign);
  l.set(1, Label::kBenign);
  std::vector<NodeId> a{0};
  std::vector<std::uint8_t> r(3, 1);
  EXPECT_TRUE(discover_benigns(g, l, a, r).discovered.empty());
  std::vector<NodeId> a1{1};
  EXPECT_EQ(discover_benigns(g, l, a1, r).discovered, (std::vector<NodeId>{2}));
}

TEST(Discovery, FuzzAgainstPathOracle) {
  Rng rng(21);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 2 + rng.below(14);
    DirectedGraph g = testing::random_graph(n, rng.uniform() * 0.35, rng);
    LabelPartition l = testing::random_labels(n, 0.25, 0.15, rng);
    std::vector<NodeId> a;
    std::vector<std::uint8_t> r(n, 0);
    for (NodeId v = 0; v < n; ++v) {
      if (rng.bernoulli(0.5)) a.push_back(v);
      r[v] = rng.bernoulli(0.7);
    }
    DiscoveryResult d = discover_benigns(g, l, a, r);
    ASSERT_EQ(d.discovered, testing::oracle_discovered(g, l, a, r));
    ASSERT_EQ(d.witnesses.size(), d.discovered.size());
    for (std::size_t i = 0; i < d.discovered.size(); ++i) {
      ASSERT_TRUE(testing::witness_ok(g, l, a, r, d.discovered[i],
                                      d.witnesses[i].nodes));
      ASSERT_TRUE(is_path(g, d.witnesses[i]));
    }
  }
}

TEST(Discovery, EngineReuseMatchesFreshRuns) {
  Rng rng(22);
  DirectedGraph g = testing::random_graph(30, 0.1, rng);
  LabelPartition l = testing::random_labels(30, 0.3, 0.1, rng);
  DiscoveryEngine engine(g, l);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<NodeId> a = testing::random_subset(30, rng.below(12), rng);
    std::vector<std::uint8_t> r(30);
    for (auto& x : r) x = rng.bernoulli(0.6);
    const DiscoveryResult fresh = discover_benigns(g, l, a, r);
    EXPECT_EQ(engine.count(a, r), fresh.discovered.size());
    EXPECT_EQ(engine.discover(a, r).discovered, fresh.discovered);
  }
}

TEST(RevealOracle, MemoizesAnswers) {
  RevealOracle oracle({1, 0, 1});
  EXPECT_FALSE(oracle.is_revealed(1));
  EXPECT_FALSE(oracle.query(1));
  EXPECT_TRUE(oracle.query(0));
  EXPECT_FALSE(oracle.query(1));
  EXPECT_TRUE(oracle.is_revealed(1));
  EXPECT_EQ(oracle.revealed(), (std::vector<NodeId>{1, 0}));
}

}  // namespace
}  // namespace sybilbench
