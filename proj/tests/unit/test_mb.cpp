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
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sybilbench/errors.hpp"
#include "sybilbench/mb.hpp"

namespace sybilbench {
namespace {

using testing::ChainFanFixture;
using testing::make_graph;

struct SmallInstance {
  DirectedGraph graph;
  LabelPartition labels;
  std::vector<double> p_r;
};

SmallInstance random_instance(std::size_t n, Rng& rng) {
  SmallInstance s;
  s.graph = testing::random_graph(n, 0.15 + 0.2 * rng.uniform(), rng);
  s.labels = testing::random_labels(n, 0.3, 0.1, rng);
  s.p_r.resize(n);
  for (auto& p : s.p_r) p = rng.uniform();
  return s;
}

std::vector<NodeId> non_sybil(const LabelPartition& l) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < l.num_nodes(); ++v) {
    if (!l.is_sybil(v)) out.push_back(v);
  }
  return out;
}

TEST(ExactF, ChainFanValues) {
  ChainFanFixture fx;
  auto f = [&](std::vector<NodeId> a) {
    return exact_f(fx.graph, fx.labels, a, fx.p_r);
  };
  EXPECT_NEAR(f({0}), 0.5, 1e-12);
  EXPECT_NEAR(f({0, 2}), 0.5, 1e-12);
  EXPECT_NEAR(f({0, 1}), 0.75, 1e-12);
  EXPECT_NEAR(f({0, 1, 2}), 0.75 + 3.0 / 8.0, 1e-12);
  EXPECT_EQ(f({}), 0.0);
}

TEST(ExactF, NotSubmodularOnChainFan) {
  ChainFanFixture fx;
  auto f = [&](std::vector<NodeId> a) {
    return exact_f(fx.graph, fx.labels, a, fx.p_r);
  };
  const double gain_small = f({0, 2}) - f({0});
  const double gain_large = f({0, 1, 2}) - f({0, 1});
  EXPECT_EQ(gain_small, 0.0);
  EXPECT_EQ(gain_large, (6.0 - 3.0) / 8.0);
}

TEST(ExactF, RefusesLargeSets) {
  DirectedGraph g = DirectedGraph::FromEdges(25, {});
  LabelPartition l(25);
  std::vector<double> p(25, 0.5);
  std::vector<NodeId> a(21);
  std::iota(a.begin(), a.end(), NodeId{0});
  EXPECT_THROW(exact_f(g, l, a, p), RefusedError);
  a.pop_back();
  EXPECT_NO_THROW(exact_f(g, l, a, p));
}

TEST(ExactF, MatchesEnumerationOracle) {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    SmallInstance s = random_instance(3 + rng.below(8), rng);
    std::vector<NodeId> pool = non_sybil(s.labels);
    std::vector<NodeId> a = sample_without_replacement<NodeId>(
        pool, rng.below(std::min<std::size_t>(pool.size(), 7) + 1), rng);
    EXPECT_NEAR(exact_f(s.graph, s.labels, a, s.p_r),
                testing::brute_force_f(s.graph, s.labels, a, s.p_r), 1e-12);
  }
}

TEST(ExactF, MonotoneUnderInclusion) {
  Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    SmallInstance s = random_instance(4 + rng.below(7), rng);
    std::vector<NodeId> pool = non_sybil(s.labels);
    std::vector<NodeId> big = sample_without_replacement<NodeId>(
        pool, std::min<std::size_t>(pool.size(), 6), rng);
    std::vector<NodeId> small(big.begin(),
                              big.begin() + static_cast<long>(rng.below(big.size() + 1)));
    EXPECT_LE(exact_f(s.graph, s.labels, small, s.p_r),
              exact_f(s.graph, s.labels, big, s.p_r) + 1e-12);
  }
}

TEST(Hoeffding, FormulaAndCap) {
  const double expected = std::ceil(2.0 * 2 * 3 * 3 * std::log(1.0 / 0.05) /
                                    (2 * 0.05 * 0.05));
  EXPECT_EQ(hoeffding_iterations(2, 3, 0.05, 0.95),
            static_cast<std::uint64_t>(expected));
  EXPECT_EQ(hoeffding_iterations(0, 3, 0.05, 0.95), 1U);
  EstimatorParams p;
  p.max_iterations = 1000;
  EXPECT_EQ(resolve_iterations(p, 50, 100), 1000U);
  p.iterations = 7;
  EXPECT_EQ(resolve_iterations(p, 50, 100), 7U);
  p.iterations = 0;
  EXPECT_THROW(p.validate(), ConfigError);
  EstimatorParams bad;
  bad.alpha = 1.0;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(Estimator, DegenerateProbabilities) {
  ChainFanFixture fx;
  std::vector<NodeId> a{0, 1, 2};
  std::vector<double> ones(6, 1.0), zeros(6, 0.0);
  EXPECT_EQ(estimate_f(fx.graph, fx.labels, a, ones, 100, 1), 5.0);
  EXPECT_EQ(estimate_f(fx.graph, fx.labels, a, zeros, 100, 1), 0.0);
}

TEST(Estimator, DeterministicAndThreadInvariant) {
  ChainFanFixture fx;
  std::vector<NodeId> a{0, 1, 2};
  const double x = estimate_f(fx.graph, fx.labels, a, fx.p_r, 5000, 9);
  EXPECT_EQ(x, estimate_f(fx.graph, fx.labels, a, fx.p_r, 5000, 9));
  EXPECT_EQ(x, estimate_f(fx.graph, fx.labels, a, fx.p_r, 5000, 9, 3));
}

TEST(Estimator, ConcentratesOnChainFan) {
  ChainFanFixture fx;
  std::vector<NodeId> a{0, 1};
  EstimatorParams params;
  const std::uint64_t r =
      resolve_iterations(params, a.size(), fx.graph.max_in_degree());
  int within = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const double est = estimate_f(fx.graph, fx.labels, a, fx.p_r, r, seed);
    within += std::abs(est - 0.75) <= 0.05;
  }
  EXPECT_GE(within, 190);
}

TEST(McGreedy, StarPicksCenter) {
  DirectedGraph g = make_graph(7, {{1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}});
  LabelPartition l(7);
  l.set(0, Label::kBenign);
  l.set(6, Label::kBenign);
  std::vector<double> p(7, 1.0);
  RevealSet a = mc_greedy(g, l, 1, p, {}, 1);
  EXPECT_EQ(a.nodes, (std::vector<NodeId>{0}));
  EXPECT_TRUE(mc_greedy(g, l, 0, p, {}, 1).nodes.empty());
}

TEST(McGreedy, EachStepWithinToleranceOfExactArgmax) {
  Rng rng(33);
  EstimatorParams params;
  for (int trial = 0; trial < 10; ++trial) {
    SmallInstance s = random_instance(10, rng);
    if (s.labels.benign().empty()) continue;
    RevealSet a = mc_greedy(s.graph, s.labels, 2, s.p_r, params, trial + 1);
    ASSERT_LE(a.nodes.size(), 2U);
    std::vector<NodeId> prefix;
    for (NodeId chosen : a.nodes) {
      std::vector<NodeId> with = prefix;
      with.push_back(chosen);
      const double got = exact_f(s.graph, s.labels, with, s.p_r);
      for (NodeId w : non_sybil(s.labels)) {
        if (std::count(with.begin(), with.end(), w)) continue;
        std::vector<NodeId> alt = prefix;
        alt.push_back(w);
        EXPECT_GE(got, exact_f(s.graph, s.labels, alt, s.p_r) - 2 * params.epsilon);
      }
      prefix = with;
    }
  }
}

TEST(McGreedy, LiteralCandidatesScoreEveryNode) {
  // Unknown node 1 is unreachable, so only literal mode ever picks it.
  DirectedGraph g = make_graph(3, {{0, 2}});
  LabelPartition l(3);
  l.set(2, Label::kBenign);
  std::vector<double> p(3, 1.0);
  GreedyOptions literal;
  literal.literal_candidates = true;
  RevealSet restricted = mc_greedy(g, l, 3, p, {}, 1);
  RevealSet full = mc_greedy(g, l, 3, p, {}, 1, literal);
  EXPECT_EQ(restricted.nodes, (std::vector<NodeId>{2, 0}));
  EXPECT_EQ(full.nodes.size(), 3U);
  EXPECT_EQ(full.nodes.front(), 2U);
}

TEST(McGreedyAware, AllResistantMatchesPlainGreedy) {
  Rng rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    SmallInstance s = random_instance(12, rng);
    std::vector<double> ones(12, 1.0);
    RevealOracle oracle(std::vector<std::uint8_t>(12, 1));
    RevealSet plain = mc_greedy(s.graph, s.labels, 3, ones, {}, 5);
    RevealSet aware =
        mc_greedy_resistance_aware(s.graph, s.labels, 3, ones, {}, oracle, 5);
    EXPECT_EQ(plain.nodes, aware.nodes);
  }
}

TEST(McGreedyAware, AllNonResistantRanksSingletons) {
  Rng rng(35);
  for (int trial = 0; trial < 10; ++trial) {
    SmallInstance s = random_instance(12, rng);
    std::vector<double> ones(12, 1.0);
    RevealOracle oracle(std::vector<std::uint8_t>(12, 0));
    RevealSet aware =
        mc_greedy_resistance_aware(s.graph, s.labels, 3, ones, {}, oracle, 5);
    std::vector<NodeId> b = s.labels.benign();
    std::vector<double> single(12, 0.0);
    for (NodeId v : b) {
      single[v] = static_cast<double>(unlabeled_in_degree(s.graph, s.labels, v));
    }
    EXPECT_EQ(aware.nodes, top_k_by_score(b, single, 3));
  }
}

TEST(McGreedyAware, ExtendsChainAfterResistantReveal) {
  // b=0 has in-neighbors 1 (c1), 4, 5; b2=6 has in-neighbor 7.
  // c1 has in-neighbors 2 and 3.
  DirectedGraph g = make_graph(
      8, {{1, 0}, {4, 0}, {5, 0}, {7, 6}, {2, 1}, {3, 1}});
  LabelPartition l(8);
  l.set(0, Label::kBenign);
  l.set(6, Label::kBenign);
  std::vector<double> ones(8, 1.0);
  RevealOracle oracle(std::vector<std::uint8_t>(8, 1));
  RevealSet a = mc_greedy_resistance_aware(g, l, 2, ones, {}, oracle, 1);
  EXPECT_EQ(a.nodes, (std::vector<NodeId>{0, 1}));
  EXPECT_EQ(oracle.revealed(), (std::vector<NodeId>{0, 1}));
}

TEST(Baselines, RandomClampAndEdges) {
  std::vector<NodeId> b{3, 5, 8, 9};
  RevealSet all = baseline_random(b, 10, 1);
  std::vector<NodeId> sorted = all.nodes;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, b);
  EXPECT_TRUE(baseline_random(b, 0, 1).nodes.empty());
}

TEST(Baselines, RandomIsUniform) {
  std::vector<NodeId> b(10);
  std::iota(b.begin(), b.end(), NodeId{0});
  std::vector<double> count(10, 0.0);
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    for (NodeId v : baseline_random(b, 3, seed).nodes) count[v] += 1.0;
  }
  double chi2 = 0;
  for (double c : count) chi2 += (c - 3000.0) * (c - 3000.0) / 3000.0;
  // 99th percentile of chi-square with 9 degrees of freedom.
  EXPECT_LT(chi2, 21.666);
}

TEST(Baselines, HighestResistance) {
  std::vector<NodeId> b{0, 1, 2, 3};
  std::vector<double> p{0.1, 0.9, 0.5, 0.7};
  EXPECT_EQ(baseline_highest_resistance(b, p, 2).nodes,
            (std::vector<NodeId>{1, 3}));
  std::vector<double> flat(4, 0.3);
  EXPECT_EQ(baseline_highest_resistance(b, flat, 3).nodes,
            (std::vector<NodeId>{0, 1, 2}));
  EXPECT_EQ(baseline_highest_resistance(b, flat, 9).nodes.size(), 4U);
}

TEST(Baselines, TopKMatchesFullSort) {
  Rng rng(36);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(40);
    std::vector<double> p(n);
    for (auto& x : p) x = static_cast<double>(rng.below(5)) / 4.0;
    std::vector<NodeId> b = testing::random_subset(n, 1 + rng.below(n), rng);
    const std::size_t k = rng.below(b.size() + 1);
    std::vector<NodeId> sorted = b;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](NodeId x, NodeId y) { return p[x] > p[y]; });
    sorted.resize(k);
    EXPECT_EQ(baseline_highest_resistance(b, p, k).nodes, sorted);
  }
}

TEST(Baselines, ResistanceDegree) {
  // 1 and 2 unknown -> 0; 3 unknown -> 4; 0, 4 benign; 5 sybil -> 4.
  DirectedGraph g = make_graph(6, {{1, 0}, {2, 0}, {3, 4}, {5, 4}});
  LabelPartition l(6);
  l.set(0, Label::kBenign);
  l.set(4, Label::kBenign);
  l.set(5, Label::kSybil);
  std::vector<double> p{0.4, 0, 0, 0, 0.9, 0};
  EXPECT_EQ(baseline_resistance_degree(g, l, p, 2).nodes,
            (std::vector<NodeId>{4, 0}));
  EXPECT_EQ(unlabeled_in_degree(g, l, 4), 1U);

  LabelPartition lone(6);
  lone.set(2, Label::kBenign);
  EXPECT_EQ(baseline_resistance_degree(g, lone, p, 1).nodes,
            (std::vector<NodeId>{2}));
}

TEST(Baselines, ResistanceDegreeMatchesFullSort) {
  Rng rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    SmallInstance s = random_instance(20, rng);
    std::vector<NodeId> b = s.labels.benign();
    std::vector<double> score(20, 0.0);
    for (NodeId v : b) {
      std::size_t d = 0;
      for (NodeId u : s.graph.in_neighbors(v)) d += !s.labels.is_known(u);
      score[v] = s.p_r[v] * static_cast<double>(d);
    }
    std::vector<NodeId> sorted = b;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](NodeId x, NodeId y) { return score[x] > score[y]; });
    const std::size_t k = rng.below(b.size() + 1);
    sorted.resize(k);
    EXPECT_EQ(baseline_resistance_degree(s.graph, s.labels, s.p_r, k).nodes,
              sorted);
  }
}

}  // namespace
}  // namespace sybilbench
