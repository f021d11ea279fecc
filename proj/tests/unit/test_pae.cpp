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
#include <numeric>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sybilbench/attack.hpp"
#include "sybilbench/errors.hpp"
#include "sybilbench/pae.hpp"
#include "sybilbench/selection.hpp"

namespace sybilbench {
namespace {

using testing::make_graph;

struct PaeInstance {
  DirectedGraph graph;
  LabelPartition labels;
  std::vector<double> p_r;
};

PaeInstance random_pae_instance(std::size_t num_benign, std::size_t extra,
                                Rng& rng, bool coarse_p = false) {
  const std::size_t n = num_benign + extra;
  PaeInstance s;
  s.graph = testing::random_graph(n, 0.25, rng);
  s.labels = LabelPartition(n);
  for (NodeId v = 0; v < num_benign; ++v) s.labels.set(v, Label::kBenign);
  for (NodeId v = static_cast<NodeId>(num_benign); v < n; ++v) {
    if (rng.bernoulli(0.2)) s.labels.set(v, Label::kSybil);
  }
  s.p_r.resize(n);
  for (auto& p : s.p_r) {
    p = coarse_p ? static_cast<double>(rng.below(3)) / 2.0 : rng.uniform();
  }
  return s;
}

// Best pae_expected_value over all k-subsets of `pool`.
double brute_best(const PaeInstance& s, const std::vector<NodeId>& pool,
                  std::size_t k) {
  double best = 0.0;
  std::vector<NodeId> pick;
  std::vector<std::uint8_t> sel(pool.size(), 0);
  std::fill(sel.begin(), sel.begin() + static_cast<long>(k), 1);
  std::sort(sel.begin(), sel.end());
  do {
    pick.clear();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (sel[i]) pick.push_back(pool[i]);
    }
    best = std::max(best,
                    pae_expected_value(s.graph, s.labels, s.p_r, pick));
  } while (std::next_permutation(sel.begin(), sel.end()));
  return best;
}

TEST(PaeSelect, AllResistantGivesLowestIds) {
  Rng rng(51);
  PaeInstance s = random_pae_instance(10, 5, rng);
  std::fill(s.p_r.begin(), s.p_r.end(), 1.0);
  EXPECT_EQ(pae_select_top_k(s.graph, s.labels, s.p_r, 3),
            (std::vector<NodeId>{0, 1, 2}));
}

TEST(PaeSelect, SingleValuedNode) {
  // Benign 2 has 5 unknown in-neighbors and p_r = 0.
  DirectedGraph g = make_graph(8, {{3, 2}, {4, 2}, {5, 2}, {6, 2}, {7, 2}});
  LabelPartition l(8);
  for (NodeId v : {0, 1, 2}) l.set(v, Label::kBenign);
  std::vector<double> p(8, 0.0);
  EXPECT_EQ(pae_value(g, l, p, 2), 5.0);
  EXPECT_EQ(pae_select_top_k(g, l, p, 1), (std::vector<NodeId>{2}));
  EXPECT_EQ(pae_select_top_k(g, l, p, 10).size(), 3U);
}

TEST(PaeSelect, MatchesFullSortAndExhaustiveOptimum) {
  Rng rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    PaeInstance s = random_pae_instance(12, 8, rng, trial % 2 == 0);
    std::vector<NodeId> chosen = pae_select_top_k(s.graph, s.labels, s.p_r, 3);
    std::vector<NodeId> order = s.labels.benign();
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
      return pae_value(s.graph, s.labels, s.p_r, a) >
             pae_value(s.graph, s.labels, s.p_r, b);
    });
    order.resize(3);
    EXPECT_EQ(chosen, order);
    EXPECT_EQ(pae_expected_value(s.graph, s.labels, s.p_r, chosen),
              brute_best(s, s.labels.benign(), 3));
  }
}

TEST(PaeSelect, ExcludeMaskAndLiteralMode) {
  DirectedGraph g = make_graph(5, {{2, 0}, {3, 0}, {1, 0}, {4, 1}});
  LabelPartition l(5);
  l.set(0, Label::kBenign);
  l.set(1, Label::kBenign);
  l.set(4, Label::kSybil);
  EXPECT_EQ(pae_exposure(g, l, 0, PaeMode::kUnion), 2U);
  EXPECT_EQ(pae_exposure(g, l, 0, PaeMode::kLiteral), 3U);
  EXPECT_EQ(pae_exposure(g, l, 1, PaeMode::kUnion), 0U);
  std::vector<double> p(5, 0.0);
  std::vector<std::uint8_t> exclude{1, 0, 0, 0, 0};
  EXPECT_EQ(pae_select_top_k(g, l, p, 1, PaeMode::kUnion, exclude),
            (std::vector<NodeId>{1}));
  EXPECT_EQ(parse_pae_mode(to_string(PaeMode::kLiteral)), PaeMode::kLiteral);
  EXPECT_THROW(parse_pae_mode("intersection"), ConfigError);
}

TEST(PaeSelect, PermutationInvariantUpToTies) {
  Rng rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    PaeInstance s = random_pae_instance(14, 10, rng);
    const std::size_t n = s.graph.num_nodes();
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    std::vector<NodeId> shuffled =
        sample_without_replacement<NodeId>(perm, n, rng);
    std::vector<Edge> edges;
    for (const Edge& e : s.graph.edges()) {
      edges.push_back({shuffled[e.from], shuffled[e.to]});
    }
    PaeInstance t;
    t.graph = DirectedGraph::FromEdges(n, edges);
    t.labels = LabelPartition(n);
    t.p_r.resize(n);
    for (NodeId v = 0; v < n; ++v) {
      t.labels.set(shuffled[v], s.labels.label(v));
      t.p_r[shuffled[v]] = s.p_r[v];
    }
    std::vector<double> a, b;
    for (NodeId v : pae_select_top_k(s.graph, s.labels, s.p_r, 4)) {
      a.push_back(pae_value(s.graph, s.labels, s.p_r, v));
    }
    for (NodeId v : pae_select_top_k(t.graph, t.labels, t.p_r, 4)) {
      b.push_back(pae_value(t.graph, t.labels, t.p_r, v));
    }
    EXPECT_EQ(a, b);
  }
}

TEST(Selection, MomSelectAgreesWithSort) {
  Rng rng(54);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.below(300);
    std::vector<ScoredNode> items(n);
    for (NodeId i = 0; i < n; ++i) {
      items[i] = {i, static_cast<double>(rng.below(10))};
    }
    std::vector<ScoredNode> shuffled = sample_without_replacement<ScoredNode>(
        items, n, rng);
    std::vector<ScoredNode> sorted = shuffled;
    std::sort(sorted.begin(), sorted.end(), ranks_before);
    const std::size_t nth = rng.below(n);
    std::vector<ScoredNode> work = shuffled;
    mom_select(work, nth);
    ASSERT_EQ(work[nth].node, sorted[nth].node);
    for (std::size_t i = 0; i < nth; ++i) {
      ASSERT_TRUE(ranks_before(work[i], work[nth]));
    }
    for (std::size_t i = nth + 1; i < n; ++i) {
      ASSERT_TRUE(ranks_before(work[nth], work[i]));
    }
    const std::size_t k = rng.below(n + 1);
    std::vector<ScoredNode> top = select_top_k(shuffled, k);
    ASSERT_EQ(top.size(), k);
    for (std::size_t i = 0; i < k; ++i) ASSERT_EQ(top[i].node, sorted[i].node);
  }
}

TEST(PaeReveal, Examples) {
  DirectedGraph g = make_graph(6, {{1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 1}});
  LabelPartition l(6);
  l.set(0, Label::kBenign);
  l.set(5, Label::kBenign);
  std::vector<NodeId> probe{0};

  RevealOracle yes(std::vector<std::uint8_t>(6, 1));
  EXPECT_TRUE(pae_reveal(g, l, probe, yes).pae_edges.empty());

  RevealOracle no(std::vector<std::uint8_t>(6, 0));
  PaeResult r = pae_reveal(g, l, probe, no);
  EXPECT_EQ(r.pae_edges, (std::vector<Edge>{{1, 0}, {2, 0}, {3, 0}, {4, 0}}));

  std::vector<NodeId> bad{1};
  EXPECT_THROW(pae_reveal(g, l, bad, no), ConfigError);
}

TEST(PaeReveal, MatchesDefinitionOnSynthesizedInstance) {
  CommunityGraphParams gp;
  gp.num_nodes = 400;
  gp.communities = 4;
  AttackConfig ac;
  ac.seed = 3;
  AttackOutcome o = synthesize_attack(generate_community_graph(gp), ac);
  // Known labels: every tenth benign and every fourth sybil.
  LabelPartition known(o.graph.num_nodes());
  for (NodeId v : o.truth.benign()) {
    if (v % 10 == 0) known.set(v, Label::kBenign);
  }
  for (NodeId v : o.truth.sybil()) {
    if (v % 4 == 0) known.set(v, Label::kSybil);
  }
  std::vector<NodeId> probed = known.benign();
  RevealOracle oracle(o.resistance.resistant);
  PaeResult r = pae_reveal(o.graph, known, probed, oracle, &o.truth);

  std::vector<Edge> expect, attacks;
  std::set<NodeId> probed_set(probed.begin(), probed.end());
  for (const Edge& e : o.graph.edges()) {
    if (probed_set.count(e.to) && o.resistance.resistant[e.to] == 0 &&
        !known.is_known(e.from)) {
      expect.push_back(e);
      if (o.truth.is_sybil(e.from)) attacks.push_back(e);
    }
  }
  EXPECT_EQ(r.pae_edges, expect);
  EXPECT_EQ(r.true_attack_edges, attacks);
  EXPECT_FALSE(attacks.empty());
}

TEST(PaeBaseline, RandomCases) {
  std::vector<NodeId> b{2, 4, 6, 8, 10};
  std::vector<NodeId> all = pae_baseline_random(b, 5, 1);
  std::sort(all.begin(), all.end());
  EXPECT_EQ(all, b);
  EXPECT_TRUE(pae_baseline_random(b, 0, 1).empty());
  std::vector<double> count(5, 0.0);
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    for (NodeId v : pae_baseline_random(b, 2, seed)) count[v / 2 - 1] += 1.0;
  }
  double chi2 = 0;
  for (double c : count) chi2 += (c - 4000.0) * (c - 4000.0) / 4000.0;
  // 99th percentile of chi-square with 4 degrees of freedom.
  EXPECT_LT(chi2, 13.277);
}

TEST(FullKnowledge, SybilFedNodeFirst) {
  // Benign 0 (r=0) fed only by sybils 3, 4; benign 1 (r=0) by unknown 5.
  DirectedGraph g = make_graph(6, {{3, 0}, {4, 0}, {5, 1}, {5, 2}});
  LabelPartition known(6);
  for (NodeId v : {0, 1, 2}) known.set(v, Label::kBenign);
  LabelPartition truth(6);
  for (NodeId v : {0, 1, 2, 5}) truth.set(v, Label::kBenign);
  truth.set(3, Label::kSybil);
  truth.set(4, Label::kSybil);
  std::vector<std::uint8_t> r{0, 0, 1, 1, 1, 1};
  FullKnowledgeSelection sel = pae_full_knowledge(g, known, truth, r, 1);
  EXPECT_EQ(sel.nodes, (std::vector<NodeId>{0}));
  EXPECT_EQ(sel.ratio_trace, (std::vector<double>{1.0}));
  FullKnowledgeSelection more = pae_full_knowledge(g, known, truth, r, 3);
  EXPECT_EQ(more.nodes, (std::vector<NodeId>{0, 1, 2}));
  EXPECT_EQ(more.ratio_trace, (std::vector<double>{1.0, 2.0 / 3, 2.0 / 3}));
}

TEST(FullKnowledge, AllResistantReportsZero) {
  DirectedGraph g = make_graph(4, {{3, 0}, {2, 1}});
  LabelPartition known(4);
  known.set(0, Label::kBenign);
  known.set(1, Label::kBenign);
  LabelPartition truth = known;
  truth.set(3, Label::kSybil);
  std::vector<std::uint8_t> r(4, 1);
  FullKnowledgeSelection sel = pae_full_knowledge(g, known, truth, r, 2);
  EXPECT_EQ(sel.nodes.size(), 2U);
  EXPECT_EQ(sel.ratio_trace, (std::vector<double>{0.0, 0.0}));
}

TEST(FullKnowledge, TraceIsConsistentAndNonIncreasing) {
  Rng rng(55);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t nb = 8, n = 20;
    DirectedGraph g = testing::random_graph(n, 0.2, rng);
    LabelPartition known(n), truth(n);
    for (NodeId v = 0; v < n; ++v) {
      const bool sybil = v >= nb && rng.bernoulli(0.4);
      truth.set(v, sybil ? Label::kSybil : Label::kBenign);
      if (v < nb) known.set(v, Label::kBenign);
    }
    std::vector<std::uint8_t> r(n);
    for (auto& x : r) x = rng.bernoulli(0.3);
    FullKnowledgeSelection sel = pae_full_knowledge(g, known, truth, r, nb);

    // Per-node counts and the exhaustive best single ratio.
    std::vector<std::size_t> att(n, 0), pae(n, 0);
    double best_single = 0.0;
    for (NodeId v = 0; v < nb; ++v) {
      if (r[v]) continue;
      for (NodeId u : g.in_neighbors(v)) {
        if (known.is_known(u)) continue;
        ++pae[v];
        att[v] += truth.is_sybil(u);
      }
      if (pae[v] > 0) {
        best_single = std::max(best_single, static_cast<double>(att[v]) / pae[v]);
      }
    }
    ASSERT_EQ(sel.nodes.size(), nb);
    EXPECT_EQ(sel.ratio_trace.front(), best_single);
    std::size_t sa = 0, sp = 0;
    for (std::size_t i = 0; i < sel.nodes.size(); ++i) {
      sa += att[sel.nodes[i]];
      sp += pae[sel.nodes[i]];
      const double ratio = sp == 0 ? 0.0 : static_cast<double>(sa) / sp;
      EXPECT_DOUBLE_EQ(sel.ratio_trace[i], ratio);
      if (i > 0) EXPECT_LE(sel.ratio_trace[i], sel.ratio_trace[i - 1] + 1e-15);
    }
  }
}

TEST(PaeExpectedValue, ExamplesAndLinearity) {
  Rng rng(56);
  PaeInstance s = random_pae_instance(10, 10, rng);
  EXPECT_EQ(pae_expected_value(s.graph, s.labels, s.p_r, {}), 0.0);
  std::vector<NodeId> one{3};
  EXPECT_EQ(pae_expected_value(s.graph, s.labels, s.p_r, one),
            pae_value(s.graph, s.labels, s.p_r, 3));
  std::vector<NodeId> many{1, 4, 7};
  EXPECT_DOUBLE_EQ(pae_expected_value(s.graph, s.labels, s.p_r, many),
                   pae_value(s.graph, s.labels, s.p_r, 1) +
                       pae_value(s.graph, s.labels, s.p_r, 4) +
                       pae_value(s.graph, s.labels, s.p_r, 7));
}

TEST(PaeExpectedValue, MatchesMonteCarloMean) {
  Rng rng(57);
  PaeInstance s = random_pae_instance(20, 30, rng);
  std::vector<NodeId> a = s.labels.benign();
  const double expected = pae_expected_value(s.graph, s.labels, s.p_r, a);
  ASSERT_GT(expected, 10.0);
  double total = 0.0;
  const int draws = 10000;
  for (int d = 0; d < draws; ++d) {
    std::vector<std::uint8_t> r(s.graph.num_nodes());
    for (NodeId v = 0; v < r.size(); ++v) r[v] = rng.bernoulli(s.p_r[v]);
    RevealOracle oracle(r);
    total += static_cast<double>(
        pae_reveal(s.graph, s.labels, a, oracle).pae_edges.size());
  }
  EXPECT_NEAR(total / draws, expected, 0.01 * expected);
}

}  // namespace
}  // namespace sybilbench
