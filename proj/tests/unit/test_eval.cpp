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
#include <filesystem>
#include <map>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "sybilbench/errors.hpp"
#include "sybilbench/eval.hpp"

namespace sybilbench {
namespace {

using nlohmann::json;

PipelineConfig small_config() {
  PipelineConfig c;
  c.dataset.generator.num_nodes = 200;
  c.dataset.generator.communities = 4;
  c.seeds = {1};
  return c;
}

TEST(Auc, Examples) {
  std::vector<double> s{0.9, 0.4, 0.6, 0.1};
  std::vector<std::uint8_t> t{1, 1, 0, 0};
  EXPECT_DOUBLE_EQ(auc(s, t), 0.75);
  std::vector<double> perfect{0.9, 0.8, 0.2, 0.1};
  EXPECT_EQ(auc(perfect, t), 1.0);
  std::vector<double> flat(4, 0.3);
  EXPECT_EQ(auc(flat, t), 0.5);
  std::vector<std::uint8_t> one_class(4, 1);
  EXPECT_THROW(auc(s, one_class), ConfigError);
}

TEST(Auc, MatchesPairEnumeration) {
  Rng rng(71);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng.below(60);
    std::vector<double> s(n);
    std::vector<std::uint8_t> t(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.below(6));
      t[i] = i == 0 ? 1 : (i == 1 ? 0 : rng.bernoulli(0.4));
    }
    EXPECT_NEAR(auc(s, t), testing::pairwise_auc(s, t), 1e-12);
  }
}

TEST(Budget, OnePercentRoundedUp) {
  EXPECT_EQ(default_budget(2000), 20U);
  EXPECT_EQ(default_budget(2001), 21U);
  EXPECT_EQ(default_budget(1), 1U);
  EXPECT_EQ(default_budget(0), 0U);
}

TEST(Pipeline, RowCountAndSummaries) {
  PipelineConfig c = small_config();
  AucReport r = run_pipeline(c);
  ASSERT_EQ(r.rows.size(), 9U);
  ASSERT_EQ(r.seeds.size(), 1U);
  EXPECT_TRUE(r.seeds[0].error.empty());
  EXPECT_EQ(r.seeds[0].mb_budget, 2U);
  std::map<Step, int> steps;
  for (const AucRow& row : r.rows) {
    ++steps[row.step];
    EXPECT_GE(row.auc, 0.0);
    EXPECT_LE(row.auc, 1.0);
    EXPECT_EQ(row.runtime_ms, 0.0);
  }
  EXPECT_EQ(steps[Step::kInit], 3);
  EXPECT_EQ(steps[Step::kMb], 3);
  EXPECT_EQ(steps[Step::kMbPae], 3);

  c.seeds = {1, 2};
  c.strategies = {AttackStrategy::kRandom, AttackStrategy::kBfs};
  EXPECT_EQ(run_pipeline(c).rows.size(), 2U * 2U * 9U);
}

TEST(Pipeline, ZeroMbBudgetMatchesInit) {
  PipelineConfig c = small_config();
  c.mb.budget = 0;
  c.pae.enabled = false;
  AucReport r = run_pipeline(c);
  ASSERT_EQ(r.rows.size(), 6U);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(r.rows[i].step, Step::kInit);
    EXPECT_EQ(r.rows[i + 3].step, Step::kMb);
    EXPECT_EQ(r.rows[i].auc, r.rows[i + 3].auc);
  }
}

TEST(Pipeline, DeterministicAcrossRunsAndThreads) {
  PipelineConfig c = small_config();
  c.seeds = {3, 4};
  const std::string a = auc_csv(run_pipeline(c));
  EXPECT_EQ(a, auc_csv(run_pipeline(c)));
  c.threads = 2;
  EXPECT_EQ(a, auc_csv(run_pipeline(c)));
}

TEST(Pipeline, AbortedSeedIsReported) {
  PipelineConfig c = small_config();
  c.dataset.generator.num_nodes = 30;
  c.dataset.generator.communities = 2;
  c.train_fraction = 0.5;  // more train sybils than exist
  AucReport r = run_pipeline(c);
  EXPECT_TRUE(r.rows.empty());
  ASSERT_EQ(r.seeds.size(), 1U);
  EXPECT_FALSE(r.seeds[0].error.empty());
}

TEST(Config, DefaultsRoundTrip) {
  PipelineConfig c;
  c.mb.budget = 7;
  c.seeds = {9, 8};
  c.strategies = {AttackStrategy::kBfs};
  const json j = to_json(c);
  EXPECT_EQ(to_json(pipeline_config_from_json(j, ".")), j);
}

TEST(Config, ParsesKnownKeys) {
  const json j = json::parse(R"({
    "dataset": {"name": "fixture", "path": "graph.txt", "directed": false},
    "attack": {"strategies": ["random", "preat", "bfs"], "c": 2.5},
    "mb": {"algorithm": "random", "budget": 3},
    "pae": {"mode": "literal", "downweight": 0.2},
    "detectors": {"enabled": ["SybilSCAR"], "sybilscar": {"theta": 0.7}},
    "split": {"train_fraction": 0.05},
    "experiments": {"mb_curve": {"enabled": true, "k_max": 5}},
    "seeds": [4],
    "output_dir": "out",
    "threads": 2
  })");
  PipelineConfig c = pipeline_config_from_json(j, "/data/cfg");
  EXPECT_EQ(c.dataset.path, "/data/cfg/graph.txt");
  EXPECT_FALSE(c.dataset.directed);
  EXPECT_EQ(c.strategies.size(), 3U);
  EXPECT_EQ(c.attack.c, 2.5);
  EXPECT_EQ(c.mb.algorithm, MbAlgorithm::kRandom);
  EXPECT_EQ(c.mb.budget, std::optional<std::size_t>(3));
  EXPECT_EQ(c.pae.mode, PaeMode::kLiteral);
  EXPECT_EQ(c.detector_kinds, (std::vector<DetectorKind>{DetectorKind::kSybilScar}));
  EXPECT_EQ(c.detectors.sybilscar.theta, 0.7);
  EXPECT_EQ(c.train_fraction, 0.05);
  EXPECT_TRUE(c.mb_curve.enabled);
  EXPECT_EQ(c.mb_curve.k_max, 5U);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{4}));
  EXPECT_EQ(c.threads, 2U);
}

TEST(Config, RejectsBadInput) {
  const std::filesystem::path base = ".";
  EXPECT_THROW(pipeline_config_from_json(json::parse(R"({"bogus": 1})"), base),
               ConfigError);
  EXPECT_THROW(pipeline_config_from_json(
                   json::parse(R"({"attack": {"cc": 1}})"), base),
               ConfigError);
  EXPECT_THROW(pipeline_config_from_json(
                   json::parse(R"({"attack": {"c": "four"}})"), base),
               ConfigError);
  EXPECT_THROW(pipeline_config_from_json(
                   json::parse(R"({"attack": {"strategies": ["sideways"]}})"), base),
               ConfigError);
  EXPECT_THROW(pipeline_config_from_json(json::parse(R"({"seeds": []})"), base),
               ConfigError);
  EXPECT_THROW(pipeline_config_from_json(
                   json::parse(R"({"mb": {"budget": -1}})"), base),
               ConfigError);
  EXPECT_THROW(pipeline_config_from_json(json::parse("[1]"), base), ConfigError);
  EXPECT_THROW(load_pipeline_config("/nonexistent/cfg.json"), Error);
}

TEST(Stats, ExactResistanceShareAndPartitionIdentity) {
  DirectedGraph g = DirectedGraph::FromEdges(10000, {});
  LabelPartition truth(10000);
  for (NodeId v = 0; v < 10000; ++v) truth.set(v, Label::kBenign);
  ResistanceModel m;
  m.resistant = assign_resistance(10000, 0.25, 3);
  m.probability.assign(10000, 0.5);
  InstanceStats s = compute_stats(g, truth, m);
  EXPECT_EQ(s.avg_r, 0.75);
  EXPECT_EQ(s.avg_p_r, 0.5);

  for (auto strategy : {AttackStrategy::kRandom, AttackStrategy::kPreferential,
                        AttackStrategy::kBfs}) {
    CommunityGraphParams gp;
    gp.num_nodes = 400;
    gp.communities = 4;
    AttackConfig ac;
    ac.strategy = strategy;
    AttackOutcome o = synthesize_attack(generate_community_graph(gp), ac);
    InstanceStats st = stats_report(o);
    EXPECT_EQ(st.edges, st.benign_benign + st.sybil_sybil + st.attacks +
                            st.reverse_attacks);
    EXPECT_EQ(st.attacks, o.attack_edges.size());
    EXPECT_EQ(st.reverse_attacks, o.reverse_edges.size());
    const json j = to_json(st);
    for (const char* key : {"nodes", "edges", "attacks", "reverse_attacks",
                            "sybil_to_sybil", "benign_to_benign", "avg_r",
                            "avg_p_r"}) {
      EXPECT_TRUE(j.contains(key)) << key;
    }
  }
}

TEST(Stats, NoAttacksWhenEveryoneResists) {
  CommunityGraphParams gp;
  gp.num_nodes = 300;
  gp.communities = 3;
  AttackConfig ac;
  ac.nonresistant_fraction = 0.0;
  InstanceStats st = stats_report(synthesize_attack(generate_community_graph(gp), ac));
  EXPECT_EQ(st.attacks, 0U);
  EXPECT_EQ(st.reverse_attacks, 0U);
  EXPECT_EQ(st.avg_r, 1.0);
}

Instance curve_instance(std::uint64_t seed) {
  CommunityGraphParams gp;
  gp.num_nodes = 600;
  gp.communities = 6;
  gp.seed = seed;
  return make_instance(generate_community_graph(gp), AttackConfig{}, 0.05, seed);
}

TEST(Curves, MbCurveShape) {
  Instance inst = curve_instance(1);
  const std::vector<MbAlgorithm> algs = {
      MbAlgorithm::kTraversing, MbAlgorithm::kRandom,
      MbAlgorithm::kHighestResistance, MbAlgorithm::kResistanceDegree};
  std::vector<MbCurveRow> rows =
      experiment_mb_curve(inst, algs, 10, 1, MbConfig{}, false);
  ASSERT_EQ(rows.size(), 40U);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].budget, i % 10 + 1);
    EXPECT_EQ(rows[i].elapsed_ms, 0.0);
    if (i % 10 > 0) {
      EXPECT_GE(rows[i].discovered_count, rows[i - 1].discovered_count);
    }
  }
  const std::string csv = mb_curve_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "algorithm,budget,discovered_count,elapsed_ms,seed");
}

TEST(Curves, PaeCurveProperties) {
  double proposed = 0, random = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Instance inst = curve_instance(seed);
    const std::size_t nb = inst.known.benign().size();
    std::vector<PaeCurveRow> rows = experiment_pae_curve(inst, nb, seed);
    ASSERT_EQ(rows.size(), 3 * nb);
    auto at = [&](PaeAlgorithm a, std::size_t k) {
      for (const PaeCurveRow& r : rows) {
        if (r.algorithm == a && r.budget == k) return r;
      }
      return PaeCurveRow{};
    };
    EXPECT_EQ(at(PaeAlgorithm::kProposed, nb).pae_count,
              at(PaeAlgorithm::kRandom, nb).pae_count);
    for (std::size_t k = 1; k <= nb; ++k) {
      proposed += at(PaeAlgorithm::kProposed, k).pae_count;
      random += at(PaeAlgorithm::kRandom, k).pae_count;
    }
    // The greedy ratio is only optimal for a single pick.
    EXPECT_GE(at(PaeAlgorithm::kFullKnowledge, 1).attack_ratio_percent + 1e-9,
              at(PaeAlgorithm::kProposed, 1).attack_ratio_percent);
  }
  EXPECT_GE(proposed, random);
}

TEST(Output, HashesAndFiles) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(format_real(0.75), "0.75");
  EXPECT_EQ(format_real(1.0 / 3.0), "0.333333333333");

  const auto dir = std::filesystem::temp_directory_path() / "sybilbench_eval_test";
  std::filesystem::remove_all(dir);
  const auto file = dir / "nested" / "x.txt";
  write_file_atomic(file, "hello\n");
  EXPECT_EQ(read_file(file), "hello\n");
  write_file_atomic(file, "again\n");
  EXPECT_EQ(read_file(file), "again\n");
  std::filesystem::remove_all(dir);

  const json m = make_manifest("pipeline", PipelineConfig{});
  for (const char* key : {"tool", "version", "command", "config_hash",
                          "master_seeds", "config", "defaults"}) {
    EXPECT_TRUE(m.contains(key)) << key;
  }
  EXPECT_EQ(m["config_hash"].get<std::string>().size(), 16U);
}

TEST(Names, RoundTrip) {
  for (auto a : {MbAlgorithm::kTraversing, MbAlgorithm::kMcGreedy,
                 MbAlgorithm::kMcGreedyAware, MbAlgorithm::kRandom,
                 MbAlgorithm::kHighestResistance, MbAlgorithm::kResistanceDegree}) {
    EXPECT_EQ(parse_mb_algorithm(to_string(a)), a);
  }
  EXPECT_THROW(parse_mb_algorithm("oracle"), ConfigError);
}

}  // namespace
}  // namespace sybilbench
