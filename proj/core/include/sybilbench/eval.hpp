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

#ifndef SYBILBENCH_EVAL_HPP_
#define SYBILBENCH_EVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "sybilbench/attack.hpp"
#include "sybilbench/detectors.hpp"
#include "sybilbench/graph.hpp"
#include "sybilbench/mb.hpp"
#include "sybilbench/pae.hpp"

namespace sybilbench {

// Rank-based AUC with average ranks for ties; truth 1 marks the positive
// (sybil) class. Throws ConfigError unless both classes are present.
double auc(std::span<const double> scores, std::span<const std::uint8_t> truth);

enum class MbAlgorithm {
  kTraversing,
  kMcGreedy,
  kMcGreedyAware,
  kRandom,
  kHighestResistance,
  kResistanceDegree,
};

const char* to_string(MbAlgorithm algorithm);
MbAlgorithm parse_mb_algorithm(std::string_view name);

struct DatasetConfig {
  std::string name = "community";
  std::string path;  // edge list; empty selects the generator
  bool directed = true;
  CommunityGraphParams generator;
};

struct MbConfig {
  MbAlgorithm algorithm = MbAlgorithm::kTraversing;
  std::optional<std::size_t> budget;  // default: 1% of benigns, rounded up
  EstimatorParams estimator;
  bool literal_candidates = false;
};

struct PaeConfig {
  bool enabled = true;
  std::optional<std::size_t> budget;  // default: 1% of benigns, rounded up
  PaeMode mode = PaeMode::kUnion;
  double downweight = 0.1;
};

struct CurveConfig {
  bool enabled = false;
  std::size_t k_max = 20;
  std::vector<MbAlgorithm> algorithms = {
      MbAlgorithm::kTraversing, MbAlgorithm::kRandom,
      MbAlgorithm::kHighestResistance, MbAlgorithm::kResistanceDegree};
};

struct PipelineConfig {
  DatasetConfig dataset;
  AttackConfig attack;
  std::vector<AttackStrategy> strategies = {AttackStrategy::kRandom};
  MbConfig mb;
  PaeConfig pae;
  DetectorConfig detectors;
  std::vector<DetectorKind> detector_kinds = all_detectors();
  double train_fraction = 0.02;
  CurveConfig mb_curve;
  CurveConfig pae_curve;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  std::string output_dir = "out";
  bool record_timings = false;
  unsigned threads = 1;

  void validate() const;
};

// Strict parse: unknown keys and ill-typed values throw ConfigError. Relative
// dataset paths resolve against `base_dir`.
PipelineConfig pipeline_config_from_json(const nlohmann::json& j,
                                         const std::filesystem::path& base_dir);
nlohmann::json to_json(const PipelineConfig& config);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

DirectedGraph load_dataset(const DatasetConfig& dataset);

// ceil(1% of num_benign), at least 1 when there are benigns.
std::size_t default_budget(std::size_t num_benign);

// One synthesized attack plus its train/test split.
struct Instance {
  AttackOutcome outcome;
  TrainTestSplit split;
  LabelPartition known;  // train benigns and train sybils
};

Instance make_instance(const DirectedGraph& benign_graph,
                       const AttackConfig& attack, double train_fraction,
                       std::uint64_t seed);

// Reveal order produced by an MB algorithm on `known` with budget k, using the
// instance's ground-truth resistance as oracle. Adaptive algorithms query the
// oracle as they go.
RevealSet run_mb_algorithm(MbAlgorithm algorithm, const Instance& instance,
                           std::size_t k, const MbConfig& config,
                           RevealOracle& oracle, std::uint64_t seed,
                           unsigned threads = 1);

enum class Step { kInit, kMb, kMbPae };
const char* to_string(Step step);

struct AucRow {
  std::string dataset;
  AttackStrategy strategy = AttackStrategy::kRandom;
  Step step = Step::kInit;
  DetectorKind detector = DetectorKind::kSybilScar;
  std::uint64_t seed = 0;
  double auc = 0.0;
  double runtime_ms = 0.0;
};

struct SeedSummary {
  AttackStrategy strategy = AttackStrategy::kRandom;
  std::uint64_t seed = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t attack_edges = 0;
  std::size_t train_benign = 0;
  std::size_t train_sybil = 0;
  std::size_t test_nodes_init = 0;
  std::size_t test_nodes_mb = 0;
  std::size_t mb_budget = 0;
  std::size_t mb_reveals = 0;
  std::size_t discovered = 0;
  std::size_t pae_budget = 0;
  std::size_t pae_probed = 0;
  std::size_t pae_edges = 0;
  std::size_t pae_true_attack_edges = 0;
  std::string error;  // non-empty when the seed was aborted
};

struct AucReport {
  std::vector<AucRow> rows;
  std::vector<SeedSummary> seeds;
};

AucReport run_pipeline(const PipelineConfig& config,
                       const DirectedGraph& benign_graph);
AucReport run_pipeline(const PipelineConfig& config);

struct MbCurveRow {
  MbAlgorithm algorithm = MbAlgorithm::kTraversing;
  std::size_t budget = 0;
  std::size_t discovered_count = 0;
  double elapsed_ms = 0.0;  // time to build the full reveal order
  std::uint64_t seed = 0;
};

// Per algorithm and seed, discovered benigns for budgets 1..k_max. Counts at
// budget k come from the first k reveals of one k_max-sized run; greedy and
// frontier rules make every prefix equal to the budget-k run.
std::vector<MbCurveRow> experiment_mb_curve(const Instance& instance,
                                            std::span<const MbAlgorithm> algorithms,
                                            std::size_t k_max,
                                            std::uint64_t seed,
                                            const MbConfig& config,
                                            bool record_timings,
                                            unsigned threads = 1);

enum class PaeAlgorithm { kProposed, kRandom, kFullKnowledge };
const char* to_string(PaeAlgorithm algorithm);

struct PaeCurveRow {
  std::size_t budget = 0;
  std::size_t pae_count = 0;
  std::size_t attack_edge_count = 0;
  double attack_ratio_percent = 0.0;
  PaeAlgorithm algorithm = PaeAlgorithm::kProposed;
  std::uint64_t seed = 0;
};

std::vector<PaeCurveRow> experiment_pae_curve(const Instance& instance,
                                              std::size_t k_max,
                                              std::uint64_t seed,
                                              PaeMode mode = PaeMode::kUnion);

struct InstanceStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t attacks = 0;          // sybil -> benign
  std::size_t reverse_attacks = 0;  // benign -> sybil
  std::size_t sybil_sybil = 0;
  std::size_t benign_benign = 0;
  double avg_in_sybil = 0.0;
  double avg_out_sybil = 0.0;
  double avg_in_benign = 0.0;
  double avg_out_benign = 0.0;
  double avg_r = 0.0;
  double avg_p_r = 0.0;
};

InstanceStats compute_stats(const DirectedGraph& graph,
                            const LabelPartition& truth,
                            const ResistanceModel& resistance);
InstanceStats stats_report(const AttackOutcome& outcome);
nlohmann::json to_json(const InstanceStats& stats);

// Output helpers. Every file is written to a temporary sibling and renamed.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);
std::string read_file(const std::filesystem::path& path);
std::uint64_t fnv1a64(std::string_view data);
std::string format_real(double value);

std::string auc_csv(const AucReport& report);
std::string mb_curve_csv(std::span<const MbCurveRow> rows);
std::string pae_curve_csv(std::span<const PaeCurveRow> rows);
std::string scores_csv(const ScoreVector& scores, const TrainTestSplit& split);
nlohmann::json report_json(const AucReport& report);

// Reproduction record: config hash, seeds, the resolved config and the
// library defaults.
nlohmann::json make_manifest(std::string_view command,
                             const PipelineConfig& config);

std::string_view library_version();

}  // namespace sybilbench

#endif  // SYBILBENCH_EVAL_HPP_
