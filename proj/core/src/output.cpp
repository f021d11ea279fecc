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

#include <cstdio>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "sybilbench/errors.hpp"
#include "sybilbench/eval.hpp"

#ifndef SYBILBENCH_VERSION
#define SYBILBENCH_VERSION "0.0.0"
#endif

namespace sybilbench {

std::string_view library_version() { return SYBILBENCH_VERSION; }

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() +
                ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string auc_csv(const AucReport& report) {
  std::string out = "dataset,strategy,step,detector,seed,auc,runtime_ms\n";
  for (const AucRow& r : report.rows) {
    out += r.dataset + "," + to_string(r.strategy) + "," + to_string(r.step) +
           "," + to_string(r.detector) + "," + std::to_string(r.seed) + "," +
           format_real(r.auc) + "," + format_real(r.runtime_ms) + "\n";
  }
  return out;
}

std::string mb_curve_csv(std::span<const MbCurveRow> rows) {
  std::string out = "algorithm,budget,discovered_count,elapsed_ms,seed\n";
  for (const MbCurveRow& r : rows) {
    out += std::string(to_string(r.algorithm)) + "," +
           std::to_string(r.budget) + "," +
           std::to_string(r.discovered_count) + "," +
           format_real(r.elapsed_ms) + "," + std::to_string(r.seed) + "\n";
  }
  return out;
}

std::string pae_curve_csv(std::span<const PaeCurveRow> rows) {
  std::string out =
      "budget,pae_count,attack_edge_count,attack_ratio_percent,algorithm,seed\n";
  for (const PaeCurveRow& r : rows) {
    out += std::to_string(r.budget) + "," + std::to_string(r.pae_count) + "," +
           std::to_string(r.attack_edge_count) + "," +
           format_real(r.attack_ratio_percent) + "," + to_string(r.algorithm) +
           "," + std::to_string(r.seed) + "\n";
  }
  return out;
}

std::string scores_csv(const ScoreVector& scores, const TrainTestSplit& split) {
  std::string out = "node,score,truth\n";
  for (std::size_t i = 0; i < scores.nodes.size(); ++i) {
    out += std::to_string(scores.nodes[i]) + "," +
           format_real(scores.scores[i]) + "," +
           (split.truth[i] ? "sybil" : "benign") + "\n";
  }
  return out;
}

nlohmann::json report_json(const AucReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const AucRow& r : report.rows) {
    rows.push_back({{"dataset", r.dataset},
                    {"strategy", to_string(r.strategy)},
                    {"step", to_string(r.step)},
                    {"detector", to_string(r.detector)},
                    {"seed", r.seed},
                    {"auc", r.auc},
                    {"runtime_ms", r.runtime_ms}});
  }
  nlohmann::json seeds = nlohmann::json::array();
  for (const SeedSummary& s : report.seeds) {
    seeds.push_back({{"strategy", to_string(s.strategy)},
                     {"seed", s.seed},
                     {"nodes", s.nodes},
                     {"edges", s.edges},
                     {"attack_edges", s.attack_edges},
                     {"train_benign", s.train_benign},
                     {"train_sybil", s.train_sybil},
                     {"test_nodes_init", s.test_nodes_init},
                     {"test_nodes_mb", s.test_nodes_mb},
                     {"mb_budget", s.mb_budget},
                     {"mb_reveals", s.mb_reveals},
                     {"discovered", s.discovered},
                     {"pae_budget", s.pae_budget},
                     {"pae_probed", s.pae_probed},
                     {"pae_edges", s.pae_edges},
                     {"pae_true_attack_edges", s.pae_true_attack_edges},
                     {"error", s.error}});
  }
  return {{"rows", rows}, {"seeds", seeds}};
}

nlohmann::json make_manifest(std::string_view command,
                             const PipelineConfig& config) {
  const nlohmann::json resolved = to_json(config);
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a64(resolved.dump())));
  return {{"tool", "sybilbench"},
          {"version", library_version()},
          {"command", command},
          {"config_hash", hash},
          {"master_seeds", config.seeds},
          {"config", resolved},
          {"defaults", to_json(PipelineConfig{})}};
}

}  // namespace sybilbench
