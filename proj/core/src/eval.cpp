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

#include "sybilbench/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "sybilbench/discovery.hpp"
#include "sybilbench/errors.hpp"
#include "sybilbench/graph_io.hpp"
#include "sybilbench/rng.hpp"
#include "sybilbench/traversing.hpp"

namespace sybilbench {

using nlohmann::json;

double auc(std::span<const double> scores,
           std::span<const std::uint8_t> truth) {
  if (scores.size() != truth.size()) {
    throw ConfigError("AUC needs one truth label per score");
  }
  const std::size_t n = scores.size();
  const std::size_t pos =
      static_cast<std::size_t>(std::count(truth.begin(), truth.end(), 1));
  const std::size_t neg = n - pos;
  if (pos == 0 || neg == 0) {
    throw ConfigError("AUC needs both classes in the truth labels");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                   std::size_t b) {
    return scores[a] < scores[b];
  });
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    // Ranks i+1..j share their average.
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) {
      if (truth[order[t]]) rank_sum += avg;
    }
    i = j;
  }
  const double p = static_cast<double>(pos);
  const double u = rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(neg));
}

const char* to_string(MbAlgorithm algorithm) {
  switch (algorithm) {
    case MbAlgorithm::kTraversing:
      return "traversing";
    case MbAlgorithm::kMcGreedy:
      return "mc_greedy";
    case MbAlgorithm::kMcGreedyAware:
      return "mc_greedy_aware";
    case MbAlgorithm::kRandom:
      return "random";
    case MbAlgorithm::kHighestResistance:
      return "highest_resistance";
    case MbAlgorithm::kResistanceDegree:
      return "resistance_degree";
  }
  return "?";
}

MbAlgorithm parse_mb_algorithm(std::string_view name) {
  for (MbAlgorithm a :
       {MbAlgorithm::kTraversing, MbAlgorithm::kMcGreedy,
        MbAlgorithm::kMcGreedyAware, MbAlgorithm::kRandom,
        MbAlgorithm::kHighestResistance, MbAlgorithm::kResistanceDegree}) {
    if (name == to_string(a)) return a;
  }
  throw ConfigError("unknown MB algorithm '" + std::string(name) + "'");
}

const char* to_string(Step step) {
  switch (step) {
    case Step::kInit:
      return "Init";
    case Step::kMb:
      return "MB";
    case Step::kMbPae:
      return "MB+PAE";
  }
  return "?";
}

const char* to_string(PaeAlgorithm algorithm) {
  switch (algorithm) {
    case PaeAlgorithm::kProposed:
      return "proposed";
    case PaeAlgorithm::kRandom:
      return "random";
    case PaeAlgorithm::kFullKnowledge:
      return "full_knowledge";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Config

namespace {

// Reads the keys of one JSON object, rejecting unknown ones on finish().
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path)
      : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + " must be an object");
  }

  const json* find(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  void get(const char* key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) fail(key, "a number");
      out = v->get<double>();
    }
  }
  void get(const char* key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) fail(key, "a boolean");
      out = v->get<bool>();
    }
  }
  void get(const char* key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) fail(key, "a string");
      out = v->get<std::string>();
    }
  }
  template <typename T>
    requires std::is_unsigned_v<T>
  void get(const char* key, T& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned()) fail(key, "a non-negative integer");
      out = static_cast<T>(v->get<std::uint64_t>());
    }
  }
  template <typename T>
  void get(const char* key, std::optional<T>& out) {
    if (find(key) != nullptr) {
      T value{};
      get(key, value);
      out = value;
    }
  }
  std::vector<std::string> strings(const char* key) {
    std::vector<std::string> out;
    if (const json* v = find(key)) {
      if (!v->is_array()) fail(key, "an array of strings");
      for (const json& e : *v) {
        if (!e.is_string()) fail(key, "an array of strings");
        out.push_back(e.get<std::string>());
      }
    }
    return out;
  }
  std::string path(const char* key) const { return path_ + "." + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) {
        throw ConfigError("unknown config key " + path_ + "." + it.key());
      }
    }
  }

 private:
  [[noreturn]] void fail(const char* key, const char* expected) const {
    throw ConfigError("config key " + path_ + "." + key + " must be " +
                      expected);
  }

  const json& j_;
  std::string path_;
  std::set<std::string, std::less<>> seen_;
};

void read_curve(ObjectReader& parent, const char* key, CurveConfig& curve) {
  if (const json* v = parent.find(key)) {
    ObjectReader r(*v, parent.path(key));
    r.get("enabled", curve.enabled);
    r.get("k_max", curve.k_max);
    if (r.find("algorithms") != nullptr) {
      curve.algorithms.clear();
      for (const std::string& name : r.strings("algorithms")) {
        curve.algorithms.push_back(parse_mb_algorithm(name));
      }
    }
    r.finish();
  }
}

json curve_json(const CurveConfig& curve) {
  json algorithms = json::array();
  for (MbAlgorithm a : curve.algorithms) algorithms.push_back(to_string(a));
  return {{"enabled", curve.enabled},
          {"k_max", curve.k_max},
          {"algorithms", algorithms}};
}

}  // namespace

void PipelineConfig::validate() const {
  attack.validate();
  detectors.validate();
  if (seeds.empty()) throw ConfigError("config needs at least one seed");
  if (strategies.empty()) {
    throw ConfigError("config needs at least one attack strategy");
  }
  if (detector_kinds.empty()) {
    throw ConfigError("config needs at least one detector");
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("split.train_fraction must lie in (0, 1)");
  }
  mb.estimator.validate();
  if (!(pae.downweight >= 0.0 && pae.downweight < 1.0)) {
    throw ConfigError("pae.downweight must lie in [0, 1)");
  }
  if (dataset.path.empty() &&
      (dataset.generator.num_nodes == 0 || dataset.generator.communities == 0 ||
       dataset.generator.communities > dataset.generator.num_nodes)) {
    throw ConfigError(
        "dataset.generator needs num_nodes >= communities >= 1");
  }
  if (threads == 0) throw ConfigError("threads must be positive");
}

PipelineConfig pipeline_config_from_json(const json& j,
                                         const std::filesystem::path& base_dir) {
  PipelineConfig c;
  ObjectReader root(j, "config");

  if (const json* v = root.find("dataset")) {
    ObjectReader r(*v, "config.dataset");
    r.get("name", c.dataset.name);
    r.get("path", c.dataset.path);
    r.get("directed", c.dataset.directed);
    if (const json* g = r.find("generator")) {
      ObjectReader gr(*g, "config.dataset.generator");
      gr.get("num_nodes", c.dataset.generator.num_nodes);
      gr.get("communities", c.dataset.generator.communities);
      gr.get("intra_degree", c.dataset.generator.intra_degree);
      gr.get("inter_degree", c.dataset.generator.inter_degree);
      gr.get("seed", c.dataset.generator.seed);
      gr.finish();
    }
    r.finish();
    if (!c.dataset.path.empty()) {
      std::filesystem::path p(c.dataset.path);
      if (p.is_relative()) c.dataset.path = (base_dir / p).lexically_normal().string();
    }
  }
  if (const json* v = root.find("attack")) {
    ObjectReader r(*v, "config.attack");
    if (r.find("strategies") != nullptr) {
      c.strategies.clear();
      for (const std::string& s : r.strings("strategies")) {
        c.strategies.push_back(parse_strategy(s));
      }
    }
    r.get("c", c.attack.c);
    r.get("sybil_fraction", c.attack.sybil_fraction);
    r.get("reverse_prob", c.attack.reverse_prob);
    r.get("nonresistant_fraction", c.attack.nonresistant_fraction);
    r.finish();
  }
  if (const json* v = root.find("mb")) {
    ObjectReader r(*v, "config.mb");
    std::string algorithm = to_string(c.mb.algorithm);
    r.get("algorithm", algorithm);
    c.mb.algorithm = parse_mb_algorithm(algorithm);
    r.get("budget", c.mb.budget);
    r.get("epsilon", c.mb.estimator.epsilon);
    r.get("alpha", c.mb.estimator.alpha);
    r.get("iterations", c.mb.estimator.iterations);
    r.get("max_iterations", c.mb.estimator.max_iterations);
    r.get("literal_candidates", c.mb.literal_candidates);
    r.finish();
  }
  if (const json* v = root.find("pae")) {
    ObjectReader r(*v, "config.pae");
    r.get("enabled", c.pae.enabled);
    r.get("budget", c.pae.budget);
    std::string mode = to_string(c.pae.mode);
    r.get("mode", mode);
    c.pae.mode = parse_pae_mode(mode);
    r.get("downweight", c.pae.downweight);
    r.finish();
  }
  if (const json* v = root.find("detectors")) {
    ObjectReader r(*v, "config.detectors");
    if (r.find("enabled") != nullptr) {
      c.detector_kinds.clear();
      for (const std::string& s : r.strings("enabled")) {
        c.detector_kinds.push_back(parse_detector(s));
      }
    }
    if (const json* s = r.find("sybilscar")) {
      ObjectReader sr(*s, "config.detectors.sybilscar");
      sr.get("theta", c.detectors.sybilscar.theta);
      sr.get("max_iter", c.detectors.sybilscar.max_iter);
      sr.get("prior", c.detectors.sybilscar.prior);
      sr.get("tol", c.detectors.sybilscar.tol);
      sr.finish();
    }
    if (const json* s = r.find("sybilwalk")) {
      ObjectReader sr(*s, "config.detectors.sybilwalk");
      sr.get("max_iter", c.detectors.sybilwalk.max_iter);
      sr.get("tol", c.detectors.sybilwalk.tol);
      sr.finish();
    }
    if (const json* s = r.find("sybilmetric")) {
      ObjectReader sr(*s, "config.detectors.sybilmetric");
      SybilMetricConfig& m = c.detectors.sybilmetric;
      sr.get("learning_rate", m.learning_rate);
      sr.get("epochs", m.epochs);
      sr.get("l2", m.l2);
      sr.get("centrality_samples", m.centrality_samples);
      if (sr.find("features") != nullptr) {
        m.features.clear();
        for (const std::string& f : sr.strings("features")) {
          m.features.push_back(parse_feature(f));
        }
      }
      sr.finish();
    }
    r.finish();
  }
  if (const json* v = root.find("split")) {
    ObjectReader r(*v, "config.split");
    r.get("train_fraction", c.train_fraction);
    r.finish();
  }
  if (const json* v = root.find("experiments")) {
    ObjectReader r(*v, "config.experiments");
    read_curve(r, "mb_curve", c.mb_curve);
    read_curve(r, "pae_curve", c.pae_curve);
    r.finish();
  }
  if (const json* v = root.find("seeds")) {
    if (!v->is_array()) throw ConfigError("config.seeds must be an array");
    c.seeds.clear();
    for (const json& s : *v) {
      if (!s.is_number_unsigned()) {
        throw ConfigError("config.seeds must hold non-negative integers");
      }
      c.seeds.push_back(s.get<std::uint64_t>());
    }
  }
  root.get("output_dir", c.output_dir);
  root.get("record_timings", c.record_timings);
  root.get("threads", c.threads);
  root.finish();
  c.validate();
  return c;
}

json to_json(const PipelineConfig& c) {
  json strategies = json::array();
  for (AttackStrategy s : c.strategies) strategies.push_back(to_string(s));
  json detectors = json::array();
  for (DetectorKind d : c.detector_kinds) detectors.push_back(to_string(d));
  json features = json::array();
  for (Feature f : c.detectors.sybilmetric.features) {
    features.push_back(to_string(f));
  }
  auto optional_size = [](const std::optional<std::size_t>& v) -> json {
    return v ? json(*v) : json(nullptr);
  };
  const auto& e = c.mb.estimator;
  return {
      {"dataset",
       {{"name", c.dataset.name},
        {"path", c.dataset.path},
        {"directed", c.dataset.directed},
        {"generator",
         {{"num_nodes", c.dataset.generator.num_nodes},
          {"communities", c.dataset.generator.communities},
          {"intra_degree", c.dataset.generator.intra_degree},
          {"inter_degree", c.dataset.generator.inter_degree},
          {"seed", c.dataset.generator.seed}}}}},
      {"attack",
       {{"strategies", strategies},
        {"c", c.attack.c},
        {"sybil_fraction", c.attack.sybil_fraction},
        {"reverse_prob", c.attack.reverse_prob},
        {"nonresistant_fraction", c.attack.nonresistant_fraction}}},
      {"mb",
       {{"algorithm", to_string(c.mb.algorithm)},
        {"budget", optional_size(c.mb.budget)},
        {"epsilon", e.epsilon},
        {"alpha", e.alpha},
        {"iterations", e.iterations ? json(*e.iterations) : json(nullptr)},
        {"max_iterations", e.max_iterations},
        {"literal_candidates", c.mb.literal_candidates}}},
      {"pae",
       {{"enabled", c.pae.enabled},
        {"budget", optional_size(c.pae.budget)},
        {"mode", to_string(c.pae.mode)},
        {"downweight", c.pae.downweight}}},
      {"detectors",
       {{"enabled", detectors},
        {"sybilscar",
         {{"theta", c.detectors.sybilscar.theta},
          {"max_iter", c.detectors.sybilscar.max_iter},
          {"prior", c.detectors.sybilscar.prior},
          {"tol", c.detectors.sybilscar.tol}}},
        {"sybilwalk",
         {{"max_iter", c.detectors.sybilwalk.max_iter},
          {"tol", c.detectors.sybilwalk.tol}}},
        {"sybilmetric",
         {{"learning_rate", c.detectors.sybilmetric.learning_rate},
          {"epochs", c.detectors.sybilmetric.epochs},
          {"l2", c.detectors.sybilmetric.l2},
          {"features", features},
          {"centrality_samples",
           c.detectors.sybilmetric.centrality_samples}}}}},
      {"split", {{"train_fraction", c.train_fraction}}},
      {"experiments",
       {{"mb_curve", curve_json(c.mb_curve)},
        {"pae_curve", curve_json(c.pae_curve)}}},
      {"seeds", c.seeds},
      {"output_dir", c.output_dir},
      {"record_timings", c.record_timings},
      {"threads", c.threads},
  };
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return pipeline_config_from_json(j, path.parent_path());
}

DirectedGraph load_dataset(const DatasetConfig& dataset) {
  if (dataset.path.empty()) {
    return generate_community_graph(dataset.generator);
  }
  return load_edge_list(dataset.path, dataset.directed).graph;
}

std::size_t default_budget(std::size_t num_benign) {
  return (num_benign + 99) / 100;
}

// ---------------------------------------------------------------------------
// Instances and MB dispatch

Instance make_instance(const DirectedGraph& benign_graph,
                       const AttackConfig& attack, double train_fraction,
                       std::uint64_t seed) {
  AttackConfig cfg = attack;
  cfg.seed = seed;
  Instance inst;
  inst.outcome = synthesize_attack(benign_graph, cfg);
  inst.split = make_split(inst.outcome.truth, train_fraction,
                          derive_seed(seed, Stream::kSplit));
  inst.known = LabelPartition::Create(inst.outcome.graph.num_nodes(),
                                      inst.split.train_benign,
                                      inst.split.train_sybil);
  return inst;
}

RevealSet run_mb_algorithm(MbAlgorithm algorithm, const Instance& instance,
                           std::size_t k, const MbConfig& config,
                           RevealOracle& oracle, std::uint64_t seed,
                           unsigned threads) {
  const DirectedGraph& g = instance.outcome.graph;
  const LabelPartition& known = instance.known;
  const std::span<const double> p_r = instance.outcome.resistance.probability;
  const GreedyOptions options{config.literal_candidates, threads};
  const std::uint64_t est_seed = derive_seed(seed, Stream::kEstimator);
  RevealSet reveals;
  switch (algorithm) {
    case MbAlgorithm::kTraversing:
      return traversing(g, known, k, p_r, oracle).reveals;
    case MbAlgorithm::kMcGreedyAware:
      return mc_greedy_resistance_aware(g, known, k, p_r, config.estimator,
                                        oracle, est_seed, options);
    case MbAlgorithm::kMcGreedy:
      reveals = mc_greedy(g, known, k, p_r, config.estimator, est_seed, options);
      break;
    case MbAlgorithm::kRandom: {
      const std::vector<NodeId> benign = known.benign();
      reveals = baseline_random(benign, k, derive_seed(seed, Stream::kBaseline));
      break;
    }
    case MbAlgorithm::kHighestResistance: {
      const std::vector<NodeId> benign = known.benign();
      reveals = baseline_highest_resistance(benign, p_r, k);
      break;
    }
    case MbAlgorithm::kResistanceDegree:
      reveals = baseline_resistance_degree(g, known, p_r, k);
      break;
  }
  for (NodeId v : reveals.nodes) oracle.query(v);
  return reveals;
}

}  // namespace sybilbench
