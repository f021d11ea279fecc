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
#include <string>

#include "sybilbench/detectors.hpp"
#include "sybilbench/errors.hpp"
#include "sybilbench/rng.hpp"

namespace sybilbench {

const char* to_string(Feature feature) {
  switch (feature) {
    case Feature::kInDegree:
      return "in_degree";
    case Feature::kOutDegree:
      return "out_degree";
    case Feature::kClustering:
      return "clustering";
    case Feature::kEigenvector:
      return "eigenvector";
    case Feature::kBetweenness:
      return "betweenness";
    case Feature::kAspl:
      return "aspl";
  }
  return "?";
}

Feature parse_feature(std::string_view name) {
  for (Feature f : all_features()) {
    if (name == to_string(f)) return f;
  }
  throw ConfigError("unknown feature '" + std::string(name) + "'");
}

std::vector<Feature> all_features() {
  return {Feature::kInDegree,    Feature::kOutDegree,   Feature::kClustering,
          Feature::kEigenvector, Feature::kBetweenness, Feature::kAspl};
}

std::vector<double> clustering_coefficients(const SymmetricGraph& graph) {
  const std::size_t n = graph.num_nodes();
  std::vector<double> out(n, 0.0);
  std::vector<NodeId> mark(n, kNoNode);
  for (NodeId v = 0; v < n; ++v) {
    const std::size_t d = graph.degree(v);
    if (d < 2) continue;
    for (std::size_t e = graph.offsets[v]; e < graph.offsets[v + 1]; ++e) {
      mark[graph.neighbors[e]] = v;
    }
    std::size_t links = 0;
    for (std::size_t e = graph.offsets[v]; e < graph.offsets[v + 1]; ++e) {
      const NodeId u = graph.neighbors[e];
      for (std::size_t f = graph.offsets[u]; f < graph.offsets[u + 1]; ++f) {
        links += mark[graph.neighbors[f]] == v;
      }
    }
    // Each neighbor pair link is seen from both ends.
    out[v] = static_cast<double>(links) / static_cast<double>(d * (d - 1));
  }
  return out;
}

std::vector<double> eigenvector_centrality(const SymmetricGraph& graph,
                                           std::size_t steps) {
  const std::size_t n = graph.num_nodes();
  if (n == 0) return {};
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n))), next(n);
  // Iterating with A + I keeps bipartite components from oscillating.
  for (std::size_t s = 0; s < steps; ++s) {
    double norm = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      double acc = x[v];
      for (std::size_t e = graph.offsets[v]; e < graph.offsets[v + 1]; ++e) {
        acc += graph.weights[e] * x[graph.neighbors[e]];
      }
      next[v] = acc;
      norm += acc * acc;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) break;
    for (double& value : next) value /= norm;
    x.swap(next);
  }
  return x;
}

PathStats sampled_path_stats(const SymmetricGraph& graph,
                             std::span<const NodeId> sources) {
  const std::size_t n = graph.num_nodes();
  PathStats out;
  out.betweenness.assign(n, 0.0);
  out.aspl.assign(n, 0.0);
  if (n == 0 || sources.empty()) return out;

  std::vector<std::size_t> reach(n, 0);
  std::vector<double> dist_sum(n, 0.0);
  std::vector<std::int64_t> dist(n, -1);
  std::vector<double> sigma(n, 0.0), delta(n, 0.0);
  std::vector<NodeId> order;
  order.reserve(n);

  for (NodeId s : sources) {
    order.clear();
    for (NodeId v = 0; v < n; ++v) {
      dist[v] = -1;
      sigma[v] = 0.0;
      delta[v] = 0.0;
    }
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId v = order[head];
      for (std::size_t e = graph.offsets[v]; e < graph.offsets[v + 1]; ++e) {
        const NodeId w = graph.neighbors[e];
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    for (std::size_t i = order.size(); i-- > 1;) {
      const NodeId w = order[i];
      for (std::size_t e = graph.offsets[w]; e < graph.offsets[w + 1]; ++e) {
        const NodeId v = graph.neighbors[e];
        if (dist[v] == dist[w] - 1) {
          delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
      }
      out.betweenness[w] += delta[w];
      ++reach[w];
      dist_sum[w] += static_cast<double>(dist[w]);
    }
  }

  const double scale =
      static_cast<double>(n) / static_cast<double>(sources.size()) / 2.0;
  for (NodeId v = 0; v < n; ++v) {
    out.betweenness[v] *= scale;
    if (reach[v] > 0) out.aspl[v] = dist_sum[v] / static_cast<double>(reach[v]);
  }
  return out;
}

std::vector<double> exact_betweenness(const SymmetricGraph& graph) {
  const std::size_t n = graph.num_nodes();
  std::vector<std::vector<std::int64_t>> dist(n,
                                              std::vector<std::int64_t>(n, -1));
  std::vector<std::vector<double>> sigma(n, std::vector<double>(n, 0.0));
  for (NodeId s = 0; s < n; ++s) {
    std::vector<NodeId> queue{s};
    dist[s][s] = 0;
    sigma[s][s] = 1.0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId v = queue[head];
      for (std::size_t e = graph.offsets[v]; e < graph.offsets[v + 1]; ++e) {
        const NodeId w = graph.neighbors[e];
        if (dist[s][w] < 0) {
          dist[s][w] = dist[s][v] + 1;
          queue.push_back(w);
        }
        if (dist[s][w] == dist[s][v] + 1) sigma[s][w] += sigma[s][v];
      }
    }
  }
  std::vector<double> out(n, 0.0);
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = s + 1; t < n; ++t) {
      if (dist[s][t] < 0) continue;
      for (NodeId v = 0; v < n; ++v) {
        if (v == s || v == t || dist[s][v] < 0 || dist[v][t] < 0) continue;
        if (dist[s][v] + dist[v][t] == dist[s][t]) {
          out[v] += sigma[s][v] * sigma[v][t] / sigma[s][t];
        }
      }
    }
  }
  return out;
}

FeatureMatrix node_metrics(const DirectedGraph& graph,
                           const EdgeWeights& weights,
                           const SybilMetricConfig& config,
                           std::uint64_t seed) {
  const std::size_t n = graph.num_nodes();
  const SymmetricGraph sym = symmetrize(graph, weights);
  const auto wants = [&](Feature f) {
    return std::find(config.features.begin(), config.features.end(), f) !=
           config.features.end();
  };

  std::vector<double> in_w, out_w, clustering, eigen;
  PathStats paths;
  if (wants(Feature::kInDegree) || wants(Feature::kOutDegree)) {
    in_w.assign(n, 0.0);
    out_w.assign(n, 0.0);
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v : graph.out_neighbors(u)) {
        const double w = weights.get(u, v);
        out_w[u] += w;
        in_w[v] += w;
      }
    }
  }
  if (wants(Feature::kClustering)) clustering = clustering_coefficients(sym);
  if (wants(Feature::kEigenvector)) eigen = eigenvector_centrality(sym);
  if (wants(Feature::kBetweenness) || wants(Feature::kAspl)) {
    std::vector<NodeId> sources;
    if (config.centrality_samples >= n) {
      sources.resize(n);
      for (NodeId v = 0; v < n; ++v) sources[v] = v;
    } else {
      std::vector<NodeId> all(n);
      for (NodeId v = 0; v < n; ++v) all[v] = v;
      Rng rng(derive_seed(seed, Stream::kCentrality));
      sources = sample_without_replacement(std::span<const NodeId>(all),
                                           config.centrality_samples, rng);
      std::sort(sources.begin(), sources.end());
    }
    paths = sampled_path_stats(sym, sources);
  }

  FeatureMatrix m;
  m.rows = n;
  for (Feature f : config.features) m.names.emplace_back(to_string(f));
  m.data.assign(n * m.cols(), 0.0);
  for (std::size_t c = 0; c < config.features.size(); ++c) {
    const std::vector<double>* column = nullptr;
    switch (config.features[c]) {
      case Feature::kInDegree:
        column = &in_w;
        break;
      case Feature::kOutDegree:
        column = &out_w;
        break;
      case Feature::kClustering:
        column = &clustering;
        break;
      case Feature::kEigenvector:
        column = &eigen;
        break;
      case Feature::kBetweenness:
        column = &paths.betweenness;
        break;
      case Feature::kAspl:
        column = &paths.aspl;
        break;
    }
    for (std::size_t r = 0; r < n; ++r) m.at(r, c) = (*column)[r];
  }
  return m;
}

void standardize(FeatureMatrix& features, std::span<const NodeId> rows) {
  const std::size_t cols = features.cols();
  for (std::size_t c = 0; c < cols; ++c) {
    double mean = 0.0;
    for (NodeId r : rows) mean += features.at(r, c);
    mean /= rows.empty() ? 1.0 : static_cast<double>(rows.size());
    double var = 0.0;
    for (NodeId r : rows) {
      const double d = features.at(r, c) - mean;
      var += d * d;
    }
    var /= rows.empty() ? 1.0 : static_cast<double>(rows.size());
    const double sd = std::sqrt(var);
    for (std::size_t r = 0; r < features.rows; ++r) {
      features.at(r, c) = sd > 0.0 ? (features.at(r, c) - mean) / sd : 0.0;
    }
  }
}

}  // namespace sybilbench
