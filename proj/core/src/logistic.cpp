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

#include <cmath>
#include <string>

#include "sybilbench/detectors.hpp"
#include "sybilbench/errors.hpp"

namespace sybilbench {
namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + e^z) without overflow.
double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double linear(const LogisticModel& model, const FeatureMatrix& x, NodeId row) {
  double z = model.bias;
  for (std::size_t c = 0; c < x.cols(); ++c) {
    z += model.weights[c] * x.at(row, c);
  }
  return z;
}

}  // namespace

double logistic_loss(const FeatureMatrix& x, std::span<const NodeId> rows,
                     std::span<const std::uint8_t> y,
                     const LogisticModel& model, double l2,
                     std::vector<double>& grad_w, double& grad_b) {
  const std::size_t cols = x.cols();
  grad_w.assign(cols, 0.0);
  grad_b = 0.0;
  double loss = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double z = linear(model, x, rows[i]);
    // -[y log σ(z) + (1 - y) log(1 - σ(z))] = softplus(z) - y z
    loss += softplus(z) - (y[i] ? z : 0.0);
    const double err = sigmoid(z) - (y[i] ? 1.0 : 0.0);
    for (std::size_t c = 0; c < cols; ++c) grad_w[c] += err * x.at(rows[i], c);
    grad_b += err;
  }
  const double inv = rows.empty() ? 0.0 : 1.0 / static_cast<double>(rows.size());
  loss *= inv;
  grad_b *= inv;
  for (std::size_t c = 0; c < cols; ++c) {
    grad_w[c] = grad_w[c] * inv + l2 * model.weights[c];
    loss += 0.5 * l2 * model.weights[c] * model.weights[c];
  }
  return loss;
}

LogisticModel train_logistic(const FeatureMatrix& x,
                             std::span<const NodeId> rows,
                             std::span<const std::uint8_t> y,
                             const SybilMetricConfig& config) {
  LogisticModel model;
  model.weights.assign(x.cols(), 0.0);
  std::vector<double> grad_w;
  double grad_b = 0.0;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    logistic_loss(x, rows, y, model, config.l2, grad_w, grad_b);
    for (std::size_t c = 0; c < model.weights.size(); ++c) {
      model.weights[c] -= config.learning_rate * grad_w[c];
    }
    model.bias -= config.learning_rate * grad_b;
  }
  return model;
}

double predict_logistic(const LogisticModel& model, const FeatureMatrix& x,
                        NodeId row) {
  return sigmoid(linear(model, x, row));
}

ScoreVector sybilmetric_train_predict(FeatureMatrix features,
                                      const TrainTestSplit& split,
                                      const SybilMetricConfig& config) {
  std::vector<NodeId> rows;
  std::vector<std::uint8_t> y;
  for (NodeId v : split.train_benign) {
    rows.push_back(v);
    y.push_back(0);
  }
  for (NodeId v : split.train_sybil) {
    rows.push_back(v);
    y.push_back(1);
  }

  auto check = [&](NodeId v) {
    for (std::size_t c = 0; c < features.cols(); ++c) {
      if (!std::isfinite(features.at(v, c))) {
        throw ConfigError("non-finite feature '" + features.names[c] +
                          "' at node " + std::to_string(v));
      }
    }
  };
  for (NodeId v : rows) check(v);
  for (NodeId v : split.test_nodes) check(v);

  standardize(features, rows);
  const LogisticModel model = train_logistic(features, rows, y, config);

  ScoreVector out;
  out.nodes = split.test_nodes;
  out.scores.reserve(split.test_nodes.size());
  for (NodeId v : split.test_nodes) {
    out.scores.push_back(predict_logistic(model, features, v));
  }
  return out;
}

}  // namespace sybilbench
