/*
 * Copyright 2026 The EMCO Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "emco/classifier.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "emco/random.h"

namespace emco {
namespace {

double decision_value(std::span<const double> weights, double bias,
                      const SparseVector& x) {
  return x.dot(weights) + bias;
}

}  // namespace

LinearModel train_linear_svm(std::span<const SparseVector> inputs,
                             std::span<const int> labels, size_t dimension,
                             const TrainOptions& options, TrainReport* report) {
  if (inputs.size() != labels.size()) {
    throw std::invalid_argument("train: inputs and labels differ in length");
  }
  if (!(options.c > 0.0)) throw std::invalid_argument("train: c must be positive");
  bool has_pos = false;
  bool has_neg = false;
  for (int y : labels) {
    if (y == 1) {
      has_pos = true;
    } else if (y == -1) {
      has_neg = true;
    } else {
      throw std::invalid_argument("train: labels must be -1 or +1");
    }
  }
  if (!has_pos || !has_neg) {
    throw std::invalid_argument("train: both classes must be present");
  }
  for (const auto& x : inputs) {
    if (!x.empty() && x.entries().back().index >= dimension) {
      throw std::invalid_argument("train: feature index beyond dimension");
    }
  }

  const size_t n = inputs.size();
  const double upper = options.c;
  LinearModel model;
  model.weights.assign(dimension, 0.0);
  model.c = options.c;
  model.tol = options.tol;

  std::vector<double> alpha(n, 0.0);
  std::vector<double> diag(n);
  for (size_t i = 0; i < n; ++i) diag[i] = inputs[i].squared_norm() + 1.0;
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(options.seed);

  auto dual = [&] {
    double wsq = model.bias * model.bias;
    for (double w : model.weights) wsq += w * w;
    double asum = 0.0;
    for (double a : alpha) asum += a;
    return 0.5 * wsq - asum;
  };

  TrainReport local;
  size_t epoch = 0;
  bool converged = false;
  while (epoch < options.max_epochs) {
    for (size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);
    double pg_max = -std::numeric_limits<double>::infinity();
    double pg_min = std::numeric_limits<double>::infinity();
    for (size_t i : order) {
      const SparseVector& x = inputs[i];
      const double y = labels[i];
      const double g = y * decision_value(model.weights, model.bias, x) - 1.0;
      double pg = g;
      if (alpha[i] == 0.0) {
        pg = std::min(g, 0.0);
      } else if (alpha[i] == upper) {
        pg = std::max(g, 0.0);
      }
      pg_max = std::max(pg_max, pg);
      pg_min = std::min(pg_min, pg);
      if (std::fabs(pg) > 1e-12) {
        const double old = alpha[i];
        alpha[i] = std::clamp(old - g / diag[i], 0.0, upper);
        const double step = (alpha[i] - old) * y;
        for (const auto& e : x.entries()) model.weights[e.index] += step * e.value;
        model.bias += step;
      }
    }
    ++epoch;
    local.dual_history.push_back(dual());
    if (pg_max - pg_min <= options.tol) {
      converged = true;
      break;
    }
  }

  local.epochs = epoch;
  local.converged = converged;
  local.dual_objective = local.dual_history.empty() ? 0.0 : local.dual_history.back();
  local.primal_objective = primal_objective(model, inputs, labels);
  if (report != nullptr) *report = std::move(local);
  return model;
}

Prediction predict(const LinearModel& model, const SparseVector& input) {
  const double decision = decision_value(model.weights, model.bias, input);
  return {decision >= 0.0 ? 1 : -1, decision};
}

double primal_objective(const LinearModel& model,
                        std::span<const SparseVector> inputs,
                        std::span<const int> labels) {
  double wsq = model.bias * model.bias;
  for (double w : model.weights) wsq += w * w;
  double loss = 0.0;
  for (size_t i = 0; i < inputs.size(); ++i) {
    const double margin = labels[i] * decision_value(model.weights, model.bias, inputs[i]);
    loss += std::max(0.0, 1.0 - margin);
  }
  return 0.5 * wsq + model.c * loss;
}

void write_linear_model(const LinearModel& model, std::ostream& out) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g %.17g %zu\n", model.c, model.tol,
                model.dimension());
  out << buf;
  std::snprintf(buf, sizeof(buf), "%.17g\n", model.bias);
  out << buf;
  for (double w : model.weights) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", w);
    out << buf;
  }
}

}  // namespace emco
