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

// L2-regularized hinge-loss linear classifier trained by dual coordinate
// descent.
//
// The bias is an extra feature fixed at 1 and is regularized together with
// the weights, so the primal objective is
//
//   0.5 * (|w|^2 + b^2) + c * sum_i max(0, 1 - y_i * (w . x_i + b)).
//
// Each epoch visits the examples in a seeded random order and minimizes the
// dual exactly along one coordinate at a time. Training stops when the spread
// of the projected gradient (max - min) drops to `tol`, or after `max_epochs`.

#ifndef EMCO_CLASSIFIER_H_
#define EMCO_CLASSIFIER_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "emco/vectorize.h"

namespace emco {

struct TrainOptions {
  double c = 1.0;
  double tol = 1e-3;
  size_t max_epochs = 1000;
  uint64_t seed = 1;
};

struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  double c = 1.0;
  double tol = 1e-3;

  size_t dimension() const { return weights.size(); }
};

struct TrainReport {
  size_t epochs = 0;
  bool converged = false;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  // Dual objective after each epoch; non-increasing.
  std::vector<double> dual_history;
};

struct Prediction {
  int label;  // -1 or +1
  double decision;
};

// Labels must be -1 or +1 with both present. Feature indices must be below
// `dimension`.
LinearModel train_linear_svm(std::span<const SparseVector> inputs,
                             std::span<const int> labels, size_t dimension,
                             const TrainOptions& options,
                             TrainReport* report = nullptr);

// Features past the model dimension count as zero. A decision value of
// exactly zero predicts +1.
Prediction predict(const LinearModel& model, const SparseVector& input);

double primal_objective(const LinearModel& model,
                        std::span<const SparseVector> inputs,
                        std::span<const int> labels);

// Header line `c tol dimension`, bias line, then one weight per line.
void write_linear_model(const LinearModel& model, std::ostream& out);

}  // namespace emco

#endif  // EMCO_CLASSIFIER_H_
