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

// Vector-space oversamplers: random oversampling, SMOTE and ADASYN.
//
// All three operate on tf-idf vectors. Synthetic SMOTE/ADASYN points are
// interpolations x + u * (x_nn - x) with u uniform on [0, 1) and are not
// re-normalized, so they stay inside the convex hull of the minority sample.

#ifndef EMCO_BASELINES_H_
#define EMCO_BASELINES_H_

#include <optional>
#include <span>
#include <vector>

#include "emco/random.h"
#include "emco/vectorize.h"

namespace emco {

// Exhaustive Euclidean k-nearest-neighbor search. Distance ties go to the
// lower reference index. The referenced vectors must outlive the index.
class NeighborIndex {
 public:
  explicit NeighborIndex(std::span<const SparseVector> reference)
      : reference_(reference) {}

  size_t size() const { return reference_.size(); }

  // Up to k nearest reference indices, closest first. `exclude` removes one
  // reference point from consideration.
  std::vector<size_t> query(const SparseVector& point, size_t k,
                            std::optional<size_t> exclude = std::nullopt) const;

  // Neighbors of a reference member, never including the member itself.
  std::vector<size_t> query_member(size_t member, size_t k) const {
    return query(reference_[member], k, member);
  }

 private:
  std::span<const SparseVector> reference_;
};

// Uniform draws with replacement. Requires a nonempty minority.
std::vector<SparseVector> ros(std::span<const SparseVector> minority, size_t count,
                              Rng& rng);

// Base points are cycled in order; each synthetic point interpolates toward a
// uniformly chosen one of the base's min(k, m - 1) nearest minority
// neighbors. Requires k >= 1 and at least two minority vectors.
std::vector<SparseVector> smote(std::span<const SparseVector> minority, size_t count,
                                size_t k, Rng& rng);

// Share of majority points among each minority point's k nearest neighbors in
// the combined training set (k capped at n - 1).
std::vector<double> adasyn_density_ratios(std::span<const SparseVector> minority,
                                          std::span<const SparseVector> majority,
                                          size_t k);

// Splits `count` proportionally to `weights` by largest remainder; ties in
// the remainder go to the lower index. The result always sums to `count`.
// All-zero weights are treated as uniform.
std::vector<size_t> apportion_largest_remainder(std::span<const double> weights,
                                                size_t count);

// Generates g_i points around minority point i, where g is the largest
// remainder apportionment of `count` by the density ratios. Interpolation
// partners come from the minority neighbors as in smote().
std::vector<SparseVector> adasyn(std::span<const SparseVector> minority,
                                 std::span<const SparseVector> majority,
                                 size_t count, size_t k, Rng& rng);

}  // namespace emco

#endif  // EMCO_BASELINES_H_
