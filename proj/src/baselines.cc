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

#include "emco/baselines.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace emco {

std::vector<size_t> NeighborIndex::query(const SparseVector& point, size_t k,
                                         std::optional<size_t> exclude) const {
  std::vector<std::pair<double, size_t>> scored;
  scored.reserve(reference_.size());
  for (size_t i = 0; i < reference_.size(); ++i) {
    if (exclude && *exclude == i) continue;
    scored.emplace_back(point.squared_distance(reference_[i]), i);
  }
  const size_t take = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take),
                    scored.end());
  std::vector<size_t> out;
  out.reserve(take);
  for (size_t i = 0; i < take; ++i) out.push_back(scored[i].second);
  return out;
}

std::vector<SparseVector> ros(std::span<const SparseVector> minority, size_t count,
                              Rng& rng) {
  if (minority.empty()) throw std::invalid_argument("ros: empty minority set");
  std::vector<SparseVector> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    out.push_back(minority[rng.uniform_index(minority.size())]);
  }
  return out;
}

namespace {

size_t effective_neighbors(size_t k, size_t m) {
  if (k == 0) throw std::invalid_argument("neighbor count k must be at least 1");
  if (m < 2) throw std::invalid_argument("interpolation needs at least two minority vectors");
  return std::min(k, m - 1);
}

SparseVector interpolate_toward_neighbor(std::span<const SparseVector> minority,
                                         size_t base,
                                         const std::vector<size_t>& neighbors,
                                         Rng& rng) {
  const size_t partner = neighbors[rng.uniform_index(neighbors.size())];
  const double gap = rng.uniform();
  return minority[base].interpolate(minority[partner], gap);
}

}  // namespace

std::vector<SparseVector> smote(std::span<const SparseVector> minority, size_t count,
                                size_t k, Rng& rng) {
  const size_t k_eff = effective_neighbors(k, minority.size());
  const NeighborIndex index(minority);
  std::vector<std::vector<size_t>> neighbors(minority.size());
  std::vector<SparseVector> out;
  out.reserve(count);
  for (size_t j = 0; j < count; ++j) {
    const size_t base = j % minority.size();
    if (neighbors[base].empty()) neighbors[base] = index.query_member(base, k_eff);
    out.push_back(interpolate_toward_neighbor(minority, base, neighbors[base], rng));
  }
  return out;
}

std::vector<double> adasyn_density_ratios(std::span<const SparseVector> minority,
                                          std::span<const SparseVector> majority,
                                          size_t k) {
  std::vector<SparseVector> combined(minority.begin(), minority.end());
  combined.insert(combined.end(), majority.begin(), majority.end());
  if (k == 0) throw std::invalid_argument("neighbor count k must be at least 1");
  const size_t k_eff = std::min(k, combined.size() - 1);
  const NeighborIndex index(combined);
  std::vector<double> ratios(minority.size(), 0.0);
  if (k_eff == 0) return ratios;
  for (size_t i = 0; i < minority.size(); ++i) {
    size_t majority_hits = 0;
    for (size_t nn : index.query_member(i, k_eff)) {
      if (nn >= minority.size()) ++majority_hits;
    }
    ratios[i] = static_cast<double>(majority_hits) / static_cast<double>(k_eff);
  }
  return ratios;
}

std::vector<size_t> apportion_largest_remainder(std::span<const double> weights,
                                                size_t count) {
  const size_t m = weights.size();
  if (m == 0) {
    if (count != 0) throw std::invalid_argument("apportion: no recipients");
    return {};
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("apportion: negative weight");
    total += w;
  }
  std::vector<double> shares(weights.begin(), weights.end());
  if (total <= 0.0) {
    std::fill(shares.begin(), shares.end(), 1.0);
    total = static_cast<double>(m);
  }

  std::vector<size_t> alloc(m, 0);
  std::vector<std::pair<double, size_t>> remainders;
  remainders.reserve(m);
  size_t assigned = 0;
  for (size_t i = 0; i < m; ++i) {
    const double quota = static_cast<double>(count) * shares[i] / total;
    alloc[i] = static_cast<size_t>(std::floor(quota));
    assigned += alloc[i];
    remainders.emplace_back(quota - std::floor(quota), i);
  }
  // Floors never sum past `count`; the deficit goes to the largest remainders.
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) {
                     if (a.first != b.first) return a.first > b.first;
                     return a.second < b.second;
                   });
  for (size_t r = 0; assigned < count; r = (r + 1) % m) {
    ++alloc[remainders[r].second];
    ++assigned;
  }
  return alloc;
}

std::vector<SparseVector> adasyn(std::span<const SparseVector> minority,
                                 std::span<const SparseVector> majority,
                                 size_t count, size_t k, Rng& rng) {
  const size_t k_eff = effective_neighbors(k, minority.size());
  const auto ratios = adasyn_density_ratios(minority, majority, k);
  const auto allotment = apportion_largest_remainder(ratios, count);
  const NeighborIndex index(minority);
  std::vector<SparseVector> out;
  out.reserve(count);
  for (size_t i = 0; i < minority.size(); ++i) {
    if (allotment[i] == 0) continue;
    const auto neighbors = index.query_member(i, k_eff);
    for (size_t g = 0; g < allotment[i]; ++g) {
      out.push_back(interpolate_toward_neighbor(minority, i, neighbors, rng));
    }
  }
  return out;
}

}  // namespace emco
