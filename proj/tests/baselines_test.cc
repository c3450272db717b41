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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

#include "emco/random.h"
#include "emco/vectorize.h"

namespace emco {
namespace {

using Dense = std::vector<double>;

SparseVector sv(const Dense& d) { return SparseVector::from_dense(d); }

std::vector<SparseVector> random_points(Rng& rng, size_t n, size_t dim, double density) {
  std::vector<SparseVector> points;
  for (size_t i = 0; i < n; ++i) {
    Dense d(dim, 0.0);
    for (auto& x : d) {
      if (rng.uniform() < density) x = rng.uniform();
    }
    points.push_back(sv(d));
  }
  return points;
}

// Exhaustive dense scan: sort all other points by (distance, index).
std::vector<size_t> brute_force_knn(const std::vector<SparseVector>& refs,
                                    const Dense& query, size_t k, long exclude,
                                    size_t dim) {
  std::vector<std::pair<double, size_t>> all;
  for (size_t i = 0; i < refs.size(); ++i) {
    if (static_cast<long>(i) == exclude) continue;
    const Dense r = refs[i].to_dense(dim);
    double d = 0.0;
    for (size_t c = 0; c < dim; ++c) d += (r[c] - query[c]) * (r[c] - query[c]);
    all.emplace_back(d, i);
  }
  std::sort(all.begin(), all.end());
  std::vector<size_t> out;
  for (size_t i = 0; i < std::min(k, all.size()); ++i) out.push_back(all[i].second);
  return out;
}

// Smallest max-coordinate deviation of `y` from any segment [x, n], n in
// `candidates`, with the segment parameter restricted to [0, 1].
double segment_deviation(const Dense& y, const Dense& x,
                         const std::vector<Dense>& candidates) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& n : candidates) {
    double num = 0.0;
    double den = 0.0;
    for (size_t c = 0; c < y.size(); ++c) {
      num += (y[c] - x[c]) * (n[c] - x[c]);
      den += (n[c] - x[c]) * (n[c] - x[c]);
    }
    const double t = den == 0.0 ? 0.0 : std::clamp(num / den, 0.0, 1.0);
    double dev = 0.0;
    for (size_t c = 0; c < y.size(); ++c) {
      dev = std::max(dev, std::abs(y[c] - (x[c] + t * (n[c] - x[c]))));
    }
    best = std::min(best, dev);
  }
  return best;
}

TEST(Ros, Basics) {
  Rng rng(1);
  const std::vector<SparseVector> one = {sv({0.0, 1.0})};
  EXPECT_TRUE(ros(one, 0, rng).empty());
  const auto copies = ros(one, 5, rng);
  ASSERT_EQ(copies.size(), 5u);
  for (const auto& v : copies) EXPECT_EQ(v, one[0]);

  const auto points = random_points(rng, 6, 4, 0.7);
  for (const auto& v : ros(points, 200, rng)) {
    EXPECT_NE(std::find(points.begin(), points.end(), v), points.end());
  }
}

TEST(Smote, MidpointAndEndpointThroughInterpolation) {
  const SparseVector x = sv({0.0, 0.0});
  const SparseVector nn = sv({1.0, 1.0});
  EXPECT_EQ(x.interpolate(nn, 0.5).to_dense(2), (Dense{0.5, 0.5}));
  EXPECT_EQ(x.interpolate(nn, 0.0), x);
}

TEST(Smote, TwoPointsStayOnTheirSegment) {
  Rng rng(4);
  const std::vector<SparseVector> pts = {sv({0.0, 0.0}), sv({1.0, 1.0})};
  for (const auto& y : smote(pts, 1000, 5, rng)) {
    const Dense d = y.to_dense(2);
    EXPECT_EQ(d[0], d[1]);
    EXPECT_GE(d[0], 0.0);
    EXPECT_LE(d[0], 1.0);
  }
}

TEST(Smote, Errors) {
  Rng rng(1);
  const std::vector<SparseVector> one = {sv({1.0})};
  EXPECT_THROW(smote(one, 3, 5, rng), std::invalid_argument);
  const std::vector<SparseVector> two = {sv({1.0}), sv({2.0})};
  EXPECT_THROW(smote(two, 3, 0, rng), std::invalid_argument);
}

TEST(Smote, OutputsOnNeighborSegments) {
  Rng rng(21);
  const size_t dim = 8;
  const size_t k = 3;
  const auto points = random_points(rng, 12, dim, 0.6);
  const auto out = smote(points, 10000, k, rng);
  ASSERT_EQ(out.size(), 10000u);
  double worst = 0.0;
  for (size_t j = 0; j < out.size(); ++j) {
    const size_t base = j % points.size();
    const Dense x = points[base].to_dense(dim);
    std::vector<Dense> candidates;
    for (size_t n : brute_force_knn(points, x, k, static_cast<long>(base), dim)) {
      candidates.push_back(points[n].to_dense(dim));
    }
    worst = std::max(worst, segment_deviation(out[j].to_dense(dim), x, candidates));
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(Adasyn, DensityRatiosAndAllotment) {
  // m0 sits among majority points; m1's nearest neighbour is m0.
  const std::vector<SparseVector> minority = {sv({0.0, 0.0}), sv({1.0, 0.0})};
  const std::vector<SparseVector> majority = {sv({-0.1, 0.0}), sv({0.0, -0.1})};
  const auto r = adasyn_density_ratios(minority, majority, 1);
  EXPECT_EQ(r, (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(apportion_largest_remainder(r, 10), (std::vector<size_t>{10, 0}));

  Rng rng(8);
  for (const auto& y : adasyn(minority, majority, 10, 1, rng)) {
    const Dense d = y.to_dense(2);
    EXPECT_EQ(d[1], 0.0);
    EXPECT_GE(d[0], 0.0);
    EXPECT_LE(d[0], 1.0);
  }
}

TEST(Adasyn, UniformWeightsMatchSmoteCycling) {
  for (size_t m = 1; m < 12; ++m) {
    for (size_t count = 0; count < 40; ++count) {
      const std::vector<double> uniform(m, 0.3);
      const auto alloc = apportion_largest_remainder(uniform, count);
      for (size_t i = 0; i < m; ++i) {
        const size_t cycled = count / m + (i < count % m ? 1 : 0);
        EXPECT_LE(std::max(alloc[i], cycled) - std::min(alloc[i], cycled), 1u);
      }
      EXPECT_EQ(apportion_largest_remainder(std::vector<double>(m, 0.0), count), alloc);
    }
  }
}

TEST(Adasyn, AllotmentSumsToCount) {
  Rng rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t m = 1 + rng.uniform_index(20);
    std::vector<double> w(m);
    for (auto& x : w) x = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
    const size_t count = rng.uniform_index(500);
    const auto alloc = apportion_largest_remainder(w, count);
    EXPECT_EQ(std::accumulate(alloc.begin(), alloc.end(), size_t{0}), count);
  }
  const auto minority = random_points(rng, 9, 6, 0.5);
  const auto majority = random_points(rng, 30, 6, 0.5);
  for (size_t count : {0u, 1u, 7u, 101u}) {
    EXPECT_EQ(adasyn(minority, majority, count, 5, rng).size(), count);
  }
}

TEST(Adasyn, OutputsOnNeighborSegments) {
  Rng rng(31);
  const size_t dim = 6;
  const auto minority = random_points(rng, 10, dim, 0.6);
  const auto majority = random_points(rng, 40, dim, 0.6);
  const auto out = adasyn(minority, majority, 2000, 5, rng);
  std::vector<Dense> dense;
  for (const auto& p : minority) dense.push_back(p.to_dense(dim));
  for (const auto& y : out) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < minority.size(); ++i) {
      std::vector<Dense> others;
      for (size_t n : brute_force_knn(minority, dense[i], 5, static_cast<long>(i), dim)) {
        others.push_back(dense[n]);
      }
      best = std::min(best, segment_deviation(y.to_dense(dim), dense[i], others));
    }
    EXPECT_LE(best, 1e-9);
  }
}

TEST(NeighborIndex, MatchesBruteForceScan) {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const size_t n = 1 + rng.uniform_index(200);
    const size_t dim = 5;
    // Coarse coordinates force distance ties.
    std::vector<SparseVector> points;
    for (size_t i = 0; i < n; ++i) {
      Dense d(dim);
      for (auto& x : d) x = static_cast<double>(rng.uniform_index(3));
      points.push_back(sv(d));
    }
    const NeighborIndex index(points);
    for (size_t q = 0; q < std::min<size_t>(n, 25); ++q) {
      const size_t k = 1 + rng.uniform_index(10);
      const Dense qd = points[q].to_dense(dim);
      EXPECT_EQ(index.query_member(q, k),
                brute_force_knn(points, qd, k, static_cast<long>(q), dim));
      EXPECT_EQ(index.query(points[q], k), brute_force_knn(points, qd, k, -1, dim));
      for (size_t nn : index.query_member(q, k)) EXPECT_NE(nn, q);
    }
  }
}

}  // namespace
}  // namespace emco
