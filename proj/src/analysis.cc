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

#include "emco/analysis.h"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "emco/random.h"

namespace emco {

std::vector<GrowthPoint> growth_curve(
    std::span<const TokenSequence> documents, size_t step,
    const std::unordered_set<std::string>* reference_vocabulary) {
  if (step == 0) throw std::invalid_argument("growth_curve: step must be >= 1");
  std::vector<GrowthPoint> points;
  std::unordered_set<std::string> seen;
  size_t words = 0;
  for (size_t start = 0; start < documents.size(); start += step) {
    const size_t end = std::min(documents.size(), start + step);
    size_t known = 0;
    for (size_t d = start; d < end; ++d) {
      words += documents[d].size();
      for (const auto& token : documents[d]) {
        if (seen.insert(token).second && reference_vocabulary != nullptr &&
            reference_vocabulary->count(token) != 0) {
          ++known;
        }
      }
    }
    GrowthPoint p{words, seen.size(), std::nullopt};
    if (reference_vocabulary != nullptr) p.new_known_in_reference = known;
    points.push_back(p);
  }
  return points;
}

std::vector<size_t> shuffled_order(size_t n, uint64_t seed) {
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);
  return order;
}

HeapsFit fit_heaps(std::span<const GrowthPoint> points) {
  if (points.size() < 2) throw std::invalid_argument("fit_heaps: need at least two points");
  const double n = static_cast<double>(points.size());
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& p : points) {
    if (p.total_words < 1 || p.vocab_size < 1) {
      throw std::invalid_argument("fit_heaps: A and T must be at least 1");
    }
    sx += std::log(static_cast<double>(p.total_words));
    sy += std::log(static_cast<double>(p.vocab_size));
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& p : points) {
    const double dx = std::log(static_cast<double>(p.total_words)) - mx;
    const double dy = std::log(static_cast<double>(p.vocab_size)) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) throw std::invalid_argument("fit_heaps: all A values are equal");
  HeapsFit fit;
  fit.theta = sxy / sxx;
  fit.k = std::exp(my - fit.theta * mx);
  double ss_res = 0.0;
  for (const auto& p : points) {
    const double x = std::log(static_cast<double>(p.total_words));
    const double y = std::log(static_cast<double>(p.vocab_size));
    const double r = y - (my + fit.theta * (x - mx));
    ss_res += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

VocabExpansionReport vocab_expansion_eval(std::span<const TokenSequence> synthetic,
                                          const VocabPartition& partition,
                                          std::span<const TokenSequence> minority_test) {
  std::unordered_set<std::string> synthetic_words;
  for (const auto& doc : synthetic) synthetic_words.insert(doc.begin(), doc.end());
  std::unordered_set<std::string> test_words;
  for (const auto& doc : minority_test) test_words.insert(doc.begin(), doc.end());

  VocabExpansionReport report;
  for (const auto& word : synthetic_words) {
    auto state = partition.index_of(word);
    if (!state || !partition.is_minority(*state)) ++report.new_words;
  }
  const auto maj_only = partition.majority_only_tokens();
  report.empty_vocabulary = maj_only.empty();
  for (const auto& word : maj_only) {
    report.counts.add(test_words.count(word) != 0, synthetic_words.count(word) != 0);
  }
  const auto& c = report.counts;
  if (c.tp + c.fn > 0 && c.tn + c.fp > 0) report.metrics = compute_metrics(c);
  return report;
}

}  // namespace emco
