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

// Vocabulary growth, Heaps' law fitting and synthetic-vocabulary evaluation.

#ifndef EMCO_ANALYSIS_H_
#define EMCO_ANALYSIS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "emco/corpus.h"
#include "emco/markov.h"
#include "emco/metrics.h"

namespace emco {

struct GrowthPoint {
  size_t total_words = 0;  // A
  size_t vocab_size = 0;   // T
  // Words first seen in this batch that belong to the reference vocabulary.
  std::optional<size_t> new_known_in_reference;
};

// Adds documents in the given order, `step` at a time (the last batch may be
// shorter), recording one point per batch. When `reference_vocabulary` is
// given, each point also counts the batch's new words found in it.
std::vector<GrowthPoint> growth_curve(
    std::span<const TokenSequence> documents, size_t step,
    const std::unordered_set<std::string>* reference_vocabulary = nullptr);

// Seeded Fisher-Yates permutation of [0, n).
std::vector<size_t> shuffled_order(size_t n, uint64_t seed);

struct HeapsFit {
  double k = 0.0;
  double theta = 0.0;
  double r2 = 0.0;
};

// Ordinary least squares of ln T on ln A. Requires at least two distinct A
// values and A, T >= 1.
HeapsFit fit_heaps(std::span<const GrowthPoint> points);

struct VocabExpansionReport {
  ConfusionCounts counts;
  // Absent when the majority-only vocabulary is empty or lacks one class.
  std::optional<MetricValues> metrics;
  // Distinct synthetic tokens outside the minority vocabulary.
  size_t new_words = 0;
  bool empty_vocabulary = false;
};

// Each majority-only word is one observation: actually positive when it
// occurs in a minority test document, predicted positive when it occurs in a
// synthetic document.
VocabExpansionReport vocab_expansion_eval(std::span<const TokenSequence> synthetic,
                                          const VocabPartition& partition,
                                          std::span<const TokenSequence> minority_test);

}  // namespace emco

#endif  // EMCO_ANALYSIS_H_
