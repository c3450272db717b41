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

// Binary confusion statistics and their macro averages.

#ifndef EMCO_METRICS_H_
#define EMCO_METRICS_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>

namespace emco {

struct ConfusionCounts {
  size_t tp = 0;
  size_t fp = 0;
  size_t tn = 0;
  size_t fn = 0;

  size_t total() const { return tp + fp + tn + fn; }
  void add(bool actual_positive, bool predicted_positive);

  bool operator==(const ConfusionCounts&) const = default;
};

struct MetricValues {
  double recall = 0.0;
  double tnr = 0.0;
  double precision = 0.0;
  double balanced_accuracy = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
};

// F-beta with 0 returned when precision and recall are both zero.
double f_beta(double precision, double recall, double beta);

// Requires tp + fn >= 1 and tn + fp >= 1. Precision is 0 when nothing is
// predicted positive.
MetricValues compute_metrics(const ConfusionCounts& counts);

// Training-frequency bands used for reporting.
enum class FrequencyBand { kVeryLow, kLow };

inline constexpr double kVeryLowFrequencyBound = 0.015;

FrequencyBand band_for(double minority_train_frequency);
std::string_view band_name(FrequencyBand band);

struct ReportEntry {
  std::string category;
  size_t repetition = 0;
  double minority_train_frequency = 0.0;
  MetricValues metrics;
};

struct MacroAverage {
  size_t categories = 0;
  MetricValues metrics;
};

// Averages repetitions within each category first, then categories with
// equal weight. Requires a nonempty input.
MacroAverage macro_average(std::span<const ReportEntry> entries);

// macro_average() restricted to each band that has at least one category.
std::map<FrequencyBand, MacroAverage> macro_average_by_band(
    std::span<const ReportEntry> entries);

}  // namespace emco

#endif  // EMCO_METRICS_H_
