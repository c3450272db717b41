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

#include "emco/metrics.h"

#include <stdexcept>
#include <vector>

namespace emco {

void ConfusionCounts::add(bool actual_positive, bool predicted_positive) {
  if (actual_positive) {
    ++(predicted_positive ? tp : fn);
  } else {
    ++(predicted_positive ? fp : tn);
  }
}

double f_beta(double precision, double recall, double beta) {
  const double b2 = beta * beta;
  const double denom = b2 * precision + recall;
  if (denom <= 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / denom;
}

MetricValues compute_metrics(const ConfusionCounts& counts) {
  if (counts.tp + counts.fn == 0) {
    throw std::invalid_argument("metrics: no actual positives, recall undefined");
  }
  if (counts.tn + counts.fp == 0) {
    throw std::invalid_argument("metrics: no actual negatives, tnr undefined");
  }
  MetricValues m;
  m.recall = static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fn);
  m.tnr = static_cast<double>(counts.tn) / static_cast<double>(counts.tn + counts.fp);
  const size_t predicted = counts.tp + counts.fp;
  m.precision = predicted == 0
                    ? 0.0
                    : static_cast<double>(counts.tp) / static_cast<double>(predicted);
  m.balanced_accuracy = (m.recall + m.tnr) / 2.0;
  m.f1 = f_beta(m.precision, m.recall, 1.0);
  m.f2 = f_beta(m.precision, m.recall, 2.0);
  return m;
}

FrequencyBand band_for(double minority_train_frequency) {
  return minority_train_frequency < kVeryLowFrequencyBound ? FrequencyBand::kVeryLow
                                                           : FrequencyBand::kLow;
}

std::string_view band_name(FrequencyBand band) {
  return band == FrequencyBand::kVeryLow ? "very_low" : "low";
}

namespace {

void accumulate(MetricValues& sum, const MetricValues& m) {
  sum.recall += m.recall;
  sum.tnr += m.tnr;
  sum.precision += m.precision;
  sum.balanced_accuracy += m.balanced_accuracy;
  sum.f1 += m.f1;
  sum.f2 += m.f2;
}

MetricValues scaled(MetricValues m, double factor) {
  m.recall *= factor;
  m.tnr *= factor;
  m.precision *= factor;
  m.balanced_accuracy *= factor;
  m.f1 *= factor;
  m.f2 *= factor;
  return m;
}

}  // namespace

MacroAverage macro_average(std::span<const ReportEntry> entries) {
  if (entries.empty()) throw std::invalid_argument("macro_average: no entries");
  struct CategorySum {
    MetricValues sum;
    size_t repetitions = 0;
  };
  std::map<std::string, CategorySum> per_category;
  for (const auto& e : entries) {
    auto& c = per_category[e.category];
    accumulate(c.sum, e.metrics);
    ++c.repetitions;
  }
  MacroAverage out;
  for (const auto& [name, c] : per_category) {
    accumulate(out.metrics, scaled(c.sum, 1.0 / static_cast<double>(c.repetitions)));
  }
  out.categories = per_category.size();
  out.metrics = scaled(out.metrics, 1.0 / static_cast<double>(out.categories));
  return out;
}

std::map<FrequencyBand, MacroAverage> macro_average_by_band(
    std::span<const ReportEntry> entries) {
  std::map<FrequencyBand, std::vector<ReportEntry>> split;
  for (const auto& e : entries) {
    split[band_for(e.minority_train_frequency)].push_back(e);
  }
  std::map<FrequencyBand, MacroAverage> out;
  for (const auto& [band, group] : split) out.emplace(band, macro_average(group));
  return out;
}

}  // namespace emco
