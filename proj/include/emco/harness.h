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

// Experiment orchestration: one-vs-rest tasks x oversampling methods x
// sampling ratios x repetitions, with per-run seeds derived from the run's
// identity so results do not depend on scheduling or worker count.

#ifndef EMCO_HARNESS_H_
#define EMCO_HARNESS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "emco/analysis.h"
#include "emco/classifier.h"
#include "emco/corpus.h"
#include "emco/metrics.h"
#include "json.hpp"

namespace emco {

enum class Method { kNone, kRos, kSmote, kAdasyn, kMco, kEmco };

std::string_view method_name(Method method);
Method parse_method(std::string_view name);

struct ExperimentConfig {
  std::string corpus_path;
  std::string dataset;  // defaults to the corpus file stem
  std::string stopwords_path;  // empty: built-in English list
  std::string stemmer = "porter";  // "porter" or "identity"
  std::vector<Method> methods{Method::kNone, Method::kRos, Method::kSmote,
                              Method::kAdasyn, Method::kMco, Method::kEmco};
  std::vector<double> gammas{1.0, 0.1};
  std::vector<double> sampling_ratios{0.1, 0.2};
  size_t repetitions = 5;
  size_t k_neighbors = 5;
  double c = 1.0;
  double tol = 1e-3;
  size_t max_iters = 1000;
  uint64_t master_seed = 2024;
  std::string output_dir = "results";
  size_t workers = 1;

  // Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

// Unknown keys are rejected. Keys mirror the CLI flags.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json config_to_json(const ExperimentConfig& config);

// Smallest s >= 0 with (m + s) / (n + s) >= ratio.
size_t synthetic_count(size_t n_train, size_t m_minority, double ratio);

// Seed of one oversampling run. MCO is keyed as EMCO with gamma 0, so the two
// produce identical samples.
uint64_t derive_run_seed(uint64_t master, const std::string& category, Method method,
                         double gamma, double ratio, size_t repetition);

// Loads and preprocesses the configured corpus.
Corpus load_experiment_corpus(const ExperimentConfig& config);

struct RunRow {
  std::string dataset;
  std::string category;
  Method method = Method::kNone;
  std::optional<double> gamma;  // set for mco and emco
  double sampling_ratio = 0.0;
  size_t repetition = 0;
  double minority_train_frequency = 0.0;
  size_t synthetic = 0;
  ConfusionCounts counts;
  MetricValues metrics;
};

struct SkippedTask {
  std::string category;
  double sampling_ratio = 0.0;
  std::string reason;
};

struct AggregateRow {
  Method method = Method::kNone;
  std::optional<double> gamma;
  double sampling_ratio = 0.0;
  std::string band;  // "very_low", "low" or "all"
  MacroAverage average;
};

struct ExperimentResult {
  std::vector<RunRow> rows;
  std::vector<AggregateRow> aggregates;
  std::vector<SkippedTask> skipped;
  std::vector<std::string> notes;
};

ExperimentResult run_experiment(const ExperimentConfig& config, const Corpus& corpus);

// `name` for plain methods, `emco(gamma=G)` for EMCO.
std::string method_label(Method method, std::optional<double> gamma);

std::string runs_csv(const ExperimentResult& result);
nlohmann::json aggregate_json(const ExperimentResult& result);
nlohmann::json manifest_json(const ExperimentConfig& config,
                             const ExperimentResult& result);

// Writes runs.csv, aggregate.json and manifest.json into config.output_dir.
void write_experiment(const ExperimentConfig& config, const ExperimentResult& result);

struct SweepRow {
  double gamma = 0.0;
  double sampling_ratio = 0.0;
  std::string band;
  MacroAverage average;
};

// EMCO alone over `gammas`, macro-averaged per (gamma, ratio, band).
std::vector<SweepRow> gamma_sweep(const ExperimentConfig& config, const Corpus& corpus,
                                  const std::vector<double>& gammas);
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct VocabEvalRow {
  std::string category;
  double gamma = 0.0;
  double sampling_ratio = 0.0;
  size_t repetition = 0;
  VocabExpansionReport report;
};

// Synthetic-vocabulary expansion of EMCO samples against each task's minority
// test vocabulary. Samples match the ones run_experiment() draws.
std::vector<VocabEvalRow> vocab_eval(const ExperimentConfig& config,
                                     const Corpus& corpus,
                                     const std::vector<double>& gammas);
std::string vocab_eval_csv(const std::vector<VocabEvalRow>& rows);
nlohmann::json vocab_eval_summary(const std::vector<VocabEvalRow>& rows);

}  // namespace emco

#endif  // EMCO_HARNESS_H_
