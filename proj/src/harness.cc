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

#include "emco/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "emco/baselines.h"
#include "emco/markov.h"
#include "emco/random.h"
#include "emco/vectorize.h"

namespace emco {

namespace {

constexpr Method kAllMethods[] = {Method::kNone,   Method::kRos, Method::kSmote,
                                  Method::kAdasyn, Method::kMco, Method::kEmco};

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

std::string format_metric(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

bool is_markov(Method method) {
  return method == Method::kMco || method == Method::kEmco;
}

// Runs fn(i) for i in [0, n) on up to `workers` threads. The first exception
// is rethrown after all workers stop.
template <typename Fn>
void parallel_for(size_t n, size_t workers, Fn&& fn) {
  workers = std::max<size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(n);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// One (method, gamma) column of the experiment matrix.
struct Variant {
  Method method;
  std::optional<double> gamma;
};

std::vector<Variant> expand_variants(const ExperimentConfig& config) {
  std::vector<Variant> variants;
  for (Method m : config.methods) {
    if (m == Method::kEmco) {
      for (double g : config.gammas) variants.push_back({m, g});
    } else if (m == Method::kMco) {
      variants.push_back({m, 0.0});
    } else {
      variants.push_back({m, std::nullopt});
    }
  }
  return variants;
}

// Immutable state shared by every run.
struct Context {
  const ExperimentConfig& config;
  const Corpus& corpus;
  TfidfModel tfidf;
  std::vector<SparseVector> vectors;  // one per corpus document
  std::vector<size_t> train_indices;
  std::map<std::pair<std::string, double>, TransitionModel> models;

  Context(const ExperimentConfig& cfg, const Corpus& docs) : config(cfg), corpus(docs) {
    std::vector<TokenSequence> training;
    for (size_t i = 0; i < corpus.size(); ++i) {
      if (corpus[i].split == Split::kTrain) {
        train_indices.push_back(i);
        training.push_back(corpus[i].tokens);
      }
    }
    tfidf = TfidfModel::fit(std::span<const TokenSequence>(training));
    vectors.reserve(corpus.size());
    for (const auto& doc : corpus) vectors.push_back(tfidf.transform(doc.tokens));
  }

  std::vector<TokenSequence> tokens_of(const std::vector<size_t>& indices) const {
    std::vector<TokenSequence> out;
    out.reserve(indices.size());
    for (size_t i : indices) out.push_back(corpus[i].tokens);
    return out;
  }

  std::vector<SparseVector> vectors_of(const std::vector<size_t>& indices) const {
    std::vector<SparseVector> out;
    out.reserve(indices.size());
    for (size_t i : indices) out.push_back(vectors[i]);
    return out;
  }

  const TransitionModel& model_for(const OvrTask& task, double gamma) const {
    return models.at({task.category, gamma});
  }
};

// Builds every transition model the variants need, one per (category, gamma).
void build_models(Context& ctx, const std::vector<const OvrTask*>& tasks,
                  const std::vector<double>& gammas) {
  std::vector<std::pair<const OvrTask*, double>> wanted;
  std::set<std::pair<std::string, double>> keys;
  for (const OvrTask* task : tasks) {
    for (double g : gammas) {
      if (keys.insert({task->category, g}).second) wanted.emplace_back(task, g);
    }
  }
  std::vector<std::optional<TransitionModel>> built(wanted.size());
  parallel_for(wanted.size(), ctx.config.workers, [&](size_t i) {
    const auto& [task, g] = wanted[i];
    built[i] = TransitionModel::estimate(ctx.tokens_of(task->train_minority),
                                         ctx.tokens_of(task->train_majority), g);
  });
  for (size_t i = 0; i < wanted.size(); ++i) {
    ctx.models.emplace(std::make_pair(wanted[i].first->category, wanted[i].second),
                       std::move(*built[i]));
  }
}

std::vector<SparseVector> synthesize(const Context& ctx, const OvrTask& task,
                                     Method method, double gamma, size_t count,
                                     Rng& rng) {
  if (count == 0 || method == Method::kNone) return {};
  const size_t k = ctx.config.k_neighbors;
  switch (method) {
    case Method::kRos:
      return ros(ctx.vectors_of(task.train_minority), count, rng);
    case Method::kSmote:
    case Method::kAdasyn: {
      const auto minority = ctx.vectors_of(task.train_minority);
      if (minority.size() < 2) return ros(minority, count, rng);
      if (method == Method::kSmote) return smote(minority, count, k, rng);
      return adasyn(minority, ctx.vectors_of(task.train_majority), count, k, rng);
    }
    case Method::kMco:
    case Method::kEmco: {
      const auto docs = oversample(ctx.model_for(task, gamma), count, rng);
      std::vector<SparseVector> out;
      out.reserve(docs.size());
      for (const auto& doc : docs) out.push_back(ctx.tfidf.transform(doc));
      return out;
    }
    case Method::kNone:
      break;
  }
  return {};
}

struct RunOutcome {
  ConfusionCounts counts;
  size_t synthetic = 0;
};

RunOutcome run_once(const Context& ctx, const OvrTask& task, Method method,
                    double gamma, double ratio, size_t repetition) {
  const ExperimentConfig& cfg = ctx.config;
  const uint64_t seed =
      derive_run_seed(cfg.master_seed, task.category, method, gamma, ratio, repetition);
  Rng rng(seed);
  const size_t count =
      method == Method::kNone
          ? 0
          : synthetic_count(task.train_size(), task.train_minority.size(), ratio);
  auto synthetic = synthesize(ctx, task, method, gamma, count, rng);

  std::vector<SparseVector> inputs;
  std::vector<int> labels;
  inputs.reserve(ctx.train_indices.size() + synthetic.size());
  labels.reserve(inputs.capacity());
  for (size_t i : ctx.train_indices) {
    inputs.push_back(ctx.vectors[i]);
    labels.push_back(ctx.corpus[i].has_label(task.category) ? 1 : -1);
  }
  for (auto& v : synthetic) {
    inputs.push_back(std::move(v));
    labels.push_back(1);
  }

  TrainOptions options;
  options.c = cfg.c;
  options.tol = cfg.tol;
  options.max_epochs = cfg.max_iters;
  options.seed = SeedBuilder(seed).add("classifier").seed();
  const LinearModel model =
      train_linear_svm(inputs, labels, ctx.tfidf.dimension(), options);

  RunOutcome outcome;
  outcome.synthetic = count;
  for (size_t t = 0; t < task.test.size(); ++t) {
    const bool predicted = predict(model, ctx.vectors[task.test[t]]).label == 1;
    outcome.counts.add(task.test_positive[t], predicted);
  }
  return outcome;
}

std::string corpus_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

}  // namespace

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kNone: return "none";
    case Method::kRos: return "ros";
    case Method::kSmote: return "smote";
    case Method::kAdasyn: return "adasyn";
    case Method::kMco: return "mco";
    case Method::kEmco: return "emco";
  }
  return "none";
}

Method parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown method: " + std::string(name));
}

std::string method_label(Method method, std::optional<double> gamma) {
  if (method == Method::kEmco && gamma) {
    return "emco(gamma=" + format_number(*gamma) + ")";
  }
  return std::string(method_name(method));
}

void ExperimentConfig::validate() const {
  if (methods.empty()) throw std::invalid_argument("config: no methods selected");
  if (sampling_ratios.empty()) throw std::invalid_argument("config: no sampling ratios");
  for (double r : sampling_ratios) {
    if (!(r > 0.0 && r < 1.0)) {
      throw std::invalid_argument("config: sampling ratios must lie in (0, 1)");
    }
  }
  if (repetitions < 1) throw std::invalid_argument("config: repetitions must be >= 1");
  if (k_neighbors < 1) throw std::invalid_argument("config: k must be >= 1");
  if (std::find(methods.begin(), methods.end(), Method::kEmco) != methods.end()) {
    if (gammas.empty()) throw std::invalid_argument("config: emco needs at least one gamma");
  }
  for (double g : gammas) {
    if (!(g >= 0.0)) throw std::invalid_argument("config: gamma must be nonnegative");
  }
  if (!(c > 0.0)) throw std::invalid_argument("config: c must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
  if (stemmer != "porter" && stemmer != "identity") {
    throw std::invalid_argument("config: stemmer must be \"porter\" or \"identity\"");
  }
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  static const std::set<std::string> kKeys = {
      "corpus", "dataset", "stopwords", "stemmer", "methods", "gammas",
      "ratios", "repetitions", "k", "c", "tol", "max_iters", "seed", "output",
      "workers"};
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (kKeys.count(key) == 0) throw std::invalid_argument("config: unknown key " + key);
  }
  ExperimentConfig cfg;
  try {
    if (j.contains("corpus")) cfg.corpus_path = j["corpus"].get<std::string>();
    if (j.contains("dataset")) cfg.dataset = j["dataset"].get<std::string>();
    if (j.contains("stopwords")) cfg.stopwords_path = j["stopwords"].get<std::string>();
    if (j.contains("stemmer")) cfg.stemmer = j["stemmer"].get<std::string>();
    if (j.contains("methods")) {
      cfg.methods.clear();
      for (const auto& m : j["methods"]) cfg.methods.push_back(parse_method(m.get<std::string>()));
    }
    if (j.contains("gammas")) cfg.gammas = j["gammas"].get<std::vector<double>>();
    if (j.contains("ratios")) cfg.sampling_ratios = j["ratios"].get<std::vector<double>>();
    if (j.contains("repetitions")) cfg.repetitions = j["repetitions"].get<size_t>();
    if (j.contains("k")) cfg.k_neighbors = j["k"].get<size_t>();
    if (j.contains("c")) cfg.c = j["c"].get<double>();
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
    if (j.contains("max_iters")) cfg.max_iters = j["max_iters"].get<size_t>();
    if (j.contains("seed")) cfg.master_seed = j["seed"].get<uint64_t>();
    if (j.contains("output")) cfg.output_dir = j["output"].get<std::string>();
    if (j.contains("workers")) cfg.workers = j["workers"].get<size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return config_from_json(j);
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["corpus"] = config.corpus_path;
  j["dataset"] = config.dataset;
  j["stopwords"] = config.stopwords_path;
  j["stemmer"] = config.stemmer;
  std::vector<std::string> methods;
  for (Method m : config.methods) methods.emplace_back(method_name(m));
  j["methods"] = methods;
  j["gammas"] = config.gammas;
  j["ratios"] = config.sampling_ratios;
  j["repetitions"] = config.repetitions;
  j["k"] = config.k_neighbors;
  j["c"] = config.c;
  j["tol"] = config.tol;
  j["max_iters"] = config.max_iters;
  j["seed"] = config.master_seed;
  j["output"] = config.output_dir;
  j["workers"] = config.workers;
  return j;
}

size_t synthetic_count(size_t n_train, size_t m_minority, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw std::invalid_argument("synthetic_count: ratio must lie in (0, 1)");
  }
  if (m_minority > n_train) {
    throw std::invalid_argument("synthetic_count: minority larger than training set");
  }
  const double n = static_cast<double>(n_train);
  const double m = static_cast<double>(m_minority);
  auto reaches = [&](double s) { return (m + s) / (n + s) >= ratio; };
  double s = std::max(0.0, std::ceil((ratio * n - m) / (1.0 - ratio)));
  // The closed form can land one off under rounding; settle on the exact
  // smallest count under the same comparison callers use.
  while (s > 0.0 && reaches(s - 1.0)) s -= 1.0;
  while (!reaches(s)) s += 1.0;
  return static_cast<size_t>(s);
}

uint64_t derive_run_seed(uint64_t master, const std::string& category, Method method,
                         double gamma, double ratio, size_t repetition) {
  SeedBuilder builder(master);
  builder.add(category);
  if (method == Method::kNone) {
    // Shared by every ratio: the baseline does not depend on it.
    return builder.add("none").add(static_cast<uint64_t>(repetition)).seed();
  }
  if (is_markov(method)) {
    builder.add("emco").add(method == Method::kMco ? 0.0 : gamma);
  } else {
    builder.add(method_name(method));
  }
  return builder.add(ratio).add(static_cast<uint64_t>(repetition)).seed();
}

Corpus load_experiment_corpus(const ExperimentConfig& config) {
  const auto raw = load_corpus_jsonl(config.corpus_path);
  const StopwordSet stopwords = config.stopwords_path.empty()
                                    ? english_stopwords()
                                    : load_stopwords(config.stopwords_path);
  const Stemmer stemmer =
      config.stemmer == "identity" ? identity_stemmer() : porter_stemmer();
  return preprocess(raw, stopwords, stemmer);
}

ExperimentResult run_experiment(const ExperimentConfig& config, const Corpus& corpus) {
  config.validate();
  Context ctx(config, corpus);
  const std::string dataset =
      config.dataset.empty() ? corpus_stem(config.corpus_path) : config.dataset;
  const auto variants = expand_variants(config);

  ExperimentResult result;
  std::vector<std::vector<OvrTask>> tasks_by_ratio;
  std::vector<const OvrTask*> evaluable;
  std::set<std::string> seen_categories;
  for (double ratio : config.sampling_ratios) {
    tasks_by_ratio.push_back(build_ovr_tasks(corpus, ratio));
  }
  for (size_t r = 0; r < tasks_by_ratio.size(); ++r) {
    for (const auto& task : tasks_by_ratio[r]) {
      if (!task.evaluable) {
        result.skipped.push_back({task.category, config.sampling_ratios[r], task.skip_reason});
        continue;
      }
      if (seen_categories.insert(task.category).second) evaluable.push_back(&task);
    }
  }

  std::vector<double> model_gammas;
  for (const auto& v : variants) {
    if (is_markov(v.method) &&
        std::find(model_gammas.begin(), model_gammas.end(), *v.gamma) == model_gammas.end()) {
      model_gammas.push_back(*v.gamma);
    }
  }
  build_models(ctx, evaluable, model_gammas);

  for (const OvrTask* task : evaluable) {
    if (task->train_minority.size() < 2) {
      for (const auto& v : variants) {
        if (v.method == Method::kSmote || v.method == Method::kAdasyn) {
          result.notes.push_back("category " + task->category + ": " +
                                 std::string(method_name(v.method)) +
                                 " fell back to ros (fewer than two minority documents)");
        }
      }
    }
  }

  struct Job {
    const OvrTask* task;
    Variant variant;
    double ratio;
    size_t repetition;
  };
  std::vector<Job> jobs;
  // Baseline runs are keyed by (category, repetition) and shared across ratios.
  std::map<std::pair<std::string, size_t>, size_t> baseline_job;
  struct RowRef {
    const OvrTask* task;
    Variant variant;
    double ratio;
    size_t repetition;
    size_t job;
  };
  std::vector<RowRef> refs;
  for (size_t r = 0; r < tasks_by_ratio.size(); ++r) {
    const double ratio = config.sampling_ratios[r];
    for (const auto& task : tasks_by_ratio[r]) {
      if (!task.evaluable) continue;
      for (const auto& v : variants) {
        for (size_t rep = 0; rep < config.repetitions; ++rep) {
          size_t job;
          if (v.method == Method::kNone) {
            auto [it, inserted] = baseline_job.try_emplace({task.category, rep}, jobs.size());
            if (inserted) jobs.push_back({&task, v, ratio, rep});
            job = it->second;
          } else {
            job = jobs.size();
            jobs.push_back({&task, v, ratio, rep});
          }
          refs.push_back({&task, v, ratio, rep, job});
        }
      }
    }
  }

  std::vector<RunOutcome> outcomes(jobs.size());
  parallel_for(jobs.size(), config.workers, [&](size_t i) {
    const Job& job = jobs[i];
    outcomes[i] = run_once(ctx, *job.task, job.variant.method,
                           job.variant.gamma.value_or(0.0), job.ratio, job.repetition);
  });

  for (const auto& ref : refs) {
    RunRow row;
    row.dataset = dataset;
    row.category = ref.task->category;
    row.method = ref.variant.method;
    row.gamma = ref.variant.gamma;
    row.sampling_ratio = ref.ratio;
    row.repetition = ref.repetition;
    row.minority_train_frequency = ref.task->minority_train_frequency;
    row.synthetic = outcomes[ref.job].synthetic;
    row.counts = outcomes[ref.job].counts;
    row.metrics = compute_metrics(row.counts);
    result.rows.push_back(std::move(row));
  }

  for (double ratio : config.sampling_ratios) {
    for (const auto& v : variants) {
      std::vector<ReportEntry> entries;
      for (const auto& row : result.rows) {
        if (row.sampling_ratio == ratio && row.method == v.method && row.gamma == v.gamma) {
          entries.push_back({row.category, row.repetition, row.minority_train_frequency,
                             row.metrics});
        }
      }
      if (entries.empty()) continue;
      for (const auto& [band, avg] : macro_average_by_band(entries)) {
        result.aggregates.push_back({v.method, v.gamma, ratio, std::string(band_name(band)), avg});
      }
      result.aggregates.push_back({v.method, v.gamma, ratio, "all", macro_average(entries)});
    }
  }
  return result;
}

std::string runs_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "dataset,category,method,gamma,sampling_ratio,repetition,tp,fp,tn,fn,"
         "recall,tnr,precision,ba,f1,f2\n";
  for (const auto& row : result.rows) {
    out << row.dataset << ',' << row.category << ',' << method_name(row.method) << ','
        << (row.gamma ? format_number(*row.gamma) : "") << ','
        << format_number(row.sampling_ratio) << ',' << row.repetition << ','
        << row.counts.tp << ',' << row.counts.fp << ',' << row.counts.tn << ','
        << row.counts.fn << ',' << format_metric(row.metrics.recall) << ','
        << format_metric(row.metrics.tnr) << ',' << format_metric(row.metrics.precision)
        << ',' << format_metric(row.metrics.balanced_accuracy) << ','
        << format_metric(row.metrics.f1) << ',' << format_metric(row.metrics.f2) << '\n';
  }
  return out.str();
}

namespace {

nlohmann::json metrics_json(const MacroAverage& avg) {
  return {{"categories", avg.categories},
          {"recall", avg.metrics.recall},
          {"tnr", avg.metrics.tnr},
          {"precision", avg.metrics.precision},
          {"ba", avg.metrics.balanced_accuracy},
          {"f1", avg.metrics.f1},
          {"f2", avg.metrics.f2}};
}

}  // namespace

nlohmann::json aggregate_json(const ExperimentResult& result) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& agg : result.aggregates) {
    j[method_label(agg.method, agg.gamma)][format_number(agg.sampling_ratio)][agg.band] =
        metrics_json(agg.average);
  }
  return j;
}

nlohmann::json manifest_json(const ExperimentConfig& config,
                             const ExperimentResult& result) {
  nlohmann::json j;
  j["config"] = config_to_json(config);
  j["runs"] = result.rows.size();
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto& s : result.skipped) {
    skipped.push_back({{"category", s.category},
                       {"sampling_ratio", s.sampling_ratio},
                       {"reason", s.reason}});
  }
  j["skipped_tasks"] = skipped;
  j["notes"] = result.notes;
  return j;
}

void write_experiment(const ExperimentConfig& config, const ExperimentResult& result) {
  std::filesystem::create_directories(config.output_dir);
  const std::filesystem::path dir(config.output_dir);
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << body;
  };
  write("runs.csv", runs_csv(result));
  write("aggregate.json", aggregate_json(result).dump(2) + "\n");
  write("manifest.json", manifest_json(config, result).dump(2) + "\n");
}

std::vector<SweepRow> gamma_sweep(const ExperimentConfig& config, const Corpus& corpus,
                                  const std::vector<double>& gammas) {
  if (gammas.empty()) throw std::invalid_argument("gamma_sweep: no gamma values");
  ExperimentConfig sweep = config;
  sweep.methods = {Method::kEmco};
  sweep.gammas = gammas;
  const ExperimentResult result = run_experiment(sweep, corpus);
  std::vector<SweepRow> rows;
  for (double ratio : sweep.sampling_ratios) {
    for (double g : gammas) {
      for (const auto& agg : result.aggregates) {
        if (agg.sampling_ratio == ratio && agg.gamma == g) {
          rows.push_back({g, ratio, agg.band, agg.average});
        }
      }
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "gamma,sampling_ratio,band,categories,recall,tnr,precision,ba,f1,f2\n";
  for (const auto& r : rows) {
    const auto& m = r.average.metrics;
    out << format_number(r.gamma) << ',' << format_number(r.sampling_ratio) << ','
        << r.band << ',' << r.average.categories << ',' << format_metric(m.recall) << ','
        << format_metric(m.tnr) << ',' << format_metric(m.precision) << ','
        << format_metric(m.balanced_accuracy) << ',' << format_metric(m.f1) << ','
        << format_metric(m.f2) << '\n';
  }
  return out.str();
}

std::vector<VocabEvalRow> vocab_eval(const ExperimentConfig& config,
                                     const Corpus& corpus,
                                     const std::vector<double>& gammas) {
  ExperimentConfig cfg = config;
  cfg.methods = {Method::kEmco};
  cfg.gammas = gammas;
  cfg.validate();

  struct Job {
    OvrTask task;
    double gamma;
    double ratio;
    size_t repetition;
  };
  std::vector<Job> jobs;
  for (double ratio : cfg.sampling_ratios) {
    for (auto& task : build_ovr_tasks(corpus, ratio)) {
      if (!task.evaluable) continue;
      for (double g : gammas) {
        for (size_t rep = 0; rep < cfg.repetitions; ++rep) {
          jobs.push_back({task, g, ratio, rep});
        }
      }
    }
  }

  auto tokens_of = [&](const std::vector<size_t>& indices) {
    std::vector<TokenSequence> out;
    for (size_t i : indices) out.push_back(corpus[i].tokens);
    return out;
  };

  std::vector<VocabEvalRow> rows(jobs.size());
  parallel_for(jobs.size(), cfg.workers, [&](size_t i) {
    const Job& job = jobs[i];
    const auto model = TransitionModel::estimate(tokens_of(job.task.train_minority),
                                                 tokens_of(job.task.train_majority),
                                                 job.gamma);
    Rng rng(derive_run_seed(cfg.master_seed, job.task.category, Method::kEmco,
                            job.gamma, job.ratio, job.repetition));
    const size_t count = synthetic_count(job.task.train_size(),
                                         job.task.train_minority.size(), job.ratio);
    const auto synthetic = oversample(model, count, rng);
    std::vector<TokenSequence> minority_test;
    for (size_t t = 0; t < job.task.test.size(); ++t) {
      if (job.task.test_positive[t]) minority_test.push_back(corpus[job.task.test[t]].tokens);
    }
    rows[i] = {job.task.category, job.gamma, job.ratio, job.repetition,
               vocab_expansion_eval(synthetic, model.partition(), minority_test)};
  });
  return rows;
}

std::string vocab_eval_csv(const std::vector<VocabEvalRow>& rows) {
  std::ostringstream out;
  out << "category,gamma,sampling_ratio,repetition,tp,fp,tn,fn,recall,tnr,ba,new_words\n";
  for (const auto& r : rows) {
    const auto& c = r.report.counts;
    out << r.category << ',' << format_number(r.gamma) << ','
        << format_number(r.sampling_ratio) << ',' << r.repetition << ',' << c.tp << ','
        << c.fp << ',' << c.tn << ',' << c.fn << ',';
    if (r.report.metrics) {
      out << format_metric(r.report.metrics->recall) << ','
          << format_metric(r.report.metrics->tnr) << ','
          << format_metric(r.report.metrics->balanced_accuracy);
    } else {
      out << ",,";
    }
    out << ',' << r.report.new_words << '\n';
  }
  return out.str();
}

nlohmann::json vocab_eval_summary(const std::vector<VocabEvalRow>& rows) {
  std::map<std::pair<double, double>, std::vector<const VocabEvalRow*>> groups;
  for (const auto& r : rows) groups[{r.sampling_ratio, r.gamma}].push_back(&r);
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [key, group] : groups) {
    std::vector<ReportEntry> entries;
    double new_words = 0.0;
    for (const auto* r : group) {
      new_words += static_cast<double>(r->report.new_words);
      if (r->report.metrics) entries.push_back({r->category, r->repetition, 0.0, *r->report.metrics});
    }
    nlohmann::json j = {{"sampling_ratio", key.first},
                        {"gamma", key.second},
                        {"mean_new_words", new_words / static_cast<double>(group.size())}};
    if (!entries.empty()) {
      const auto avg = macro_average(entries);
      j["categories"] = avg.categories;
      j["recall"] = avg.metrics.recall;
      j["tnr"] = avg.metrics.tnr;
      j["ba"] = avg.metrics.balanced_accuracy;
    }
    out.push_back(j);
  }
  return out;
}

}  // namespace emco
