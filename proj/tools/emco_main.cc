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

// Command-line front end.
//
//   emco prep        preprocess a corpus and print statistics
//   emco run         run the experiment matrix
//   emco sweep       EMCO gamma sweep
//   emco growth      vocabulary growth curve and Heaps' law fit
//   emco vocab-eval  synthetic vocabulary expansion report

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "CLI11.hpp"
#include "emco/analysis.h"
#include "emco/corpus.h"
#include "emco/harness.h"
#include "emco/markov.h"
#include "emco/random.h"
#include "emco/vectorize.h"
#include "json.hpp"

namespace {

using emco::ExperimentConfig;

// Flags shared by the experiment subcommands. Explicit flags override values
// from --config.
struct ConfigFlags {
  std::string config_path;
  std::string corpus;
  std::string dataset;
  std::string stopwords;
  std::string stemmer;
  std::vector<std::string> methods;
  std::vector<double> gammas;
  std::vector<double> ratios;
  size_t repetitions = 0;
  size_t k = 0;
  double c = 0.0;
  double tol = 0.0;
  size_t max_iters = 0;
  uint64_t seed = 0;
  std::string output;
  size_t workers = 0;

  void attach(CLI::App* app, bool with_methods) {
    app->add_option("--config", config_path, "JSON config file");
    app->add_option("--corpus", corpus, "Corpus JSONL file");
    app->add_option("--dataset", dataset, "Dataset name written to the results");
    app->add_option("--stopwords", stopwords, "Stopword file (default: built-in English list)");
    app->add_option("--stemmer", stemmer, "porter or identity");
    if (with_methods) {
      app->add_option("--methods", methods, "Subset of none,ros,smote,adasyn,mco,emco")
          ->delimiter(',');
    }
    app->add_option("--gammas", gammas, "EMCO gamma values")->delimiter(',');
    app->add_option("--ratios", ratios, "Sampling ratios")->delimiter(',');
    app->add_option("--repetitions", repetitions, "Repetitions per task");
    app->add_option("-k,--neighbors", k, "Neighbors for SMOTE and ADASYN");
    app->add_option("--c", c, "SVM regularization trade-off");
    app->add_option("--tol", tol, "SVM stopping tolerance");
    app->add_option("--max-iters", max_iters, "SVM epoch limit");
    app->add_option("--seed", seed, "Master seed");
    app->add_option("-o,--output", output, "Output directory");
    app->add_option("-j,--workers", workers, "Worker threads");
  }

  ExperimentConfig resolve(const CLI::App& app) const {
    ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{}
                                               : emco::load_config(config_path);
    auto given = [&](const char* name) { return app.count(name) > 0; };
    if (given("--corpus")) cfg.corpus_path = corpus;
    if (given("--dataset")) cfg.dataset = dataset;
    if (given("--stopwords")) cfg.stopwords_path = stopwords;
    if (given("--stemmer")) cfg.stemmer = stemmer;
    if (app.get_option_no_throw("--methods") != nullptr && given("--methods")) {
      cfg.methods.clear();
      for (const auto& m : methods) cfg.methods.push_back(emco::parse_method(m));
    }
    if (given("--gammas")) cfg.gammas = gammas;
    if (given("--ratios")) cfg.sampling_ratios = ratios;
    if (given("--repetitions")) cfg.repetitions = repetitions;
    if (given("--neighbors")) cfg.k_neighbors = k;
    if (given("--c")) cfg.c = c;
    if (given("--tol")) cfg.tol = tol;
    if (given("--max-iters")) cfg.max_iters = max_iters;
    if (given("--seed")) cfg.master_seed = seed;
    if (given("--output")) cfg.output_dir = output;
    if (given("--workers")) cfg.workers = workers;
    if (cfg.corpus_path.empty()) throw std::invalid_argument("no corpus given (--corpus)");
    cfg.validate();
    return cfg;
  }
};

void write_file(const std::filesystem::path& path, const std::string& body) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
}

void warn_skipped(const emco::ExperimentResult& result) {
  for (const auto& s : result.skipped) {
    std::cerr << "warning: skipped category " << s.category << " at ratio "
              << s.sampling_ratio << ": " << s.reason << "\n";
  }
  for (const auto& note : result.notes) std::cerr << "note: " << note << "\n";
}

int run_prep(const ExperimentConfig& cfg, const std::string& out_path,
             const std::string& vectors_path) {
  const auto corpus = emco::load_experiment_corpus(cfg);
  size_t train = 0;
  size_t train_tokens = 0;
  std::map<std::string, size_t> label_counts;
  for (const auto& doc : corpus) {
    if (doc.split != emco::Split::kTrain) continue;
    ++train;
    train_tokens += doc.tokens.size();
    for (const auto& l : doc.labels) ++label_counts[l];
  }
  std::vector<emco::TokenSequence> training;
  for (const auto& doc : corpus) {
    if (doc.split == emco::Split::kTrain) training.push_back(doc.tokens);
  }
  nlohmann::json stats;
  stats["documents"] = corpus.size();
  stats["train_documents"] = train;
  stats["test_documents"] = corpus.size() - train;
  stats["mean_train_length"] =
      train == 0 ? 0.0 : static_cast<double>(train_tokens) / static_cast<double>(train);
  if (!training.empty()) {
    stats["vocabulary"] =
        emco::TfidfModel::fit(std::span<const emco::TokenSequence>(training)).dimension();
  }
  nlohmann::json freqs = nlohmann::json::object();
  for (const auto& [label, count] : label_counts) {
    freqs[label] = static_cast<double>(count) / static_cast<double>(train);
  }
  stats["train_frequency"] = freqs;
  std::cout << stats.dump(2) << "\n";

  if (!out_path.empty()) {
    std::ostringstream body;
    emco::write_corpus_jsonl(corpus, body);
    write_file(out_path, body.str());
  }
  if (!vectors_path.empty()) {
    if (training.empty()) throw std::invalid_argument("no training documents to fit tf-idf");
    const auto model = emco::TfidfModel::fit(std::span<const emco::TokenSequence>(training));
    std::vector<std::string> ids;
    std::vector<emco::SparseVector> vectors;
    for (const auto& doc : corpus) {
      ids.push_back(doc.id);
      vectors.push_back(model.transform(doc.tokens));
    }
    std::ostringstream body;
    emco::write_vector_dump(ids, vectors, body);
    write_file(vectors_path, body.str());
  }
  return 0;
}

struct GrowthFlags {
  std::string category;
  size_t step = 10;
  bool shuffle = false;
  uint64_t shuffle_seed = 0;
  bool reference_majority = false;
  std::string synthetic_method = "none";
  double gamma = 1.0;
  size_t synthetic_count = 0;
  std::string curve_path;
  std::string fit_path;
};

int run_growth(const ExperimentConfig& cfg, const GrowthFlags& flags) {
  const auto corpus = emco::load_experiment_corpus(cfg);
  std::vector<emco::TokenSequence> sample;
  std::vector<emco::TokenSequence> others;
  for (const auto& doc : corpus) {
    if (doc.split != emco::Split::kTrain) continue;
    if (flags.category.empty() || doc.has_label(flags.category)) {
      sample.push_back(doc.tokens);
    } else {
      others.push_back(doc.tokens);
    }
  }
  if (sample.empty()) throw std::invalid_argument("growth: no training documents selected");
  if (flags.shuffle) {
    std::vector<emco::TokenSequence> shuffled;
    for (size_t i : emco::shuffled_order(sample.size(), flags.shuffle_seed)) {
      shuffled.push_back(sample[i]);
    }
    sample = std::move(shuffled);
  }
  if (flags.synthetic_method != "none") {
    if (flags.synthetic_method != "mco" && flags.synthetic_method != "emco") {
      throw std::invalid_argument("growth: --synthetic must be none, mco or emco");
    }
    const double gamma = flags.synthetic_method == "mco" ? 0.0 : flags.gamma;
    const auto model = emco::TransitionModel::estimate(sample, others, gamma);
    emco::Rng rng(emco::SeedBuilder(cfg.master_seed)
                      .add(flags.category)
                      .add("growth")
                      .add(gamma)
                      .seed());
    for (auto& doc : emco::oversample(model, flags.synthetic_count, rng)) {
      sample.push_back(std::move(doc));
    }
  }
  std::unordered_set<std::string> reference;
  for (const auto& doc : others) reference.insert(doc.begin(), doc.end());
  const auto points =
      emco::growth_curve(sample, flags.step, flags.reference_majority ? &reference : nullptr);

  std::ostringstream csv;
  csv << "A,T,new_known_in_majority\n";
  for (const auto& p : points) {
    csv << p.total_words << ',' << p.vocab_size << ',';
    if (p.new_known_in_reference) csv << *p.new_known_in_reference;
    csv << '\n';
  }
  if (flags.curve_path.empty()) {
    std::cout << csv.str();
  } else {
    write_file(flags.curve_path, csv.str());
  }
  nlohmann::json fit_json;
  if (points.size() >= 2) {
    const auto fit = emco::fit_heaps(points);
    fit_json = {{"k", fit.k}, {"theta", fit.theta}, {"r2", fit.r2}};
  } else {
    fit_json = {{"error", "fewer than two growth points"}};
  }
  if (flags.fit_path.empty()) {
    std::cerr << fit_json.dump() << "\n";
  } else {
    write_file(flags.fit_path, fit_json.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extrapolated Markov chain oversampling for imbalanced text classification"};
  app.require_subcommand(1);

  ConfigFlags prep_flags;
  std::string prep_out;
  std::string prep_vectors;
  auto* prep = app.add_subcommand("prep", "Preprocess a corpus and print statistics");
  prep_flags.attach(prep, false);
  prep->add_option("--write", prep_out, "Write the preprocessed corpus as JSONL");
  prep->add_option("--vectors", prep_vectors, "Write tf-idf vectors (id index:value ...)");

  ConfigFlags run_flags;
  auto* run = app.add_subcommand("run", "Run the experiment matrix");
  run_flags.attach(run, true);

  ConfigFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "EMCO gamma sweep");
  sweep_flags.attach(sweep, false);

  ConfigFlags growth_config;
  GrowthFlags growth_flags;
  auto* growth = app.add_subcommand("growth", "Vocabulary growth curve and Heaps' law fit");
  growth_config.attach(growth, false);
  growth->add_option("--category", growth_flags.category,
                     "Restrict the sample to one category (default: all training documents)");
  growth->add_option("--step", growth_flags.step, "Documents added per point")
      ->check(CLI::PositiveNumber);
  growth->add_flag("--shuffle", growth_flags.shuffle, "Shuffle the sample order");
  growth->add_option("--shuffle-seed", growth_flags.shuffle_seed, "Seed for --shuffle");
  growth->add_flag("--reference-majority", growth_flags.reference_majority,
                   "Count new words already known from the other training documents");
  growth->add_option("--synthetic", growth_flags.synthetic_method,
                     "Append synthetic documents: none, mco or emco");
  growth->add_option("--gamma", growth_flags.gamma, "Gamma for --synthetic emco");
  growth->add_option("--count", growth_flags.synthetic_count, "Synthetic documents to append");
  growth->add_option("--curve", growth_flags.curve_path, "Curve CSV path (default: stdout)");
  growth->add_option("--fit", growth_flags.fit_path, "Fit JSON path (default: stderr)");

  ConfigFlags vocab_flags;
  std::string vocab_dump_dir;
  auto* vocab = app.add_subcommand("vocab-eval", "Synthetic vocabulary expansion report");
  vocab_flags.attach(vocab, false);
  vocab->add_option("--dump-models", vocab_dump_dir,
                    "Write each task's transition model dump into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*prep) return run_prep(prep_flags.resolve(*prep), prep_out, prep_vectors);

    if (*run) {
      const auto cfg = run_flags.resolve(*run);
      const auto corpus = emco::load_experiment_corpus(cfg);
      const auto result = emco::run_experiment(cfg, corpus);
      warn_skipped(result);
      emco::write_experiment(cfg, result);
      std::cout << emco::aggregate_json(result).dump(2) << "\n";
      return 0;
    }

    if (*sweep) {
      auto cfg = sweep_flags.resolve(*sweep);
      if (sweep->count("--gammas") == 0 && sweep_flags.config_path.empty()) {
        cfg.gammas = {0.0, 0.01, 0.1, 1.0};
      }
      const auto corpus = emco::load_experiment_corpus(cfg);
      const auto rows = emco::gamma_sweep(cfg, corpus, cfg.gammas);
      const auto body = emco::sweep_csv(rows);
      write_file(std::filesystem::path(cfg.output_dir) / "sweep.csv", body);
      std::cout << body;
      return 0;
    }

    if (*growth) return run_growth(growth_config.resolve(*growth), growth_flags);

    if (*vocab) {
      const auto cfg = vocab_flags.resolve(*vocab);
      const auto corpus = emco::load_experiment_corpus(cfg);
      const auto rows = emco::vocab_eval(cfg, corpus, cfg.gammas);
      const std::filesystem::path dir(cfg.output_dir);
      write_file(dir / "vocab_eval.csv", emco::vocab_eval_csv(rows));
      const auto summary = emco::vocab_eval_summary(rows);
      write_file(dir / "vocab_eval.json", summary.dump(2) + "\n");
      if (!vocab_dump_dir.empty()) {
        std::set<std::pair<std::string, double>> written;
        for (double ratio : cfg.sampling_ratios) {
          for (const auto& task : emco::build_ovr_tasks(corpus, ratio)) {
            if (!task.evaluable) continue;
            for (double g : cfg.gammas) {
              if (!written.insert({task.category, g}).second) continue;
              std::vector<emco::TokenSequence> minority;
              std::vector<emco::TokenSequence> majority;
              for (size_t i : task.train_minority) minority.push_back(corpus[i].tokens);
              for (size_t i : task.train_majority) majority.push_back(corpus[i].tokens);
              const auto model = emco::TransitionModel::estimate(minority, majority, g);
              std::ostringstream body;
              emco::write_model_dump(model, body);
              char name[64];
              std::snprintf(name, sizeof(name), "_gamma%g.txt", g);
              write_file(std::filesystem::path(vocab_dump_dir) / (task.category + name),
                         body.str());
            }
          }
        }
      }
      std::cout << summary.dump(2) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
