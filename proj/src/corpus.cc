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

#include "emco/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_map>

#include "emco/porter_stemmer.h"
#include "json.hpp"

namespace emco {

std::string_view split_name(Split split) {
  return split == Split::kTrain ? "train" : "test";
}

TokenSequence tokenize(std::string_view raw_text) {
  TokenSequence tokens;
  std::string current;
  for (char c : raw_text) {
    if (c >= 'a' && c <= 'z') {
      current.push_back(c);
    } else if (c >= 'A' && c <= 'Z') {
      current.push_back(static_cast<char>(c - 'A' + 'a'));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

Stemmer identity_stemmer() {
  return [](std::string_view word) { return std::string(word); };
}

Stemmer porter_stemmer() {
  return [](std::string_view word) { return porter_stem(word); };
}

std::vector<RawDocument> read_corpus_jsonl(std::istream& in) {
  std::vector<RawDocument> docs;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "corpus line " + std::to_string(line_no) + ": ";
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw CorpusError(where + e.what());
    }
    if (!row.is_object()) throw CorpusError(where + "expected a JSON object");
    RawDocument doc;
    try {
      doc.id = row.at("id").get<std::string>();
      doc.text = row.at("text").get<std::string>();
      for (const auto& label : row.at("labels")) {
        doc.labels.insert(label.get<std::string>());
      }
      const auto split = row.at("split").get<std::string>();
      if (split == "train") {
        doc.split = Split::kTrain;
      } else if (split == "test") {
        doc.split = Split::kTest;
      } else {
        throw CorpusError(where + "split must be \"train\" or \"test\"");
      }
    } catch (const nlohmann::json::exception& e) {
      throw CorpusError(where + e.what());
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<RawDocument> load_corpus_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open corpus: " + path);
  return read_corpus_jsonl(in);
}

namespace {

std::string join_tokens(const TokenSequence& tokens) {
  std::string text;
  for (const auto& token : tokens) {
    if (!text.empty()) text.push_back(' ');
    text += token;
  }
  return text;
}

}  // namespace

void write_corpus_jsonl(std::span<const Document> corpus, std::ostream& out) {
  for (const auto& doc : corpus) {
    nlohmann::json row;
    row["id"] = doc.id;
    row["text"] = join_tokens(doc.tokens);
    row["labels"] = doc.labels;
    row["split"] = split_name(doc.split);
    out << row.dump() << '\n';
  }
}

Corpus preprocess(std::span<const RawDocument> raw, const StopwordSet& stopwords,
                  const Stemmer& stemmer) {
  // Stemming is memoized per surface form; the stemmer is deterministic.
  std::unordered_map<std::string, std::string> stem_cache;
  Corpus corpus;
  corpus.reserve(raw.size());
  std::unordered_map<std::string, size_t> training_counts;

  for (const auto& doc : raw) {
    Document out{doc.id, {}, doc.labels, doc.split};
    for (auto& token : tokenize(doc.text)) {
      if (stopwords.count(token) != 0) continue;
      auto it = stem_cache.find(token);
      if (it == stem_cache.end()) {
        it = stem_cache.emplace(token, stemmer(token)).first;
      }
      const std::string& stem = it->second;
      if (stem.size() <= 1) continue;
      if (doc.split == Split::kTrain) ++training_counts[stem];
      out.tokens.push_back(stem);
    }
    corpus.push_back(std::move(out));
  }

  Corpus kept;
  kept.reserve(corpus.size());
  for (auto& doc : corpus) {
    std::erase_if(doc.tokens, [&](const std::string& stem) {
      auto it = training_counts.find(stem);
      return it == training_counts.end() || it->second < kMinTrainingCount;
    });
    if (!doc.tokens.empty()) kept.push_back(std::move(doc));
  }
  return kept;
}

std::vector<RawDocument> to_raw(std::span<const Document> corpus) {
  std::vector<RawDocument> raw;
  raw.reserve(corpus.size());
  for (const auto& doc : corpus) {
    raw.push_back({doc.id, join_tokens(doc.tokens), doc.labels, doc.split});
  }
  return raw;
}

std::vector<std::string> categories(std::span<const Document> corpus) {
  std::set<std::string> all;
  for (const auto& doc : corpus) all.insert(doc.labels.begin(), doc.labels.end());
  return {all.begin(), all.end()};
}

std::vector<OvrTask> build_ovr_tasks(std::span<const Document> corpus,
                                     double sampling_ratio) {
  if (!(sampling_ratio > 0.0 && sampling_ratio < 1.0)) {
    throw std::invalid_argument("sampling ratio must lie in (0, 1)");
  }
  size_t n_train = 0;
  std::map<std::string, size_t> train_counts;
  for (const auto& doc : corpus) {
    if (doc.split != Split::kTrain) continue;
    ++n_train;
    for (const auto& label : doc.labels) ++train_counts[label];
  }

  const double threshold = kMinoritySelectionFactor * sampling_ratio;
  std::vector<OvrTask> tasks;
  for (const auto& category : categories(corpus)) {
    const size_t count = train_counts.count(category) ? train_counts[category] : 0;
    const double frequency =
        n_train == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(n_train);
    if (!(frequency < threshold)) continue;

    OvrTask task;
    task.category = category;
    task.minority_train_frequency = frequency;
    size_t test_pos = 0;
    for (size_t i = 0; i < corpus.size(); ++i) {
      const Document& doc = corpus[i];
      const bool positive = doc.has_label(category);
      if (doc.split == Split::kTrain) {
        (positive ? task.train_minority : task.train_majority).push_back(i);
      } else {
        task.test.push_back(i);
        task.test_positive.push_back(positive);
        test_pos += positive ? 1 : 0;
      }
    }
    if (task.train_minority.empty()) {
      task.evaluable = false;
      task.skip_reason = "no minority training documents";
    } else if (test_pos == 0) {
      task.evaluable = false;
      task.skip_reason = "no positive test documents";
    } else if (test_pos == task.test.size()) {
      task.evaluable = false;
      task.skip_reason = "no negative test documents";
    }
    tasks.push_back(std::move(task));
  }
  return tasks;
}

}  // namespace emco
