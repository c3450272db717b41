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

// Corpus ingestion, text preprocessing and one-vs-rest task construction.

#ifndef EMCO_CORPUS_H_
#define EMCO_CORPUS_H_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace emco {

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Token = std::string;
using TokenSequence = std::vector<Token>;

enum class Split { kTrain, kTest };

std::string_view split_name(Split split);

// A document as read from disk, before preprocessing.
struct RawDocument {
  std::string id;
  std::string text;
  std::set<std::string> labels;
  Split split = Split::kTrain;
};

struct Document {
  std::string id;
  TokenSequence tokens;
  std::set<std::string> labels;
  Split split = Split::kTrain;

  bool has_label(const std::string& category) const {
    return labels.count(category) != 0;
  }
};

using Corpus = std::vector<Document>;
using Stemmer = std::function<std::string(std::string_view)>;
using StopwordSet = std::unordered_set<std::string>;

// Lowercases and splits on every character outside [A-Za-z]. Non-ASCII bytes
// are separators.
TokenSequence tokenize(std::string_view raw_text);

Stemmer identity_stemmer();
Stemmer porter_stemmer();

// The English stopword list distributed with NLTK.
const StopwordSet& english_stopwords();

// One word per line; blank lines are skipped and entries are lowercased.
StopwordSet read_stopwords(std::istream& in);
StopwordSet load_stopwords(const std::string& path);

// JSON lines: {"id": str, "text": str, "labels": [str], "split": "train"|"test"}.
std::vector<RawDocument> read_corpus_jsonl(std::istream& in);
std::vector<RawDocument> load_corpus_jsonl(const std::string& path);

// Writes the token sequences back as JSON lines, joining tokens with spaces.
void write_corpus_jsonl(std::span<const Document> corpus, std::ostream& out);

// tokenize -> drop stopwords -> stem -> drop one-character stems -> drop stems
// occurring at most twice across training documents -> drop empty documents.
// Only training documents are counted for the rarity filter; the resulting
// removal set applies to both splits.
Corpus preprocess(std::span<const RawDocument> raw, const StopwordSet& stopwords,
                  const Stemmer& stemmer);

// Inverse view used to feed a processed corpus back into preprocess().
std::vector<RawDocument> to_raw(std::span<const Document> corpus);

// Minimum number of training occurrences a stem needs to survive.
inline constexpr size_t kMinTrainingCount = 3;

// Category selection threshold relative to the sampling ratio.
inline constexpr double kMinoritySelectionFactor = 0.75;

struct OvrTask {
  std::string category;
  // Indices into the corpus the task was built from.
  std::vector<size_t> train_minority;
  std::vector<size_t> train_majority;
  std::vector<size_t> test;
  std::vector<bool> test_positive;  // aligned with `test`
  double minority_train_frequency = 0.0;
  bool evaluable = true;
  std::string skip_reason;

  size_t train_size() const {
    return train_minority.size() + train_majority.size();
  }
};

// Every category found in the corpus, sorted.
std::vector<std::string> categories(std::span<const Document> corpus);

// One task per category whose training frequency is strictly below
// kMinoritySelectionFactor * sampling_ratio. Tasks missing a positive or a
// negative test document, or without minority training documents, are
// returned with evaluable = false.
std::vector<OvrTask> build_ovr_tasks(std::span<const Document> corpus,
                                     double sampling_ratio);

}  // namespace emco

#endif  // EMCO_CORPUS_H_
