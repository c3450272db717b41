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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace emco {
namespace {

RawDocument raw(std::string id, std::string text, std::set<std::string> labels,
                Split split = Split::kTrain) {
  return RawDocument{std::move(id), std::move(text), std::move(labels), split};
}

Document doc(std::string id, std::set<std::string> labels, Split split) {
  return Document{std::move(id), {"tok"}, std::move(labels), split};
}

std::set<std::string> vocabulary(const Corpus& corpus, Split split) {
  std::set<std::string> vocab;
  for (const auto& d : corpus) {
    if (d.split == split) vocab.insert(d.tokens.begin(), d.tokens.end());
  }
  return vocab;
}

TEST(Tokenize, LetterOnlySplit) {
  EXPECT_EQ(tokenize("U.S. trade-gap 1987"),
            (TokenSequence{"u", "s", "trade", "gap"}));
  EXPECT_EQ(tokenize(""), TokenSequence{});
  EXPECT_EQ(tokenize("  42 -- !! "), TokenSequence{});
}

TEST(Tokenize, NonAsciiLettersSeparate) {
  EXPECT_EQ(tokenize("\xC3\x84iti said hi"), (TokenSequence{"iti", "said", "hi"}));
  EXPECT_EQ(tokenize("caf\xC3\xA9s"), (TokenSequence{"caf", "s"}));
}

TEST(Tokenize, TokensAreLowercaseLetters) {
  for (const auto& token : tokenize("MiXeD_case\tTEXT,with\n123numbers")) {
    ASSERT_FALSE(token.empty());
    for (char c : token) ASSERT_TRUE(c >= 'a' && c <= 'z') << token;
  }
}

TEST(Preprocess, RarityThresholdIsThreeTrainingOccurrences) {
  const std::vector<RawDocument> docs = {
      raw("1", "xyzzq wheat wheat", {"g"}),
      raw("2", "xyzzq wheat", {"g"}),
      raw("3", "corn corn corn", {"h"}),
  };
  const Corpus out = preprocess(docs, {}, identity_stemmer());
  const auto vocab = vocabulary(out, Split::kTrain);
  EXPECT_EQ(vocab, (std::set<std::string>{"wheat", "corn"}));
}

TEST(Preprocess, SingleCharacterStemsDropped) {
  const std::vector<RawDocument> docs = {
      raw("1", "a a a b b b cd cd cd", {"g"}),
  };
  const Corpus out = preprocess(docs, {}, identity_stemmer());
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].tokens, (TokenSequence{"cd", "cd", "cd"}));
}

TEST(Preprocess, EmptyDocumentsDropped) {
  const std::vector<RawDocument> docs = {
      raw("1", "oil oil oil", {"g"}),
      raw("2", "the of and", {"g"}),
      raw("3", "rare words only", {"g"}, Split::kTest),
  };
  const StopwordSet stop = {"the", "of", "and"};
  const Corpus out = preprocess(docs, stop, identity_stemmer());
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].id, "1");
}

TEST(Preprocess, StopwordsRemovedBeforeStemming) {
  // "was" stems to "wa"; the surface form is the stopword.
  const std::vector<RawDocument> docs = {
      raw("1", "was was was ships ships ships", {"g"}),
  };
  const Corpus out = preprocess(docs, {"was"}, porter_stemmer());
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].tokens, (TokenSequence{"ship", "ship", "ship"}));
}

TEST(Preprocess, TestSplitDoesNotAffectTrainingVocabulary) {
  std::vector<RawDocument> docs = {
      raw("1", "grain wheat corn", {"g"}),
      raw("2", "grain wheat ship", {"g"}),
      raw("3", "grain ship ship", {"s"}),
      raw("4", "wheat corn", {"g"}, Split::kTest),
  };
  const Corpus base = preprocess(docs, {}, identity_stemmer());
  docs[3].text = "corn corn corn corn corn wheat ship grain";
  docs.push_back(raw("5", "corn corn corn", {"g"}, Split::kTest));
  const Corpus perturbed = preprocess(docs, {}, identity_stemmer());
  EXPECT_EQ(vocabulary(base, Split::kTrain), vocabulary(perturbed, Split::kTrain));
  EXPECT_EQ(vocabulary(base, Split::kTrain),
            (std::set<std::string>{"grain", "ship"}));
  // The same removal set applies to the test split.
  for (const auto& d : perturbed) {
    if (d.split == Split::kTest) {
      for (const auto& t : d.tokens) EXPECT_NE(t, "corn");
    }
  }
}

TEST(Preprocess, IdempotentWithIdentityStemmer) {
  const std::vector<RawDocument> docs = {
      raw("1", "Grain exports rose; grain exports fell.", {"g"}),
      raw("2", "Exports of grain, coffee and coffee beans", {"g", "c"}),
      raw("3", "coffee prices rose sharply", {"c"}),
      raw("4", "prices of beans rose", {"c"}, Split::kTest),
      raw("5", "q q q zz", {"c"}, Split::kTest),
  };
  const Corpus once = preprocess(docs, english_stopwords(), identity_stemmer());
  const Corpus twice =
      preprocess(to_raw(once), english_stopwords(), identity_stemmer());
  ASSERT_EQ(once.size(), twice.size());
  for (size_t i = 0; i < once.size(); ++i) {
    EXPECT_EQ(once[i].id, twice[i].id);
    EXPECT_EQ(once[i].tokens, twice[i].tokens);
    EXPECT_EQ(once[i].labels, twice[i].labels);
    EXPECT_EQ(once[i].split, twice[i].split);
  }
}

// Porter itself is not idempotent ("coffee" -> "coffe" -> "coff"), so the
// property is checked with the identity stemmer on real text.
TEST(Preprocess, IdempotentOnBundledCorpus) {
  const auto docs = load_corpus_jsonl(EMCO_TEST_DATA_DIR "/minicorpus.jsonl");
  const Corpus once = preprocess(docs, english_stopwords(), identity_stemmer());
  const Corpus twice = preprocess(to_raw(once), english_stopwords(), identity_stemmer());
  ASSERT_EQ(once.size(), twice.size());
  for (size_t i = 0; i < once.size(); ++i) EXPECT_EQ(once[i].tokens, twice[i].tokens);
}

TEST(CorpusIo, JsonlRoundTrip) {
  std::istringstream in(
      R"({"id":"a","text":"Wheat wheat","labels":["grain"],"split":"train"})"
      "\n\n"
      R"({"id":"b","text":"x","labels":[],"split":"test"})"
      "\n");
  const auto docs = read_corpus_jsonl(in);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].labels, (std::set<std::string>{"grain"}));
  EXPECT_EQ(docs[1].split, Split::kTest);

  std::istringstream bad(R"({"id":"a","text":"t","labels":[],"split":"dev"})");
  EXPECT_THROW(read_corpus_jsonl(bad), CorpusError);
  EXPECT_THROW(load_corpus_jsonl("/nonexistent/corpus.jsonl"), CorpusError);
}

TEST(Stopwords, BundledListMatchesDataFile) {
  const StopwordSet from_file = load_stopwords(EMCO_TEST_DATA_DIR "/stopwords_en.txt");
  EXPECT_EQ(from_file, english_stopwords());
  EXPECT_TRUE(english_stopwords().count("the"));
  EXPECT_FALSE(english_stopwords().count("wheat"));
}

// `positives` of `n` training documents carry the label; one positive and one
// negative test document are appended.
Corpus frequency_corpus(size_t positives, size_t n) {
  Corpus corpus;
  for (size_t i = 0; i < n; ++i) {
    corpus.push_back(doc("tr" + std::to_string(i),
                         i < positives ? std::set<std::string>{"x"}
                                       : std::set<std::string>{"y"},
                         Split::kTrain));
  }
  corpus.push_back(doc("te0", {"x"}, Split::kTest));
  corpus.push_back(doc("te1", {"y"}, Split::kTest));
  return corpus;
}

bool selected(const std::vector<OvrTask>& tasks, const std::string& category) {
  return std::any_of(tasks.begin(), tasks.end(),
                     [&](const OvrTask& t) { return t.category == category; });
}

TEST(OvrTasks, SelectionThreshold) {
  const auto five_pct = build_ovr_tasks(frequency_corpus(1, 20), 0.10);
  EXPECT_TRUE(selected(five_pct, "x"));
  EXPECT_FALSE(selected(five_pct, "y"));

  const auto eight_pct = build_ovr_tasks(frequency_corpus(2, 25), 0.10);
  EXPECT_FALSE(selected(eight_pct, "x"));

  // 0.149 < 0.75 * 0.2 = 0.15.
  const auto near = build_ovr_tasks(frequency_corpus(149, 1000), 0.20);
  ASSERT_TRUE(selected(near, "x"));
  EXPECT_DOUBLE_EQ(near[0].minority_train_frequency, 0.149);
}

TEST(OvrTasks, RatioOutOfRangeThrows) {
  const Corpus corpus = frequency_corpus(1, 20);
  EXPECT_THROW(build_ovr_tasks(corpus, 0.0), std::invalid_argument);
  EXPECT_THROW(build_ovr_tasks(corpus, 1.0), std::invalid_argument);
  EXPECT_TRUE(build_ovr_tasks(Corpus{}, 0.1).empty());
}

TEST(OvrTasks, UnevaluableWithoutBothTestClasses) {
  Corpus corpus = frequency_corpus(1, 20);
  corpus.pop_back();  // drop the negative test document
  const auto tasks = build_ovr_tasks(corpus, 0.10);
  ASSERT_TRUE(selected(tasks, "x"));
  EXPECT_FALSE(tasks[0].evaluable);
  EXPECT_FALSE(tasks[0].skip_reason.empty());

  const auto ok = build_ovr_tasks(frequency_corpus(1, 20), 0.10);
  EXPECT_TRUE(ok[0].evaluable);
}

TEST(OvrTasks, PartitionInvariantsOnBundledCorpus) {
  const auto raw_docs = load_corpus_jsonl(EMCO_TEST_DATA_DIR "/minicorpus.jsonl");
  const Corpus corpus = preprocess(raw_docs, english_stopwords(), porter_stemmer());
  for (double ratio : {0.1, 0.2, 0.5}) {
    for (const auto& task : build_ovr_tasks(corpus, ratio)) {
      std::vector<size_t> train;
      train.insert(train.end(), task.train_minority.begin(), task.train_minority.end());
      train.insert(train.end(), task.train_majority.begin(), task.train_majority.end());
      std::sort(train.begin(), train.end());
      EXPECT_EQ(std::adjacent_find(train.begin(), train.end()), train.end());

      std::vector<size_t> expected;
      for (size_t i = 0; i < corpus.size(); ++i) {
        if (corpus[i].split == Split::kTrain) expected.push_back(i);
      }
      EXPECT_EQ(train, expected);
      for (size_t i : task.train_minority) EXPECT_TRUE(corpus[i].has_label(task.category));
      for (size_t i : task.train_majority) EXPECT_FALSE(corpus[i].has_label(task.category));
      EXPECT_DOUBLE_EQ(task.minority_train_frequency,
                       static_cast<double>(task.train_minority.size()) /
                           static_cast<double>(task.train_size()));
      EXPECT_LT(task.minority_train_frequency, 0.75 * ratio);
      ASSERT_EQ(task.test.size(), task.test_positive.size());
    }
  }
}

TEST(Corpus, PreprocessedTokensAreNonemptyLetters) {
  const auto raw_docs = load_corpus_jsonl(EMCO_TEST_DATA_DIR "/minicorpus.jsonl");
  const Corpus corpus = preprocess(raw_docs, english_stopwords(), porter_stemmer());
  ASSERT_FALSE(corpus.empty());
  for (const auto& d : corpus) {
    ASSERT_FALSE(d.tokens.empty()) << d.id;
    for (const auto& t : d.tokens) {
      ASSERT_GE(t.size(), 2u);
      for (char c : t) ASSERT_TRUE(c >= 'a' && c <= 'z');
    }
  }
}

}  // namespace
}  // namespace emco
