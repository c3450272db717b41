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

#include "emco/markov.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "emco/corpus.h"
#include "emco/random.h"

namespace emco {
namespace {

using Docs = std::vector<TokenSequence>;

const Docs kMinority = {{"a", "b"}, {"b", "a"}};
const Docs kMajority = {{"b", "c", "a"}};

uint32_t idx(const TransitionModel& m, const std::string& token) {
  if (token == "<stop>") return m.partition().stop_index();
  const auto i = m.partition().index_of(token);
  if (!i) ADD_FAILURE() << "missing token " << token;
  return i.value_or(0);
}

// Expected nonzero weights, keyed by (from, to); every other cell must be 0.
void expect_weights(const TransitionModel& m,
                    const std::map<std::pair<std::string, std::string>, double>& expected) {
  const auto& part = m.partition();
  std::vector<std::string> names;
  for (uint32_t s = 0; s < m.num_states(); ++s) names.push_back(part.token(s));
  for (uint32_t i = 0; i < m.num_states(); ++i) {
    for (uint32_t j = 0; j < m.num_states(); ++j) {
      const auto it = expected.find({names[i], names[j]});
      const double want = it == expected.end() ? 0.0 : it->second;
      EXPECT_DOUBLE_EQ(m.weight(i, j), want) << names[i] << "->" << names[j];
    }
  }
}

TEST(VocabPartition, DisjointAndExhaustive) {
  const VocabPartition p(kMinority, kMajority);
  EXPECT_EQ(p.num_minority(), 2u);
  EXPECT_EQ(p.num_majority_only(), 1u);
  EXPECT_EQ(p.stop_index(), 3u);
  EXPECT_TRUE(p.is_minority(*p.index_of("a")));
  EXPECT_TRUE(p.is_majority_only(*p.index_of("c")));
  EXPECT_FALSE(p.index_of("zzz").has_value());
  EXPECT_EQ(p.token(p.stop_index()), "<stop>");
}

TEST(Estimate, AdjacencyExampleGammaOne) {
  const auto m = TransitionModel::estimate(kMinority, kMajority, 1.0);
  ASSERT_EQ(m.num_states(), 4u);
  expect_weights(m, {{{"a", "b"}, 1},
                     {{"a", "<stop>"}, 1},
                     {{"b", "a"}, 1},
                     {{"b", "c"}, 1},
                     {{"b", "<stop>"}, 1},
                     {{"c", "a"}, 2},
                     {{"c", "b"}, 2},
                     {{"<stop>", "a"}, 1},
                     {{"<stop>", "b"}, 1}});
}

TEST(Estimate, AdjacencyExampleGammaZero) {
  const auto m = TransitionModel::estimate(kMinority, kMajority, 0.0);
  expect_weights(m, {{{"a", "b"}, 1},
                     {{"a", "<stop>"}, 1},
                     {{"b", "a"}, 1},
                     {{"b", "<stop>"}, 1},
                     {{"c", "a"}, 2},
                     {{"c", "b"}, 2},
                     {{"<stop>", "a"}, 1},
                     {{"<stop>", "b"}, 1}});
}

TEST(Estimate, SingleTokenCorpus) {
  const Docs minority = {{"a"}};
  const auto m = TransitionModel::estimate(minority, {}, 1.0);
  ASSERT_EQ(m.num_states(), 2u);
  expect_weights(m, {{{"<stop>", "a"}, 1}, {{"a", "<stop>"}, 1}});
}

TEST(Estimate, GammaScalesMajorityPairsOnly) {
  const Docs minority = {{"a", "b", "a"}};
  const Docs majority = {{"a", "b", "d"}, {"d", "a", "a"}};
  const auto m = TransitionModel::estimate(minority, majority, 0.25);
  // a->b: 1 minority + 0.25 majority; b->d: 0.25; d->a: excluded (d not in v_min);
  // a->a: zeroed.
  expect_weights(m, {{{"a", "b"}, 1.25},
                     {{"b", "a"}, 1},
                     {{"b", "d"}, 0.25},
                     {{"a", "<stop>"}, 1},
                     {{"<stop>", "a"}, 1},
                     {{"d", "a"}, 2},
                     {{"d", "b"}, 1}});
}

TEST(Estimate, Errors) {
  EXPECT_THROW(TransitionModel::estimate(kMinority, kMajority, -0.1), ModelError);
  EXPECT_THROW(TransitionModel::estimate({}, kMajority, 1.0), ModelError);
  const Docs empty_docs = {{}};
  EXPECT_THROW(TransitionModel::estimate(empty_docs, kMajority, 1.0), ModelError);
}

TEST(Estimate, LengthsAreMinorityDocumentLengths) {
  const Docs minority = {{"a", "b", "c"}, {"a"}, {"b", "c", "a"}};
  const auto m = TransitionModel::estimate(minority, kMajority, 1.0);
  EXPECT_EQ(std::vector<size_t>(m.lengths().begin(), m.lengths().end()),
            (std::vector<size_t>{1, 3, 3}));
}

TEST(Sample, ForcedLengthWalks) {
  const Docs minority = {{"a", "b"}};
  const auto m = TransitionModel::estimate(minority, {}, 1.0);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    EXPECT_EQ(sample_document_of_length(m, 2, rng), (TokenSequence{"a", "b"}));
    EXPECT_EQ(sample_document_of_length(m, 3, rng), (TokenSequence{"a", "b", "a"}));
    EXPECT_TRUE(sample_document_of_length(m, 0, rng).empty());
  }
  Rng rng(1);
  EXPECT_TRUE(oversample(m, 0, rng).empty());
}

// Corpora with repeated structure drawn from a fixed seed.
struct RandomCorpora {
  Docs minority;
  Docs majority;
};

RandomCorpora random_corpora(uint64_t seed) {
  Rng rng(seed);
  const std::vector<std::string> minority_words = {"aa", "bb", "cc", "dd", "ee"};
  const std::vector<std::string> shared_words = {"aa", "bb", "ff", "gg", "hh", "ii"};
  RandomCorpora out;
  const size_t n_min = 1 + rng.uniform_index(5);
  for (size_t d = 0; d < n_min; ++d) {
    TokenSequence doc;
    const size_t len = 1 + rng.uniform_index(6);
    for (size_t i = 0; i < len; ++i) {
      doc.push_back(minority_words[rng.uniform_index(minority_words.size())]);
    }
    out.minority.push_back(doc);
  }
  for (size_t d = 0; d < 8; ++d) {
    TokenSequence doc;
    const size_t len = rng.uniform_index(7);
    for (size_t i = 0; i < len; ++i) {
      doc.push_back(shared_words[rng.uniform_index(shared_words.size())]);
    }
    out.majority.push_back(doc);
  }
  return out;
}

TEST(TransitionModelProperties, BlockStructureAndRowSums) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const auto c = random_corpora(seed);
    for (double gamma : {0.0, 0.1, 1.0, 3.0}) {
      const auto m = TransitionModel::estimate(c.minority, c.majority, gamma);
      const auto& p = m.partition();
      const uint32_t stop = p.stop_index();
      ASSERT_EQ(m.num_states(), p.size() + 1);
      for (uint32_t i = 0; i < m.num_states(); ++i) {
        const auto& row = m.row(i);
        if (p.is_majority_only(i) || i == stop) {
          for (uint32_t j : row.columns) ASSERT_TRUE(p.is_minority(j)) << seed;
        }
        if (p.is_minority(i)) EXPECT_EQ(m.weight(i, i), 0.0);
        if (row.total() > 0.0) {
          double sum = 0.0;
          for (uint32_t j = 0; j < m.num_states(); ++j) sum += m.probability(i, j);
          EXPECT_NEAR(sum, 1.0, 1e-9);
        }
        for (double w : row.weights) ASSERT_GT(w, 0.0);
      }
      for (uint32_t s : reachable_words(m)) {
        EXPECT_TRUE(m.row(s).total() > 0.0 || m.fallback_row().total() > 0.0);
      }
      EXPECT_GT(m.row(stop).total(), 0.0);
    }
  }
}

// The last word of any run of a repeated token has a different successor or
// ends its document, so v_min rows never lose all their mass to the zeroed
// diagonal.
TEST(TransitionModelProperties, MinorityRowsHavePositiveMass) {
  const Docs minority = {{"x", "x", "x"}, {"y", "y", "x", "x"}};
  const auto m = TransitionModel::estimate(minority, {}, 0.0);
  for (uint32_t s = 0; s < m.partition().num_minority(); ++s) {
    EXPECT_GT(m.row(s).total(), 0.0) << m.partition().token(s);
  }
  EXPECT_GT(m.fallback_row().total(), 0.0);
  EXPECT_DOUBLE_EQ(m.weight(idx(m, "x"), m.partition().stop_index()), 2.0);
  EXPECT_DOUBLE_EQ(m.weight(idx(m, "y"), idx(m, "x")), 1.0);
}

TEST(TransitionModelProperties, SupportAndLengths) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const auto c = random_corpora(seed);
    const auto mco = TransitionModel::estimate(c.minority, c.majority, 0.0);
    const auto emco = TransitionModel::estimate(c.minority, c.majority, 1.0);
    const std::set<std::string> v_min(mco.partition().minority_tokens().begin(),
                                      mco.partition().minority_tokens().end());
    std::set<std::string> vocab = v_min;
    for (const auto& t : emco.partition().majority_only_tokens()) vocab.insert(t);
    const std::multiset<size_t> lengths(mco.lengths().begin(), mco.lengths().end());

    Rng rng(seed);
    for (const auto& doc : oversample(mco, 200, rng)) {
      EXPECT_TRUE(lengths.count(doc.size()));
      for (const auto& t : doc) ASSERT_TRUE(v_min.count(t)) << t;
    }
    for (const auto& doc : oversample(emco, 200, rng)) {
      EXPECT_TRUE(lengths.count(doc.size()));
      for (const auto& t : doc) ASSERT_TRUE(vocab.count(t)) << t;
    }
  }
}

TEST(TransitionModelProperties, ExtrapolationMassMonotoneInGamma) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const auto c = random_corpora(seed);
    double previous = -1.0;
    for (double gamma : {0.0, 0.001, 0.01, 0.1, 0.5, 1.0, 2.0, 10.0}) {
      const double mass =
          extrapolation_mass(TransitionModel::estimate(c.minority, c.majority, gamma));
      if (gamma == 0.0) {
        EXPECT_EQ(mass, 0.0);
      }
      EXPECT_GE(mass, previous - 1e-12) << seed << " gamma " << gamma;
      previous = mass;
    }
  }
}

TEST(Sample, Deterministic) {
  const auto c = random_corpora(9);
  const auto m = TransitionModel::estimate(c.minority, c.majority, 1.0);
  Rng a(77);
  Rng b(77);
  EXPECT_EQ(oversample(m, 100, a), oversample(m, 100, b));
}

// Hand-normalized rows of the adjacency example at gamma = 1, in state order
// a, b, c, <stop>.
constexpr std::array<std::array<double, 4>, 4> kExampleChain = {{
    {0.0, 0.5, 0.0, 0.5},
    {1.0 / 3, 0.0, 1.0 / 3, 1.0 / 3},
    {0.5, 0.5, 0.0, 0.0},
    {0.5, 0.5, 0.0, 0.0},
}};

TEST(Sample, TransitionFrequenciesMatchExampleChain) {
  const auto m = TransitionModel::estimate(kMinority, kMajority, 1.0);
  ASSERT_EQ(idx(m, "a"), 0u);
  ASSERT_EQ(idx(m, "b"), 1u);
  ASSERT_EQ(idx(m, "c"), 2u);
  Rng rng(2024);
  for (uint32_t from = 0; from < 4; ++from) {
    std::array<int, 4> counts{};
    const int steps = 100000;
    for (int i = 0; i < steps; ++i) ++counts[m.next_state(from, rng)];
    for (uint32_t to = 0; to < 4; ++to) {
      EXPECT_NEAR(counts[to] / static_cast<double>(steps), kExampleChain[from][to], 0.01)
          << from << "->" << to;
    }
  }
}

// Independent simulation of the example chain with the standard library's
// discrete distribution; compares the share of emitted "c" tokens.
TEST(Sample, MonteCarloAgainstBruteForceChain) {
  const auto m = TransitionModel::estimate(kMinority, kMajority, 1.0);
  std::mt19937 gen(5);
  std::vector<std::discrete_distribution<int>> rows;
  for (const auto& r : kExampleChain) rows.emplace_back(r.begin(), r.end());
  long emitted = 0;
  long c_count = 0;
  for (int doc = 0; doc < 20000; ++doc) {
    int state = 3;
    int produced = 0;
    while (produced < 2) {
      state = rows[state](gen);
      if (state == 3) continue;
      ++produced;
      ++emitted;
      c_count += state == 2 ? 1 : 0;
    }
  }
  const double oracle = static_cast<double>(c_count) / emitted;

  Rng rng(6);
  long tokens = 0;
  long cs = 0;
  for (const auto& doc : oversample(m, 20000, rng)) {
    ASSERT_EQ(doc.size(), 2u);
    tokens += static_cast<long>(doc.size());
    cs += std::count(doc.begin(), doc.end(), "c");
  }
  EXPECT_NEAR(static_cast<double>(cs) / tokens, oracle, 0.01);
  EXPECT_GT(cs, 0);
}

TEST(ModelDump, TextFormat) {
  const Docs minority = {{"a", "b"}};
  const auto m = TransitionModel::estimate(minority, {}, 1.0);
  std::ostringstream out;
  write_model_dump(m, out);
  const std::string text = out.str();
  EXPECT_NE(text.find("a b 1\n"), std::string::npos);
  EXPECT_NE(text.find("<stop> a 1\n"), std::string::npos);
  EXPECT_NE(text.find("lengths\n2 1\n"), std::string::npos);
}

}  // namespace
}  // namespace emco
