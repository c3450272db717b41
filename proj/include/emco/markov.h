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

// Extrapolated Markov chain oversampling.
//
// The chain has one state per training word plus a <stop> state. Rows of
// minority words carry minority bigram counts plus gamma-weighted majority
// bigram counts (self-transitions zeroed) and document-ending counts in the
// <stop> column. Rows of majority-only words point back into the minority
// vocabulary with the minority marginal word counts. The <stop> row holds the
// minority initial-word counts. Weights are kept unnormalized; a row is
// normalized at draw time through its cumulative sums.
//
// gamma = 0 reduces the model to a plain minority Markov chain, whose
// samples never leave the minority vocabulary.

#ifndef EMCO_MARKOV_H_
#define EMCO_MARKOV_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "emco/corpus.h"
#include "emco/random.h"

namespace emco {

class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// State indices: minority words [0, num_minority), then majority-only words
// [num_minority, size), then <stop> at size. Each block is sorted.
class VocabPartition {
 public:
  VocabPartition() = default;
  VocabPartition(std::span<const TokenSequence> minority,
                 std::span<const TokenSequence> majority);

  size_t size() const { return tokens_.size(); }
  size_t num_minority() const { return num_minority_; }
  size_t num_majority_only() const { return tokens_.size() - num_minority_; }
  uint32_t stop_index() const { return static_cast<uint32_t>(tokens_.size()); }

  bool is_minority(uint32_t state) const { return state < num_minority_; }
  bool is_majority_only(uint32_t state) const {
    return state >= num_minority_ && state < tokens_.size();
  }

  std::optional<uint32_t> index_of(const std::string& token) const;
  // "<stop>" for the stop state.
  const std::string& token(uint32_t state) const;

  std::span<const std::string> minority_tokens() const {
    return std::span(tokens_).first(num_minority_);
  }
  std::span<const std::string> majority_only_tokens() const {
    return std::span(tokens_).subspan(num_minority_);
  }

 private:
  std::vector<std::string> tokens_;
  size_t num_minority_ = 0;
  std::unordered_map<std::string, uint32_t> index_;
};

class TransitionModel {
 public:
  struct Row {
    std::vector<uint32_t> columns;  // strictly increasing
    std::vector<double> weights;    // positive, aligned with columns
    std::vector<double> cumulative;

    double total() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
  };

  // Requires at least one nonempty minority document and gamma >= 0.
  // Empty documents are ignored, including for the length distribution.
  static TransitionModel estimate(std::span<const TokenSequence> minority,
                                  std::span<const TokenSequence> majority,
                                  double gamma);

  const VocabPartition& partition() const { return partition_; }
  double gamma() const { return gamma_; }
  size_t num_states() const { return rows_.size(); }
  const Row& row(uint32_t state) const { return rows_.at(state); }
  // Distribution used for rows with no mass: minority marginal word counts.
  const Row& fallback_row() const { return fallback_; }

  // Unnormalized weight, zero when absent.
  double weight(uint32_t from, uint32_t to) const;
  // Weight divided by its row total; zero for rows without mass.
  double probability(uint32_t from, uint32_t to) const;

  // Minority document lengths, sorted ascending.
  std::span<const size_t> lengths() const { return lengths_; }

  // Draws the successor of `from`, falling back to the minority marginal
  // distribution when the row has no mass.
  uint32_t next_state(uint32_t from, Rng& rng) const;

 private:
  VocabPartition partition_;
  double gamma_ = 0.0;
  std::vector<Row> rows_;
  Row fallback_;
  std::vector<size_t> lengths_;
};

// Length drawn uniformly from the minority length multiset.
TokenSequence sample_document(const TransitionModel& model, Rng& rng);

// Walks from <stop> until exactly `length` words are emitted; visits to
// <stop> are not emitted.
TokenSequence sample_document_of_length(const TransitionModel& model,
                                        size_t length, Rng& rng);

std::vector<TokenSequence> oversample(const TransitionModel& model, size_t count,
                                      Rng& rng);

// Sum over minority rows with mass of the normalized probability assigned to
// majority-only columns.
double extrapolation_mass(const TransitionModel& model);

// Word states reachable from <stop> through positive-weight transitions,
// sorted. These are the only tokens a sampler can emit.
std::vector<uint32_t> reachable_words(const TransitionModel& model);

// Debug text dump: `from to weight` per nonzero entry in row-major order,
// then a `lengths` section of `length count` lines.
void write_model_dump(const TransitionModel& model, std::ostream& out);

}  // namespace emco

#endif  // EMCO_MARKOV_H_
