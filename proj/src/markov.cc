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

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>

namespace emco {
namespace {

const std::string kStopToken = "<stop>";

TransitionModel::Row make_row(const std::map<uint32_t, double>& entries) {
  TransitionModel::Row row;
  double running = 0.0;
  for (const auto& [column, weight] : entries) {
    if (weight <= 0.0) continue;
    running += weight;
    row.columns.push_back(column);
    row.weights.push_back(weight);
    row.cumulative.push_back(running);
  }
  return row;
}

uint32_t draw(const TransitionModel::Row& row, Rng& rng) {
  const double target = rng.uniform() * row.total();
  auto it = std::upper_bound(row.cumulative.begin(), row.cumulative.end(), target);
  if (it == row.cumulative.end()) --it;
  return row.columns[static_cast<size_t>(it - row.cumulative.begin())];
}

}  // namespace

VocabPartition::VocabPartition(std::span<const TokenSequence> minority,
                               std::span<const TokenSequence> majority) {
  std::set<std::string> min_words;
  for (const auto& doc : minority) min_words.insert(doc.begin(), doc.end());
  std::set<std::string> maj_only;
  for (const auto& doc : majority) {
    for (const auto& token : doc) {
      if (min_words.count(token) == 0) maj_only.insert(token);
    }
  }
  tokens_.assign(min_words.begin(), min_words.end());
  num_minority_ = tokens_.size();
  tokens_.insert(tokens_.end(), maj_only.begin(), maj_only.end());
  for (size_t i = 0; i < tokens_.size(); ++i) {
    index_.emplace(tokens_[i], static_cast<uint32_t>(i));
  }
}

std::optional<uint32_t> VocabPartition::index_of(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& VocabPartition::token(uint32_t state) const {
  if (state == stop_index()) return kStopToken;
  return tokens_.at(state);
}

TransitionModel TransitionModel::estimate(std::span<const TokenSequence> minority,
                                          std::span<const TokenSequence> majority,
                                          double gamma) {
  if (!(gamma >= 0.0)) throw ModelError("gamma must be nonnegative");
  std::vector<TokenSequence> min_docs;
  for (const auto& doc : minority) {
    if (!doc.empty()) min_docs.push_back(doc);
  }
  if (min_docs.empty()) throw ModelError("no nonempty minority documents");

  TransitionModel model;
  model.gamma_ = gamma;
  model.partition_ = VocabPartition(min_docs, majority);
  const VocabPartition& part = model.partition_;
  const uint32_t stop = part.stop_index();

  std::vector<std::map<uint32_t, double>> counts(part.size() + 1);
  std::map<uint32_t, double> marginal;

  for (const auto& doc : min_docs) {
    std::vector<uint32_t> states;
    states.reserve(doc.size());
    for (const auto& token : doc) states.push_back(*part.index_of(token));
    counts[stop][states.front()] += 1.0;
    counts[states.back()][stop] += 1.0;
    for (size_t t = 0; t < states.size(); ++t) {
      marginal[states[t]] += 1.0;
      if (t + 1 < states.size() && states[t] != states[t + 1]) {
        counts[states[t]][states[t + 1]] += 1.0;
      }
    }
    model.lengths_.push_back(doc.size());
  }

  if (gamma > 0.0) {
    for (const auto& doc : majority) {
      for (size_t t = 0; t + 1 < doc.size(); ++t) {
        const uint32_t from = *part.index_of(doc[t]);
        const uint32_t to = *part.index_of(doc[t + 1]);
        if (part.is_minority(from) && from != to) counts[from][to] += gamma;
      }
    }
  }

  model.fallback_ = make_row(marginal);
  model.rows_.reserve(counts.size());
  for (uint32_t state = 0; state < counts.size(); ++state) {
    if (part.is_majority_only(state)) {
      model.rows_.push_back(model.fallback_);
    } else {
      model.rows_.push_back(make_row(counts[state]));
    }
  }
  std::sort(model.lengths_.begin(), model.lengths_.end());
  return model;
}

double TransitionModel::weight(uint32_t from, uint32_t to) const {
  const Row& r = rows_.at(from);
  auto it = std::lower_bound(r.columns.begin(), r.columns.end(), to);
  if (it == r.columns.end() || *it != to) return 0.0;
  return r.weights[static_cast<size_t>(it - r.columns.begin())];
}

double TransitionModel::probability(uint32_t from, uint32_t to) const {
  const double total = rows_.at(from).total();
  return total > 0.0 ? weight(from, to) / total : 0.0;
}

uint32_t TransitionModel::next_state(uint32_t from, Rng& rng) const {
  const Row& r = rows_.at(from);
  return draw(r.total() > 0.0 ? r : fallback_, rng);
}

TokenSequence sample_document_of_length(const TransitionModel& model,
                                        size_t length, Rng& rng) {
  const VocabPartition& part = model.partition();
  const uint32_t stop = part.stop_index();
  TokenSequence doc;
  doc.reserve(length);
  uint32_t current = stop;
  while (doc.size() < length) {
    const uint32_t next = model.next_state(current, rng);
    if (next != stop) doc.push_back(part.token(next));
    current = next;
  }
  return doc;
}

TokenSequence sample_document(const TransitionModel& model, Rng& rng) {
  const auto lengths = model.lengths();
  const size_t length = lengths[rng.uniform_index(lengths.size())];
  return sample_document_of_length(model, length, rng);
}

std::vector<TokenSequence> oversample(const TransitionModel& model, size_t count,
                                      Rng& rng) {
  std::vector<TokenSequence> docs;
  docs.reserve(count);
  for (size_t i = 0; i < count; ++i) docs.push_back(sample_document(model, rng));
  return docs;
}

double extrapolation_mass(const TransitionModel& model) {
  const VocabPartition& part = model.partition();
  double mass = 0.0;
  for (uint32_t state = 0; state < part.num_minority(); ++state) {
    const auto& r = model.row(state);
    if (r.total() <= 0.0) continue;
    double row_mass = 0.0;
    for (size_t k = 0; k < r.columns.size(); ++k) {
      if (part.is_majority_only(r.columns[k])) row_mass += r.weights[k];
    }
    mass += row_mass / r.total();
  }
  return mass;
}

std::vector<uint32_t> reachable_words(const TransitionModel& model) {
  const uint32_t stop = model.partition().stop_index();
  std::vector<bool> seen(model.num_states(), false);
  std::vector<uint32_t> frontier{stop};
  seen[stop] = true;
  while (!frontier.empty()) {
    const uint32_t state = frontier.back();
    frontier.pop_back();
    const auto& r = model.row(state);
    const auto& support = r.total() > 0.0 ? r.columns : model.fallback_row().columns;
    for (uint32_t next : support) {
      if (!seen[next]) {
        seen[next] = true;
        frontier.push_back(next);
      }
    }
  }
  std::vector<uint32_t> words;
  for (uint32_t state = 0; state < stop; ++state) {
    if (seen[state]) words.push_back(state);
  }
  return words;
}

void write_model_dump(const TransitionModel& model, std::ostream& out) {
  const VocabPartition& part = model.partition();
  char buf[32];
  for (uint32_t from = 0; from < model.num_states(); ++from) {
    const auto& r = model.row(from);
    for (size_t k = 0; k < r.columns.size(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", r.weights[k]);
      out << part.token(from) << ' ' << part.token(r.columns[k]) << ' ' << buf << '\n';
    }
  }
  out << "lengths\n";
  const auto lengths = model.lengths();
  for (size_t i = 0; i < lengths.size();) {
    size_t j = i;
    while (j < lengths.size() && lengths[j] == lengths[i]) ++j;
    out << lengths[i] << ' ' << (j - i) << '\n';
    i = j;
  }
}

}  // namespace emco
