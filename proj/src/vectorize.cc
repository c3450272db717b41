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

#include "emco/vectorize.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>

namespace emco {

SparseVector SparseVector::from_entries(std::vector<SparseEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  SparseVector v;
  for (const auto& e : entries) {
    if (!v.entries_.empty() && v.entries_.back().index == e.index) {
      v.entries_.back().value += e.value;
    } else {
      v.entries_.push_back(e);
    }
  }
  std::erase_if(v.entries_, [](const SparseEntry& e) { return e.value == 0.0; });
  return v;
}

SparseVector SparseVector::from_dense(std::span<const double> dense) {
  SparseVector v;
  for (size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) v.entries_.push_back({static_cast<uint32_t>(i), dense[i]});
  }
  return v;
}

double SparseVector::at(uint32_t index) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), index,
      [](const SparseEntry& e, uint32_t i) { return e.index < i; });
  return it != entries_.end() && it->index == index ? it->value : 0.0;
}

double SparseVector::squared_norm() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += e.value * e.value;
  return sum;
}

double SparseVector::norm() const { return std::sqrt(squared_norm()); }

double SparseVector::dot(const SparseVector& other) const {
  double sum = 0.0;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->index < b->index) {
      ++a;
    } else if (b->index < a->index) {
      ++b;
    } else {
      sum += a->value * b->value;
      ++a;
      ++b;
    }
  }
  return sum;
}

double SparseVector::dot(std::span<const double> dense) const {
  double sum = 0.0;
  for (const auto& e : entries_) {
    if (e.index < dense.size()) sum += e.value * dense[e.index];
  }
  return sum;
}

double SparseVector::squared_distance(const SparseVector& other) const {
  // Coordinates are visited in increasing index order, so the sum matches a
  // dense scan term for term.
  double sum = 0.0;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    double d;
    if (b == other.entries_.end() || (a != entries_.end() && a->index < b->index)) {
      d = a->value;
      ++a;
    } else if (a == entries_.end() || b->index < a->index) {
      d = -b->value;
      ++b;
    } else {
      d = a->value - b->value;
      ++a;
      ++b;
    }
    sum += d * d;
  }
  return sum;
}

SparseVector SparseVector::interpolate(const SparseVector& other, double t) const {
  SparseVector out;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    uint32_t index;
    double x = 0.0;
    double y = 0.0;
    if (b == other.entries_.end() || (a != entries_.end() && a->index < b->index)) {
      index = a->index;
      x = a->value;
      ++a;
    } else if (a == entries_.end() || b->index < a->index) {
      index = b->index;
      y = b->value;
      ++b;
    } else {
      index = a->index;
      x = a->value;
      y = b->value;
      ++a;
      ++b;
    }
    const double value = x + t * (y - x);
    if (value != 0.0) out.entries_.push_back({index, value});
  }
  return out;
}

std::vector<double> SparseVector::to_dense(size_t dimension) const {
  std::vector<double> dense(dimension, 0.0);
  for (const auto& e : entries_) {
    if (e.index >= dimension) throw std::out_of_range("to_dense: index beyond dimension");
    dense[e.index] = e.value;
  }
  return dense;
}

TfidfModel TfidfModel::fit(std::span<const Document> training) {
  std::vector<TokenSequence> tokens;
  tokens.reserve(training.size());
  for (const auto& doc : training) tokens.push_back(doc.tokens);
  return fit(tokens);
}

TfidfModel TfidfModel::fit(std::span<const TokenSequence> training) {
  if (training.empty()) throw std::invalid_argument("fit_tfidf: empty training set");
  std::map<std::string, uint32_t, std::less<>> df;
  for (const auto& doc : training) {
    std::set<std::string_view> seen(doc.begin(), doc.end());
    for (auto token : seen) {
      auto it = df.find(token);
      if (it == df.end()) {
        df.emplace(std::string(token), 1u);
      } else {
        ++it->second;
      }
    }
  }
  TfidfModel model;
  model.n_ = training.size();
  const double n1 = static_cast<double>(model.n_) + 1.0;
  for (const auto& [token, count] : df) {
    const auto column = static_cast<uint32_t>(model.tokens_.size());
    model.tokens_.push_back(token);
    model.columns_.emplace(token, column);
    model.df_.push_back(count);
    model.idf_.push_back(std::log(n1 / (static_cast<double>(count) + 1.0)) + 1.0);
  }
  return model;
}

int64_t TfidfModel::column(const std::string& token) const {
  auto it = columns_.find(token);
  return it == columns_.end() ? -1 : static_cast<int64_t>(it->second);
}

SparseVector TfidfModel::transform(const TokenSequence& tokens) const {
  std::vector<SparseEntry> counts;
  counts.reserve(tokens.size());
  for (const auto& token : tokens) {
    auto it = columns_.find(token);
    if (it != columns_.end()) counts.push_back({it->second, 1.0});
  }
  SparseVector raw = SparseVector::from_entries(std::move(counts));
  std::vector<SparseEntry> weighted(raw.entries().begin(), raw.entries().end());
  for (auto& e : weighted) e.value *= idf_[e.index];
  double norm = 0.0;
  for (const auto& e : weighted) norm += e.value * e.value;
  norm = std::sqrt(norm);
  if (norm > 0.0) {
    for (auto& e : weighted) e.value /= norm;
  }
  return SparseVector::from_entries(std::move(weighted));
}

void write_vector_dump(std::span<const std::string> ids,
                       std::span<const SparseVector> vectors, std::ostream& out) {
  if (ids.size() != vectors.size()) {
    throw std::invalid_argument("write_vector_dump: ids and vectors differ in length");
  }
  char buf[64];
  for (size_t i = 0; i < ids.size(); ++i) {
    out << ids[i];
    for (const auto& e : vectors[i].entries()) {
      std::snprintf(buf, sizeof(buf), " %u:%.17g", e.index, e.value);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace emco
