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

// Bag-of-words tf-idf vectors with smoothed idf and L2 normalization.

#ifndef EMCO_VECTORIZE_H_
#define EMCO_VECTORIZE_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "emco/corpus.h"

namespace emco {

struct SparseEntry {
  uint32_t index;
  double value;

  bool operator==(const SparseEntry&) const = default;
};

// Entries sorted by strictly increasing index, values nonzero.
class SparseVector {
 public:
  SparseVector() = default;

  // Builds from arbitrary (index, value) pairs: sorts, sums duplicates and
  // drops zeros.
  static SparseVector from_entries(std::vector<SparseEntry> entries);
  static SparseVector from_dense(std::span<const double> dense);

  std::span<const SparseEntry> entries() const { return entries_; }
  size_t nnz() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Value at `index`, zero when absent.
  double at(uint32_t index) const;

  double squared_norm() const;
  double norm() const;
  double dot(const SparseVector& other) const;
  double dot(std::span<const double> dense) const;
  double squared_distance(const SparseVector& other) const;

  // this + t * (other - this), zeros dropped.
  SparseVector interpolate(const SparseVector& other, double t) const;

  std::vector<double> to_dense(size_t dimension) const;

  bool operator==(const SparseVector&) const = default;

 private:
  std::vector<SparseEntry> entries_;
};

class TfidfModel {
 public:
  // Fits on the given training documents. Columns are assigned in
  // lexicographic token order.
  static TfidfModel fit(std::span<const Document> training);
  static TfidfModel fit(std::span<const TokenSequence> training);

  // Raw counts times idf, L2-normalized. Out-of-vocabulary tokens are
  // dropped; an all-OOV or empty document yields the zero vector.
  SparseVector transform(const TokenSequence& tokens) const;

  // ln((n + 1) / (df + 1)) + 1.
  double idf(uint32_t column) const { return idf_[column]; }

  // -1 when the token is not in the vocabulary.
  int64_t column(const std::string& token) const;
  const std::string& token(uint32_t column) const { return tokens_[column]; }
  uint32_t document_frequency(uint32_t column) const { return df_[column]; }
  size_t num_documents() const { return n_; }
  size_t dimension() const { return tokens_.size(); }

  bool operator==(const TfidfModel&) const = default;

 private:
  size_t n_ = 0;
  std::vector<std::string> tokens_;
  std::map<std::string, uint32_t, std::less<>> columns_;
  std::vector<uint32_t> df_;
  std::vector<double> idf_;
};

// One line per vector: `id index:value index:value ...`.
void write_vector_dump(std::span<const std::string> ids,
                       std::span<const SparseVector> vectors, std::ostream& out);

}  // namespace emco

#endif  // EMCO_VECTORIZE_H_
