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

// Deterministic random streams.
//
// Every draw goes through std::mt19937_64 (bit-exact by the standard) and the
// helpers below, never through the <random> distributions, whose output is
// implementation-defined. Seeds for independent streams are derived by
// hashing a tuple of labels, so a stream does not depend on scheduling.

#ifndef EMCO_RANDOM_H_
#define EMCO_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace emco {

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform();

  // Uniform on [0, n). Requires n > 0.
  uint64_t uniform_index(uint64_t n);

 private:
  std::mt19937_64 engine_;
};

uint64_t splitmix64(uint64_t x);

// Incremental builder for a stable 64-bit seed over heterogeneous labels.
class SeedBuilder {
 public:
  explicit SeedBuilder(uint64_t master);

  SeedBuilder& add(std::string_view label);
  SeedBuilder& add(uint64_t value);
  // Doubles are hashed through their shortest round-trip decimal text.
  SeedBuilder& add(double value);

  uint64_t seed() const { return splitmix64(state_); }

 private:
  void mix_bytes(std::string_view bytes);

  uint64_t state_;
};

}  // namespace emco

#endif  // EMCO_RANDOM_H_
