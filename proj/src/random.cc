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

#include "emco/random.h"

#include <cstdio>
#include <stdexcept>

namespace emco {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

uint64_t Rng::uniform_index(uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: empty range");
  // Rejection sampling removes modulo bias.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % n;
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SeedBuilder::SeedBuilder(uint64_t master) : state_(splitmix64(master)) {}

void SeedBuilder::mix_bytes(std::string_view bytes) {
  // FNV-1a over the bytes, folded into the running state. The length prefix
  // keeps ("ab","c") distinct from ("a","bc").
  uint64_t h = 0xcbf29ce484222325ULL ^ bytes.size();
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  state_ = splitmix64(state_ ^ h);
}

SeedBuilder& SeedBuilder::add(std::string_view label) {
  mix_bytes(label);
  return *this;
}

SeedBuilder& SeedBuilder::add(uint64_t value) {
  char buf[24];
  const int len = std::snprintf(buf, sizeof(buf), "%llu",
                                static_cast<unsigned long long>(value));
  mix_bytes(std::string_view(buf, static_cast<size_t>(len)));
  return *this;
}

SeedBuilder& SeedBuilder::add(double value) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", value);
  mix_bytes(std::string_view(buf, static_cast<size_t>(len)));
  return *this;
}

}  // namespace emco
