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

// The Porter (1980) suffix-stripping stemmer for lowercase English words.
//
// Follows the reference implementation by Martin Porter, including its two
// published departures from the original description (ABLI -> ABLE is
// replaced by BLI -> BLE, and LOGI -> LOG is added to step 2). Words of
// length one or two are returned unchanged.

#ifndef EMCO_PORTER_STEMMER_H_
#define EMCO_PORTER_STEMMER_H_

#include <string>
#include <string_view>

namespace emco {

std::string porter_stem(std::string_view word);

}  // namespace emco

#endif  // EMCO_PORTER_STEMMER_H_
