// Copyright 2026 The CCM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CCM_NORMALIZE_H_
#define CCM_NORMALIZE_H_

#include <string>
#include <string_view>
#include <vector>

namespace ccm {

// How raw graph surfaces and corpus text are mapped onto the canonical
// lowercase, single-space separated word form used for matching.
//
// The same policy must be applied to the graph and to the corpus, otherwise
// concepts silently stop matching.
struct NormalizationPolicy {
  // ASCII lowercase. Bytes >= 0x80 are left untouched.
  bool lowercase = true;
  // "hot_dog" -> "hot dog".
  bool underscores_to_spaces = true;
  // Strips ASCII punctuation from both ends of every word ("dog." -> "dog").
  bool strip_edge_punctuation = true;
  // "/c/en/hot_dog/n" -> "hot_dog" before any other step.
  bool decode_conceptnet_uri = true;
};

// Splits `text` into normalized words. Words that become empty after
// stripping are dropped.
std::vector<std::string> NormalizeWords(std::string_view text,
                                        const NormalizationPolicy& policy = {});

// NormalizeWords joined by single spaces.
std::string NormalizePhrase(std::string_view text,
                            const NormalizationPolicy& policy = {});

// Number of space separated words in an already normalized surface.
std::size_t CountWords(std::string_view normalized);

}  // namespace ccm

#endif  // CCM_NORMALIZE_H_
