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

#ifndef CCM_EXAMPLE_IO_H_
#define CCM_EXAMPLE_IO_H_

#include <string>
#include <string_view>

#include "ccm/masker.h"
#include "ccm/matcher.h"

namespace ccm {

// One JSON object per line, keys in this order:
//   {"step", "stage", "tokens", "corrupted",
//    "labels": [{"pos", "original_token"}, ...], "seed"}
// The returned string ends with '\n'.
std::string ExampleToJsonLine(const MaskedExample& example);

// Inverse of ExampleToJsonLine (selected spans are not recoverable). Throws
// InputError naming the offending field.
MaskedExample ExampleFromJsonLine(std::string_view line);

// {"source_id", "spans": [{"concept_id", "word_start", "word_end"}, ...]}
// followed by '\n'.
std::string AnnotationToJsonLine(const AnnotatedSequence& annotated);

}  // namespace ccm

#endif  // CCM_EXAMPLE_IO_H_
