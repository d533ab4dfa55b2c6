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

#include "ccm/example_io.h"

#include <fmt/format.h>

#include "ccm/error.h"
#include "json.hpp"

namespace ccm {

using nlohmann::ordered_json;

std::string ExampleToJsonLine(const MaskedExample& example) {
  ordered_json j;
  j["step"] = example.step;
  j["stage"] = example.stage;
  j["tokens"] = example.original_tokens;
  j["corrupted"] = example.corrupted_tokens;
  ordered_json labels = ordered_json::array();
  for (std::uint32_t pos : example.label_positions) {
    labels.push_back({{"pos", pos}, {"original_token", example.original_tokens.at(pos)}});
  }
  j["labels"] = std::move(labels);
  j["seed"] = example.seed;
  std::string out = j.dump();
  out.push_back('\n');
  return out;
}

namespace {

template <typename T>
T Field(const ordered_json& j, const char* name) {
  try {
    return j.at(name).get<T>();
  } catch (const ordered_json::exception& e) {
    throw InputError(fmt::format("example field '{}': {}", name, e.what()));
  }
}

}  // namespace

MaskedExample ExampleFromJsonLine(std::string_view line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const ordered_json::exception& e) {
    throw InputError(fmt::format("malformed example line: {}", e.what()));
  }
  MaskedExample ex;
  ex.step = Field<std::uint64_t>(j, "step");
  ex.stage = Field<std::uint32_t>(j, "stage");
  ex.original_tokens = Field<std::vector<std::string>>(j, "tokens");
  ex.corrupted_tokens = Field<std::vector<std::string>>(j, "corrupted");
  ex.seed = Field<std::uint64_t>(j, "seed");
  if (ex.corrupted_tokens.size() != ex.original_tokens.size()) {
    throw InputError("example field 'corrupted': length differs from 'tokens'");
  }
  const auto labels = Field<ordered_json>(j, "labels");
  if (!labels.is_array()) throw InputError("example field 'labels': not an array");
  for (const ordered_json& label : labels) {
    const auto pos = Field<std::uint32_t>(label, "pos");
    const auto original = Field<std::string>(label, "original_token");
    if (pos >= ex.original_tokens.size() || ex.original_tokens[pos] != original) {
      throw InputError(fmt::format("example field 'labels': bad position {}", pos));
    }
    ex.label_positions.push_back(pos);
  }
  return ex;
}

std::string AnnotationToJsonLine(const AnnotatedSequence& annotated) {
  ordered_json j;
  j["source_id"] = annotated.sequence.source_id;
  ordered_json spans = ordered_json::array();
  for (const ConceptSpan& s : annotated.spans) {
    spans.push_back({{"concept_id", s.concept_id},
                     {"word_start", s.word_start},
                     {"word_end", s.word_end}});
  }
  j["spans"] = std::move(spans);
  std::string out = j.dump();
  out.push_back('\n');
  return out;
}

}  // namespace ccm
