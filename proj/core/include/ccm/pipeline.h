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

#ifndef CCM_PIPELINE_H_
#define CCM_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccm/curriculum.h"
#include "ccm/schedule.h"

namespace ccm {

// Everything a pipeline run depends on. Serializes to a flat JSON object
// whose keys are listed in README.md; the same keys are accepted in config
// files.
struct PipelineConfig {
  std::filesystem::path graph;
  std::filesystem::path corpus;
  std::filesystem::path out;
  // Empty: the bundled WordPiece vocabulary.
  std::filesystem::path vocab;
  // Empty: <out>/examples.jsonl.
  std::filesystem::path examples;

  CurriculumConfig curriculum;
  // When set, replaces curriculum.min_frequency with
  // ScaledMinFrequency(value, corpus words).
  std::optional<double> min_frequency_per_million;
  std::uint32_t max_words = 5;
  std::uint64_t min_occurrences = 10;

  ScheduleConfig schedule;
  MaskingOptions masking;
  std::string curriculum_kind = "ccm";

  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string verbosity = "info";
  bool dump_annotations = false;

  // Report thresholds. Defaults: the plan's min_frequency and the median
  // degree of lexicon concepts.
  std::optional<std::uint64_t> hf_threshold;
  std::optional<std::size_t> rc_threshold;

  std::string ToJson() const;
  // Unknown keys are rejected. Missing keys keep the defaults of `base`.
  static PipelineConfig FromJson(const std::string& json, PipelineConfig base);
  static PipelineConfig Load(const std::filesystem::path& path, PipelineConfig base);

  std::filesystem::path examples_path() const;
};

// Artifact names inside PipelineConfig::out.
namespace artifacts {
inline constexpr const char* kGraphIndex = "graph_index.tsv";
inline constexpr const char* kLexicon = "lexicon.tsv";
inline constexpr const char* kPlan = "plan.json";
inline constexpr const char* kBuildReport = "build_report.json";
inline constexpr const char* kManifest = "manifest.json";
inline constexpr const char* kAnnotations = "annotations.jsonl";
inline constexpr const char* kConceptReport = "concept_report.tsv";
inline constexpr const char* kCoverage = "coverage.json";
}  // namespace artifacts

struct BuildSummary {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t sequences = 0;
  std::uint64_t words = 0;
  std::uint64_t tokens = 0;
  std::size_t lexicon_size = 0;
  std::uint64_t min_frequency = 0;
  std::vector<std::size_t> stage_sizes;
};

struct MaskSummary {
  std::uint64_t examples = 0;
  std::map<std::uint32_t, std::uint64_t> per_stage;
};

struct VerifyCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

// Each Run* validates the configuration before writing anything. Errors are
// rethrown as PhaseError naming the failing phase.

// graph -> tokenize/count -> lexicon -> initial concepts -> stages. Writes
// graph_index.tsv, lexicon.tsv, plan.json and build_report.json.
BuildSummary RunBuild(const PipelineConfig& config);

// Writes the example stream and manifest.json for config.curriculum_kind.
MaskSummary RunMask(const PipelineConfig& config);

// Writes concept_report.tsv and coverage.json.
void RunReport(const PipelineConfig& config);

// Re-checks invariants of existing artifacts.
std::vector<VerifyCheck> RunVerify(const PipelineConfig& config);

}  // namespace ccm

#endif  // CCM_PIPELINE_H_
