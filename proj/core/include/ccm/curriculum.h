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

#ifndef CCM_CURRICULUM_H_
#define CCM_CURRICULUM_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccm/corpus.h"
#include "ccm/knowledge_graph.h"
#include "ccm/lexicon.h"

namespace ccm {

struct CurriculumConfig {
  // Number of initial concepts M.
  std::uint32_t initial_count = 3000;
  // Expansion radius k between consecutive stages.
  std::uint32_t hops = 2;
  // Number of stages K, final stage included.
  std::uint32_t stages = 4;
  // Initial concepts must occur at least this often in the corpus. The
  // default is sized for a BERT-scale corpus; see ScaledMinFrequency.
  std::uint64_t min_frequency = 100000;
  // The final stage also masks words that are not part of any concept.
  bool include_nonconcept_words_in_final = true;

  // Throws ConfigError unless M >= 1, k >= 1 and K >= 2.
  void Validate() const;
  std::string Digest() const;

  bool operator==(const CurriculumConfig&) const = default;
};

// Occurrences per million corpus words equivalent to a 100k threshold on the
// ~3.3B word BERT pre-training corpus.
inline constexpr double kPaperScaleMinFrequencyPerMillion = 100000.0 / 3300.0;

// ceil(per_million * corpus_words / 1e6), at least 1.
std::uint64_t ScaledMinFrequency(double per_million, std::uint64_t corpus_words);

struct PlanDigests {
  std::string graph;
  std::string lexicon;
  std::string config;
  bool operator==(const PlanDigests&) const = default;
};

// Nested stage sets S_1 ⊆ ... ⊆ S_K and the order in which they are visited.
struct CurriculumPlan {
  // "ccm", "rarity" or "reverse".
  std::string kind = "ccm";
  CurriculumConfig config;
  // stages[i] is S_{i+1}, sorted by id.
  std::vector<std::vector<ConceptId>> stages;
  // 1-based indices into `stages`; stage position p of a curriculum pass
  // masks S_{visit_order[p-1]}.
  std::vector<std::uint32_t> visit_order;
  // S_K additionally admits every word that is not inside a concept span.
  bool final_includes_all_words = true;
  PlanDigests digests;

  std::uint32_t num_stages() const { return static_cast<std::uint32_t>(stages.size()); }
  // 1-based.
  const std::vector<ConceptId>& stage_set(std::uint32_t index) const;

  // Throws ConfigError if a stage is unsorted, not nested in its successor,
  // or visit_order is not a permutation of 1..K.
  void Validate() const;

  bool operator==(const CurriculumPlan&) const = default;
};

// Top-M concepts by degree among lexicon concepts with frequency >=
// cfg.min_frequency. Ties: higher frequency first, then lexicographic
// surface. Returned in rank order. Logs a warning when fewer than M survive.
std::vector<ConceptId> SelectInitialConcepts(const KnowledgeGraph& graph,
                                             const ConceptLexicon& lexicon,
                                             const FrequencyTable& freqs,
                                             const CurriculumConfig& cfg);

// S_1 = initial ∩ lexicon; S_i = S_{i-1} ∪ (N_k(S_{i-1}) ∩ lexicon) for
// 1 < i < K; S_K = every lexicon concept. Neighborhoods are computed on the
// full graph. Throws ConfigError if S_1 is empty.
CurriculumPlan BuildStages(const KnowledgeGraph& graph,
                           std::span<const ConceptId> initial,
                           const CurriculumConfig& cfg,
                           const ConceptLexicon& lexicon);

// Frequency curriculum: concepts sorted by descending frequency (ties by
// surface), S_i = first ceil(i * n / K) of them, S_K = all.
CurriculumPlan BaselineRarity(const ConceptLexicon& lexicon, std::uint32_t stages,
                              bool final_includes_all_words = true);

// Same stage sets visited in reverse order. Applying it twice restores the
// original visit order.
CurriculumPlan BaselineReverse(const CurriculumPlan& plan);

// Maximum sequence length per stage: 64, 128, 256, ... (doubling).
std::vector<std::uint32_t> BaselineLengthSchedule(std::uint32_t stages);

// Linear masking-ratio ramp from 10% at step 0 to 15% at total_steps.
class MaskingRatioSchedule {
 public:
  static constexpr double kStartRatio = 0.10;
  static constexpr double kEndRatio = 0.15;

  explicit MaskingRatioSchedule(std::uint64_t total_steps);
  double operator()(std::uint64_t step) const;
  std::uint64_t total_steps() const { return total_steps_; }

 private:
  std::uint64_t total_steps_;
};

enum class CurriculumKind { kCcm, kRarity, kReverse, kMaskingRatio, kLength, kNone };

// Throws ConfigError for unknown names.
CurriculumKind ParseCurriculumKind(std::string_view name);
std::string_view CurriculumKindName(CurriculumKind kind);

}  // namespace ccm

#endif  // CCM_CURRICULUM_H_
