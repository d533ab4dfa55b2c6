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

#ifndef CCM_MASKER_H_
#define CCM_MASKER_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ccm/curriculum.h"
#include "ccm/matcher.h"
#include "ccm/rng.h"
#include "ccm/tokenizer.h"

namespace ccm {

enum class CorruptionMode : std::uint8_t { kMask, kRandom, kKeep };

// Odds of each corruption applied to a selected unit (a concept, or a token
// in plain MLM). Must sum to 1.
struct CorruptionOdds {
  double mask = 0.8;
  double random = 0.1;
  double keep = 0.1;

  void Validate() const;
  CorruptionMode Draw(Rng& rng) const;
};

struct CorruptionVocab {
  std::string mask_token;
  std::vector<std::string> replacements;

  static CorruptionVocab From(const SubwordTokenizer& tokenizer);
};

// What may be masked at one point of the schedule.
struct EligibleSet {
  // 0 for the plain-MLM warmup, otherwise the 1-based index of the stage set.
  std::uint32_t stage = 0;
  // Uniform token-level masking, no concept constraint.
  bool token_mlm = true;
  // Words outside every concept span become single-word pseudo-spans.
  bool include_nonconcept_words = false;
  // Indexed by concept id.
  std::vector<bool> members;

  bool Contains(ConceptId id) const { return id < members.size() && members[id]; }

  static EligibleSet TokenMlm();
  static EligibleSet Concepts(std::span<const ConceptId> ids, std::uint32_t stage,
                              bool include_nonconcept_words);
};

// Position 0 is the MLM warmup. Position p in 1..K masks the stage set
// S_{visit_order[p-1]}; the plan's final stage S_K also admits non-concept
// words when the plan says so. Throws ConfigError for p > K.
EligibleSet StageEligibleSet(const CurriculumPlan& plan, std::uint32_t position);

inline constexpr std::size_t kNoTokenLimit = std::numeric_limits<std::size_t>::max();

// Concept spans of `a` admitted by `eligible`, plus pseudo-spans (concept_id
// kNoConcept) for uncovered words when enabled. Spans ending past
// `token_limit` are dropped. Sorted like AnnotatedSequence::spans.
std::vector<ConceptSpan> EligibleSpans(const AnnotatedSequence& a,
                                       const EligibleSet& eligible,
                                       std::size_t token_limit = kNoTokenLimit);

// Number of distinct token positions under at least one span.
std::size_t CoveredTokenCount(std::span<const ConceptSpan> spans);

// Span selection probability that makes the expected fraction of labeled
// tokens equal target_ratio. With disjoint spans this is
// min(1, target_ratio * num_tokens / covered); with nested or overlapping
// spans a position under m spans is labeled with probability 1 - (1 - p)^m
// and p is solved numerically. Returns 0 when nothing is covered and 1 when
// the covered positions cannot reach the target. Throws ConfigError unless
// 0 < target_ratio < 1.
double DynamicMaskProbability(std::size_t num_tokens,
                              std::span<const ConceptSpan> eligible_spans,
                              double target_ratio = 0.15);
double DynamicMaskProbability(const AnnotatedSequence& a, const EligibleSet& eligible,
                              double target_ratio = 0.15);

struct SelectedSpan {
  ConceptId concept_id = kNoConcept;
  std::uint32_t token_start = 0;
  std::uint32_t token_end = 0;
  CorruptionMode mode = CorruptionMode::kMask;

  bool operator==(const SelectedSpan&) const = default;
};

struct MaskedExample {
  std::uint64_t step = 0;
  // 0 = MLM warmup, otherwise the stage set index.
  std::uint32_t stage = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> original_tokens;
  std::vector<std::string> corrupted_tokens;
  // Sorted, unique.
  std::vector<std::uint32_t> label_positions;
  // Units chosen for corruption, in draw order. Not serialized.
  std::vector<SelectedSpan> selected;

  bool operator==(const MaskedExample&) const = default;
};

// Whole-concept masking. Each span is selected independently with
// probability p_d; a selected span draws one corruption mode and applies it
// to all of its tokens (random mode draws a replacement per token). Where
// selected spans overlap, mask and random positions are never rewritten
// (first writer wins) and both override keep. Every token of a selected span
// is labeled.
MaskedExample MaskConceptSpans(std::span<const std::string> tokens,
                               std::span<const ConceptSpan> eligible_spans, double p_d,
                               Rng& rng, const CorruptionVocab& vocab,
                               const CorruptionOdds& odds = {});

// Plain token-level MLM: max(1, round(ratio * n)) distinct positions chosen
// uniformly, each corrupted with `odds`.
MaskedExample MaskTokens(std::span<const std::string> tokens, double ratio, Rng& rng,
                         const CorruptionVocab& vocab, const CorruptionOdds& odds = {});

}  // namespace ccm

#endif  // CCM_MASKER_H_
