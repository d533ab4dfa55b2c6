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

#include "ccm/masker.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ccm/error.h"

namespace ccm {

void CorruptionOdds::Validate() const {
  if (mask < 0 || random < 0 || keep < 0 || std::abs(mask + random + keep - 1.0) > 1e-9) {
    throw ConfigError(fmt::format("corruption odds must be non-negative and sum to 1 "
                                  "(mask={} random={} keep={})",
                                  mask, random, keep));
  }
}

CorruptionMode CorruptionOdds::Draw(Rng& rng) const {
  const double u = rng.Uniform01();
  if (u < mask) return CorruptionMode::kMask;
  if (u < mask + random) return CorruptionMode::kRandom;
  return CorruptionMode::kKeep;
}

CorruptionVocab CorruptionVocab::From(const SubwordTokenizer& tokenizer) {
  return {tokenizer.mask_token(), tokenizer.replacement_tokens()};
}

EligibleSet EligibleSet::TokenMlm() { return EligibleSet{}; }

EligibleSet EligibleSet::Concepts(std::span<const ConceptId> ids, std::uint32_t stage,
                                  bool include_nonconcept_words) {
  EligibleSet e;
  e.stage = stage;
  e.token_mlm = false;
  e.include_nonconcept_words = include_nonconcept_words;
  ConceptId max_id = 0;
  for (ConceptId id : ids) max_id = std::max(max_id, id);
  e.members.assign(ids.empty() ? 0 : static_cast<std::size_t>(max_id) + 1, false);
  for (ConceptId id : ids) e.members[id] = true;
  return e;
}

EligibleSet StageEligibleSet(const CurriculumPlan& plan, std::uint32_t position) {
  if (position == 0) return EligibleSet::TokenMlm();
  if (position > plan.num_stages() || position > plan.visit_order.size()) {
    throw ConfigError(fmt::format("stage {} out of range 0..{}", position,
                                  plan.num_stages()));
  }
  const std::uint32_t index = plan.visit_order[position - 1];
  const bool final_stage = index == plan.num_stages();
  return EligibleSet::Concepts(plan.stage_set(index), index,
                               final_stage && plan.final_includes_all_words);
}

std::vector<ConceptSpan> EligibleSpans(const AnnotatedSequence& a,
                                       const EligibleSet& eligible,
                                       std::size_t token_limit) {
  std::vector<ConceptSpan> out;
  if (eligible.token_mlm) return out;
  for (const ConceptSpan& s : a.spans) {
    if (s.token_end <= token_limit && eligible.Contains(s.concept_id)) out.push_back(s);
  }
  if (eligible.include_nonconcept_words) {
    const TokenSequence& seq = a.sequence;
    std::vector<bool> covered(seq.num_words(), false);
    for (const ConceptSpan& s : a.spans) {
      for (std::uint32_t w = s.word_start; w < s.word_end; ++w) covered[w] = true;
    }
    bool added = false;
    for (std::uint32_t w = 0; w < seq.num_words(); ++w) {
      const WordSpan& b = seq.word_boundaries[w];
      if (covered[w] || b.end > token_limit || seq.words[w].empty()) continue;
      out.push_back({kNoConcept, w, w + 1, b.begin, b.end});
      added = true;
    }
    if (added) {
      std::sort(out.begin(), out.end(), [](const ConceptSpan& x, const ConceptSpan& y) {
        if (x.word_start != y.word_start) return x.word_start < y.word_start;
        if (x.word_end != y.word_end) return x.word_end < y.word_end;
        return x.concept_id < y.concept_id;
      });
    }
  }
  return out;
}

std::size_t CoveredTokenCount(std::span<const ConceptSpan> spans) {
  // Spans are sorted by start word, hence by token_start; sweep the union.
  std::size_t covered = 0;
  std::uint32_t reach = 0;
  bool any = false;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ranges;
  ranges.reserve(spans.size());
  for (const ConceptSpan& s : spans) ranges.emplace_back(s.token_start, s.token_end);
  std::sort(ranges.begin(), ranges.end());
  for (const auto& [begin, end] : ranges) {
    if (!any || begin >= reach) {
      covered += end - begin;
      reach = end;
      any = true;
    } else if (end > reach) {
      covered += end - reach;
      reach = end;
    }
  }
  return covered;
}

namespace {

void CheckTargetRatio(double target_ratio) {
  if (!(target_ratio > 0.0 && target_ratio < 1.0)) {
    throw ConfigError(fmt::format("target mask ratio must be in (0, 1), got {}",
                                  target_ratio));
  }
}

}  // namespace

double DynamicMaskProbability(std::size_t num_tokens,
                              std::span<const ConceptSpan> eligible_spans,
                              double target_ratio) {
  CheckTargetRatio(target_ratio);
  if (num_tokens == 0 || eligible_spans.empty()) return 0.0;

  // histogram[m] = number of positions covered by exactly m spans.
  std::uint32_t limit = 0;
  for (const ConceptSpan& s : eligible_spans) limit = std::max(limit, s.token_end);
  std::vector<std::uint32_t> multiplicity(limit, 0);
  for (const ConceptSpan& s : eligible_spans) {
    for (std::uint32_t pos = s.token_start; pos < s.token_end; ++pos) ++multiplicity[pos];
  }
  std::vector<std::size_t> histogram;
  std::size_t covered = 0;
  for (std::uint32_t m : multiplicity) {
    if (m == 0) continue;
    ++covered;
    if (histogram.size() <= m) histogram.resize(m + 1, 0);
    ++histogram[m];
  }
  if (covered == 0) return 0.0;

  const double want = target_ratio * static_cast<double>(num_tokens);
  if (want >= static_cast<double>(covered)) return 1.0;
  if (histogram.size() == 2) return want / static_cast<double>(covered);

  // A position under m independently selected spans is labeled with
  // probability 1 - (1 - p)^m. The expected label count is increasing in p;
  // find the p that hits the target.
  auto expected = [&](double p) {
    double total = 0.0;
    for (std::size_t m = 1; m < histogram.size(); ++m) {
      if (histogram[m] != 0) {
        total += static_cast<double>(histogram[m]) *
                 (1.0 - std::pow(1.0 - p, static_cast<double>(m)));
      }
    }
    return total;
  };
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 64; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (expected(mid) < want) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double DynamicMaskProbability(const AnnotatedSequence& a, const EligibleSet& eligible,
                              double target_ratio) {
  return DynamicMaskProbability(a.sequence.num_tokens(), EligibleSpans(a, eligible),
                                target_ratio);
}

namespace {

// Per-position corruption state while applying overlapping spans.
enum class Slot : std::uint8_t { kClean, kKeep, kMask, kRandom };

MaskedExample StartExample(std::span<const std::string> tokens) {
  MaskedExample ex;
  ex.original_tokens.assign(tokens.begin(), tokens.end());
  ex.corrupted_tokens = ex.original_tokens;
  return ex;
}

void Apply(MaskedExample& ex, std::vector<Slot>& slots, std::uint32_t begin,
           std::uint32_t end, CorruptionMode mode, Rng& rng,
           const CorruptionVocab& vocab) {
  for (std::uint32_t pos = begin; pos < end; ++pos) {
    Slot& slot = slots[pos];
    if (slot == Slot::kMask || slot == Slot::kRandom) continue;
    switch (mode) {
      case CorruptionMode::kMask:
        slot = Slot::kMask;
        ex.corrupted_tokens[pos] = vocab.mask_token;
        break;
      case CorruptionMode::kRandom:
        slot = Slot::kRandom;
        ex.corrupted_tokens[pos] =
            vocab.replacements[rng.UniformBelow(vocab.replacements.size())];
        break;
      case CorruptionMode::kKeep:
        slot = Slot::kKeep;
        break;
    }
  }
}

void CollectLabels(MaskedExample& ex, const std::vector<Slot>& slots) {
  for (std::size_t pos = 0; pos < slots.size(); ++pos) {
    if (slots[pos] != Slot::kClean) {
      ex.label_positions.push_back(static_cast<std::uint32_t>(pos));
    }
  }
}

void CheckVocab(const CorruptionVocab& vocab) {
  if (vocab.replacements.empty()) throw ConfigError("corruption vocabulary is empty");
}

}  // namespace

MaskedExample MaskConceptSpans(std::span<const std::string> tokens,
                               std::span<const ConceptSpan> eligible_spans, double p_d,
                               Rng& rng, const CorruptionVocab& vocab,
                               const CorruptionOdds& odds) {
  CheckVocab(vocab);
  MaskedExample ex = StartExample(tokens);
  std::vector<Slot> slots(tokens.size(), Slot::kClean);
  if (p_d > 0.0) {
    for (const ConceptSpan& span : eligible_spans) {
      if (span.token_end > tokens.size() || span.token_start >= span.token_end) {
        throw ConfigError(fmt::format("span [{}, {}) outside sequence of {} tokens",
                                      span.token_start, span.token_end, tokens.size()));
      }
      if (!rng.Bernoulli(p_d)) continue;
      const CorruptionMode mode = odds.Draw(rng);
      ex.selected.push_back({span.concept_id, span.token_start, span.token_end, mode});
      Apply(ex, slots, span.token_start, span.token_end, mode, rng, vocab);
    }
  }
  CollectLabels(ex, slots);
  return ex;
}

MaskedExample MaskTokens(std::span<const std::string> tokens, double ratio, Rng& rng,
                         const CorruptionVocab& vocab, const CorruptionOdds& odds) {
  CheckVocab(vocab);
  MaskedExample ex = StartExample(tokens);
  const std::size_t n = tokens.size();
  if (n == 0 || ratio <= 0.0) return ex;
  const std::size_t want = std::min<std::size_t>(
      n, std::max<std::size_t>(1, static_cast<std::size_t>(
                                      std::llround(ratio * static_cast<double>(n)))));

  // Partial Fisher-Yates over positions.
  std::vector<std::uint32_t> positions(n);
  for (std::size_t i = 0; i < n; ++i) positions[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = 0; i < want; ++i) {
    const std::size_t j = i + rng.UniformBelow(n - i);
    std::swap(positions[i], positions[j]);
  }

  std::vector<Slot> slots(n, Slot::kClean);
  for (std::size_t i = 0; i < want; ++i) {
    const std::uint32_t pos = positions[i];
    const CorruptionMode mode = odds.Draw(rng);
    ex.selected.push_back({kNoConcept, pos, pos + 1, mode});
    Apply(ex, slots, pos, pos + 1, mode, rng, vocab);
  }
  CollectLabels(ex, slots);
  return ex;
}

}  // namespace ccm
