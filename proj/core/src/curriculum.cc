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

#include "ccm/curriculum.h"

#include <algorithm>
#include <cmath>
#include <iterator>

#include <fmt/format.h>

#include "ccm/digest.h"
#include "ccm/error.h"
#include "ccm/log.h"

namespace ccm {

void CurriculumConfig::Validate() const {
  if (initial_count < 1) throw ConfigError("initial concept count M must be >= 1");
  if (hops < 1) throw ConfigError("hop count k must be >= 1");
  if (stages < 2) throw ConfigError("stage count K must be >= 2");
}

std::string CurriculumConfig::Digest() const {
  Sha256 sha;
  sha.Update("ccm-curriculum-config-v1");
  sha.UpdateU64(initial_count).UpdateU64(hops).UpdateU64(stages);
  sha.UpdateU64(min_frequency).UpdateU64(include_nonconcept_words_in_final ? 1 : 0);
  return sha.HexDigest();
}

std::uint64_t ScaledMinFrequency(double per_million, std::uint64_t corpus_words) {
  const double v = std::ceil(per_million * static_cast<double>(corpus_words) / 1e6);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(v));
}

const std::vector<ConceptId>& CurriculumPlan::stage_set(std::uint32_t index) const {
  if (index < 1 || index > stages.size()) {
    throw ConfigError(fmt::format("stage {} out of range 1..{}", index, stages.size()));
  }
  return stages[index - 1];
}

void CurriculumPlan::Validate() const {
  for (std::size_t i = 0; i < stages.size(); ++i) {
    if (!std::is_sorted(stages[i].begin(), stages[i].end()) ||
        std::adjacent_find(stages[i].begin(), stages[i].end()) != stages[i].end()) {
      throw ConfigError(fmt::format("stage {} is not a sorted set", i + 1));
    }
    if (i > 0 && !std::includes(stages[i].begin(), stages[i].end(),
                                stages[i - 1].begin(), stages[i - 1].end())) {
      throw ConfigError(fmt::format("stage {} is not contained in stage {}", i, i + 1));
    }
  }
  std::vector<std::uint32_t> order = visit_order;
  std::sort(order.begin(), order.end());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] != i + 1) throw ConfigError("visit order is not a permutation of stages");
  }
  if (order.size() != stages.size()) {
    throw ConfigError("visit order length differs from stage count");
  }
}

std::vector<ConceptId> SelectInitialConcepts(const KnowledgeGraph& graph,
                                             const ConceptLexicon& lexicon,
                                             const FrequencyTable& freqs,
                                             const CurriculumConfig& cfg) {
  cfg.Validate();
  struct Candidate {
    ConceptId id;
    std::size_t degree;
    std::uint64_t frequency;
    const std::string* surface;
  };
  std::vector<Candidate> candidates;
  for (const LexiconEntry& e : lexicon.entries()) {
    const std::uint64_t f = freqs[e.id];
    if (f < cfg.min_frequency) continue;
    candidates.push_back({e.id, graph.degree(e.id), f, &graph.concept_at(e.id).surface});
  }
  auto better = [](const Candidate& a, const Candidate& b) {
    if (a.degree != b.degree) return a.degree > b.degree;
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return *a.surface < *b.surface;
  };
  if (candidates.size() < cfg.initial_count) {
    log::Warn(fmt::format(
        "only {} concepts have frequency >= {}; using all of them instead of M={}",
        candidates.size(), cfg.min_frequency, cfg.initial_count));
    std::sort(candidates.begin(), candidates.end(), better);
  } else {
    std::partial_sort(candidates.begin(),
                      candidates.begin() + static_cast<std::ptrdiff_t>(cfg.initial_count),
                      candidates.end(), better);
    candidates.resize(cfg.initial_count);
  }
  std::vector<ConceptId> out;
  out.reserve(candidates.size());
  for (const Candidate& c : candidates) out.push_back(c.id);
  return out;
}

namespace {

std::vector<ConceptId> IntersectLexicon(std::span<const ConceptId> ids,
                                        const ConceptLexicon& lexicon) {
  std::vector<ConceptId> out;
  for (ConceptId id : ids) {
    if (lexicon.Contains(id)) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::uint32_t> IdentityOrder(std::uint32_t k) {
  std::vector<std::uint32_t> order(k);
  for (std::uint32_t i = 0; i < k; ++i) order[i] = i + 1;
  return order;
}

}  // namespace

CurriculumPlan BuildStages(const KnowledgeGraph& graph,
                           std::span<const ConceptId> initial,
                           const CurriculumConfig& cfg,
                           const ConceptLexicon& lexicon) {
  cfg.Validate();
  CurriculumPlan plan;
  plan.kind = "ccm";
  plan.config = cfg;
  plan.final_includes_all_words = cfg.include_nonconcept_words_in_final;
  plan.visit_order = IdentityOrder(cfg.stages);

  std::vector<ConceptId> current = IntersectLexicon(initial, lexicon);
  if (current.empty()) {
    throw ConfigError(
        "first curriculum stage is empty: no initial concept is in the lexicon");
  }
  plan.stages.push_back(current);
  for (std::uint32_t i = 2; i < cfg.stages; ++i) {
    std::vector<ConceptId> added =
        IntersectLexicon(graph.KHopNeighborhood(current, cfg.hops), lexicon);
    std::vector<ConceptId> merged;
    merged.reserve(current.size() + added.size());
    std::set_union(current.begin(), current.end(), added.begin(), added.end(),
                   std::back_inserter(merged));
    current = std::move(merged);
    plan.stages.push_back(current);
  }
  plan.stages.push_back(lexicon.ids());

  plan.digests = {graph.Digest(), lexicon.Digest(), cfg.Digest()};
  return plan;
}

CurriculumPlan BaselineRarity(const ConceptLexicon& lexicon, std::uint32_t stages,
                              bool final_includes_all_words) {
  if (stages < 2) throw ConfigError("rarity curriculum requires K >= 2");
  std::vector<const LexiconEntry*> ranked;
  ranked.reserve(lexicon.size());
  for (const LexiconEntry& e : lexicon.entries()) ranked.push_back(&e);
  std::sort(ranked.begin(), ranked.end(), [](const LexiconEntry* a, const LexiconEntry* b) {
    if (a->frequency != b->frequency) return a->frequency > b->frequency;
    return a->surface < b->surface;
  });

  CurriculumPlan plan;
  plan.kind = "rarity";
  plan.config.stages = stages;
  plan.config.include_nonconcept_words_in_final = final_includes_all_words;
  plan.final_includes_all_words = final_includes_all_words;
  plan.visit_order = IdentityOrder(stages);
  const std::size_t n = ranked.size();
  for (std::uint32_t i = 1; i <= stages; ++i) {
    const std::size_t take = (i * n + stages - 1) / stages;
    std::vector<ConceptId> set;
    set.reserve(take);
    for (std::size_t j = 0; j < take; ++j) set.push_back(ranked[j]->id);
    std::sort(set.begin(), set.end());
    plan.stages.push_back(std::move(set));
  }
  plan.digests = {"", lexicon.Digest(), plan.config.Digest()};
  return plan;
}

CurriculumPlan BaselineReverse(const CurriculumPlan& plan) {
  CurriculumPlan out = plan;
  std::reverse(out.visit_order.begin(), out.visit_order.end());
  if (plan.kind == "reverse") {
    out.kind = "ccm";
  } else if (plan.kind == "ccm") {
    out.kind = "reverse";
  }
  return out;
}

std::vector<std::uint32_t> BaselineLengthSchedule(std::uint32_t stages) {
  if (stages < 1) throw ConfigError("length curriculum requires at least one stage");
  if (stages > 24) throw ConfigError("length curriculum supports at most 24 stages");
  std::vector<std::uint32_t> lengths;
  std::uint32_t len = 64;
  for (std::uint32_t i = 0; i < stages; ++i, len *= 2) lengths.push_back(len);
  return lengths;
}

MaskingRatioSchedule::MaskingRatioSchedule(std::uint64_t total_steps)
    : total_steps_(total_steps) {
  if (total_steps < 1) throw ConfigError("masking-ratio schedule requires total_steps >= 1");
}

double MaskingRatioSchedule::operator()(std::uint64_t step) const {
  const double t = static_cast<double>(step) / static_cast<double>(total_steps_);
  return std::clamp(kStartRatio + (kEndRatio - kStartRatio) * t, kStartRatio, kEndRatio);
}

namespace {

constexpr std::pair<CurriculumKind, std::string_view> kKindNames[] = {
    {CurriculumKind::kCcm, "ccm"},
    {CurriculumKind::kRarity, "rarity"},
    {CurriculumKind::kReverse, "reverse"},
    {CurriculumKind::kMaskingRatio, "masking-ratio"},
    {CurriculumKind::kLength, "length"},
    {CurriculumKind::kNone, "none"},
};

}  // namespace

CurriculumKind ParseCurriculumKind(std::string_view name) {
  for (const auto& [kind, n] : kKindNames) {
    if (n == name) return kind;
  }
  throw ConfigError(fmt::format(
      "unknown curriculum '{}' (expected ccm, rarity, reverse, masking-ratio, length "
      "or none)",
      name));
}

std::string_view CurriculumKindName(CurriculumKind kind) {
  for (const auto& [k, n] : kKindNames) {
    if (k == kind) return n;
  }
  return "unknown";
}

}  // namespace ccm
