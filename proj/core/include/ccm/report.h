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

#ifndef CCM_REPORT_H_
#define CCM_REPORT_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccm/curriculum.h"
#include "ccm/lexicon.h"
#include "ccm/matcher.h"

namespace ccm {

// Frequency vs. number-of-related-concepts classes. "High" means at or above
// the threshold.
enum class Quadrant { kHfRc, kHfOnly, kRcOnly, kNeither };

std::string_view QuadrantName(Quadrant q);  // "HF-RC", "HF-only", "RC-only", "neither"

struct QuadrantThresholds {
  std::uint64_t high_frequency = 0;
  std::size_t related_concepts = 0;
};

Quadrant Classify(std::uint64_t frequency, std::size_t degree,
                  const QuadrantThresholds& thresholds);

struct ConceptReportRow {
  ConceptId id = kNoConcept;
  std::string surface;
  std::size_t degree = 0;
  std::uint64_t frequency = 0;
  Quadrant quadrant = Quadrant::kNeither;
};

// One row per lexicon concept, in id order. `degrees` is indexed by id.
std::vector<ConceptReportRow> BuildConceptReport(const ConceptLexicon& lexicon,
                                                 std::span<const std::size_t> degrees,
                                                 const QuadrantThresholds& thresholds);

// Header line "surface\tid\tdegree\tfrequency\tquadrant" then one line per row.
std::string ConceptReportToTsv(std::span<const ConceptReportRow> rows);

struct StageCoverage {
  std::uint32_t stage = 0;  // 1-based stage set index
  std::size_t concepts = 0;
  std::uint64_t maskable_tokens = 0;
  std::uint64_t total_tokens = 0;
  double fraction = 0.0;
};

// Fraction of corpus tokens lying under an eligible span for every stage set
// S_1..S_K (the final set includes non-concept words when the plan does).
std::vector<StageCoverage> BuildStageCoverage(std::span<const AnnotatedSequence> corpus,
                                              const CurriculumPlan& plan);

}  // namespace ccm

#endif  // CCM_REPORT_H_
