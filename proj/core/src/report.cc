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

#include "ccm/report.h"

#include <sstream>

#include "ccm/masker.h"

namespace ccm {

std::string_view QuadrantName(Quadrant q) {
  switch (q) {
    case Quadrant::kHfRc:
      return "HF-RC";
    case Quadrant::kHfOnly:
      return "HF-only";
    case Quadrant::kRcOnly:
      return "RC-only";
    case Quadrant::kNeither:
      return "neither";
  }
  return "neither";
}

Quadrant Classify(std::uint64_t frequency, std::size_t degree,
                  const QuadrantThresholds& thresholds) {
  const bool hf = frequency >= thresholds.high_frequency;
  const bool rc = degree >= thresholds.related_concepts;
  if (hf && rc) return Quadrant::kHfRc;
  if (hf) return Quadrant::kHfOnly;
  if (rc) return Quadrant::kRcOnly;
  return Quadrant::kNeither;
}

std::vector<ConceptReportRow> BuildConceptReport(const ConceptLexicon& lexicon,
                                                 std::span<const std::size_t> degrees,
                                                 const QuadrantThresholds& thresholds) {
  std::vector<ConceptReportRow> rows;
  rows.reserve(lexicon.size());
  for (const LexiconEntry& e : lexicon.entries()) {
    const std::size_t degree = e.id < degrees.size() ? degrees[e.id] : 0;
    rows.push_back({e.id, e.surface, degree, e.frequency,
                    Classify(e.frequency, degree, thresholds)});
  }
  return rows;
}

std::string ConceptReportToTsv(std::span<const ConceptReportRow> rows) {
  std::ostringstream out;
  out << "surface\tid\tdegree\tfrequency\tquadrant\n";
  for (const ConceptReportRow& r : rows) {
    out << r.surface << '\t' << r.id << '\t' << r.degree << '\t' << r.frequency << '\t'
        << QuadrantName(r.quadrant) << '\n';
  }
  return out.str();
}

std::vector<StageCoverage> BuildStageCoverage(std::span<const AnnotatedSequence> corpus,
                                              const CurriculumPlan& plan) {
  std::uint64_t total = 0;
  for (const AnnotatedSequence& a : corpus) total += a.sequence.num_tokens();

  std::vector<StageCoverage> out;
  for (std::uint32_t index = 1; index <= plan.num_stages(); ++index) {
    const bool final_stage = index == plan.num_stages();
    const EligibleSet eligible = EligibleSet::Concepts(
        plan.stage_set(index), index, final_stage && plan.final_includes_all_words);
    StageCoverage c;
    c.stage = index;
    c.concepts = plan.stage_set(index).size();
    c.total_tokens = total;
    for (const AnnotatedSequence& a : corpus) {
      c.maskable_tokens += CoveredTokenCount(EligibleSpans(a, eligible));
    }
    c.fraction = total == 0 ? 0.0
                            : static_cast<double>(c.maskable_tokens) /
                                  static_cast<double>(total);
    out.push_back(c);
  }
  return out;
}

}  // namespace ccm
