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

#ifndef CCM_LEXICON_H_
#define CCM_LEXICON_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ccm/corpus.h"
#include "ccm/knowledge_graph.h"

namespace ccm {

struct LexiconEntry {
  ConceptId id = kNoConcept;
  std::string surface;
  std::uint64_t frequency = 0;
  std::uint32_t word_count = 0;

  bool operator==(const LexiconEntry&) const = default;
};

// The concepts eligible for masking: fewer than `max_words` words and more
// than `min_occurrences` corpus occurrences. Entries are sorted by id.
class ConceptLexicon {
 public:
  static constexpr std::uint32_t kDefaultMaxWords = 5;
  static constexpr std::uint64_t kDefaultMinOccurrences = 10;

  ConceptLexicon() = default;
  // Throws ConfigError if entries are unsorted, duplicated or violate the
  // thresholds.
  ConceptLexicon(std::vector<LexiconEntry> entries, std::uint32_t max_words,
                 std::uint64_t min_occurrences);

  const std::vector<LexiconEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::uint32_t max_words() const { return max_words_; }
  std::uint64_t min_occurrences() const { return min_occurrences_; }

  bool Contains(ConceptId id) const { return Find(id) != nullptr; }
  const LexiconEntry* Find(ConceptId id) const;
  std::vector<ConceptId> ids() const;
  // Largest word_count among entries, 0 when empty.
  std::uint32_t max_entry_words() const;

  std::string Digest() const;

  bool operator==(const ConceptLexicon&) const = default;

 private:
  std::vector<LexiconEntry> entries_;
  std::uint32_t max_words_ = kDefaultMaxWords;
  std::uint64_t min_occurrences_ = kDefaultMinOccurrences;
};

// Strict thresholds: word_count < max_words and frequency > min_occurrences.
// An empty result logs a warning.
ConceptLexicon BuildLexicon(
    const KnowledgeGraph& graph, const FrequencyTable& freqs,
    std::uint32_t max_words = ConceptLexicon::kDefaultMaxWords,
    std::uint64_t min_occurrences = ConceptLexicon::kDefaultMinOccurrences);

// surface \t concept-id \t frequency \t word_count, one line per entry, sorted
// by id, '\n' line endings.
void WriteLexiconTsv(const ConceptLexicon& lexicon, std::ostream& out);
std::string LexiconToTsv(const ConceptLexicon& lexicon);
ConceptLexicon ReadLexiconTsv(const std::filesystem::path& path,
                              std::uint32_t max_words,
                              std::uint64_t min_occurrences);
ConceptLexicon ParseLexiconTsv(std::string_view tsv, std::uint32_t max_words,
                               std::uint64_t min_occurrences);

}  // namespace ccm

#endif  // CCM_LEXICON_H_
