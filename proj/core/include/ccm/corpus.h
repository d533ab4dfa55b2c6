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

#ifndef CCM_CORPUS_H_
#define CCM_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccm/knowledge_graph.h"
#include "ccm/normalize.h"
#include "ccm/tokenizer.h"

namespace ccm {

class ConceptMatcher;

// Token range [begin, end) covered by one whitespace word.
struct WordSpan {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  bool operator==(const WordSpan&) const = default;
};

// A tokenized corpus line.
//
// `words` holds the normalized words used for concept matching;
// word_boundaries[i] is the token range of words[i]. The boundaries partition
// [0, tokens.size()) in order and every span is non-empty.
struct TokenSequence {
  std::string source_id;
  std::vector<std::string> words;
  std::vector<std::string> tokens;
  std::vector<WordSpan> word_boundaries;

  std::size_t num_tokens() const { return tokens.size(); }
  std::size_t num_words() const { return words.size(); }
};

TokenSequence Tokenize(std::string_view text, const SubwordTokenizer& tokenizer,
                       const NormalizationPolicy& policy = {},
                       std::string source_id = {});

// Longest whole-word prefix with at most `max_tokens` tokens. A first word
// longer than the limit is cut and its word text cleared so it never matches
// a concept.
TokenSequence TruncateToTokens(const TokenSequence& seq, std::size_t max_tokens);

struct CorpusLine {
  std::string source_id;
  std::string text;
};

// Newline-delimited UTF-8 text, one sequence per line. `path` may be a file
// or a directory, in which case its regular files are read in name order.
// Blank lines are skipped. source_id is "<file name>:<line number>".
std::vector<CorpusLine> ReadCorpus(const std::filesystem::path& path);

std::vector<TokenSequence> TokenizeCorpus(std::span<const CorpusLine> lines,
                                          const SubwordTokenizer& tokenizer,
                                          const NormalizationPolicy& policy = {},
                                          std::size_t workers = 1);

// Dense per-concept occurrence counts. Merge is associative and commutative.
class FrequencyTable {
 public:
  FrequencyTable() = default;
  explicit FrequencyTable(std::size_t num_concepts) : counts_(num_concepts, 0) {}

  std::size_t size() const { return counts_.size(); }
  std::uint64_t operator[](ConceptId id) const { return counts_.at(id); }
  void Add(ConceptId id, std::uint64_t n = 1) { counts_.at(id) += n; }
  void Merge(const FrequencyTable& other);
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::uint64_t total() const;

  bool operator==(const FrequencyTable&) const = default;

 private:
  std::vector<std::uint64_t> counts_;
};

// Word-boundary aligned occurrences of each pattern of `matcher` across the
// corpus. Nested and overlapping occurrences are counted independently.
// `num_concepts` sizes the table (normally the graph's node count).
FrequencyTable CountConceptFrequencies(std::span<const TokenSequence> corpus,
                                       const ConceptMatcher& matcher,
                                       std::size_t num_concepts,
                                       std::size_t workers = 1);

// Counts every concept of `graph`.
FrequencyTable CountConceptFrequencies(std::span<const TokenSequence> corpus,
                                       const KnowledgeGraph& graph,
                                       std::size_t workers = 1);

}  // namespace ccm

#endif  // CCM_CORPUS_H_
