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

#ifndef CCM_MATCHER_H_
#define CCM_MATCHER_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ccm/corpus.h"
#include "ccm/knowledge_graph.h"
#include "ccm/lexicon.h"

namespace ccm {

// One word-aligned occurrence of a concept.
//
// word_end - word_start equals the concept's word count; the token range is
// the union of the constituent words' token ranges.
struct ConceptSpan {
  ConceptId concept_id = kNoConcept;
  std::uint32_t word_start = 0;
  std::uint32_t word_end = 0;
  std::uint32_t token_start = 0;
  std::uint32_t token_end = 0;

  auto operator<=>(const ConceptSpan&) const = default;
};

// A sequence with every concept occurrence, nested and overlapping ones
// included, sorted by (word_start, word_end, concept_id).
struct AnnotatedSequence {
  TokenSequence sequence;
  std::vector<ConceptSpan> spans;
};

// Multi-pattern matcher over normalized word sequences.
//
// Patterns are interned word by word and compiled into an Aho-Corasick
// automaton whose alphabet is the set of pattern words, so a sequence is
// scanned in one left-to-right pass with one hash lookup per word. Immutable
// after compilation and safe to share between threads.
class ConceptMatcher {
 public:
  struct Pattern {
    ConceptId id = kNoConcept;
    std::string surface;  // normalized
  };

  // Throws ConfigError for an empty pattern list, an empty surface or a
  // duplicated surface.
  static ConceptMatcher Compile(std::vector<Pattern> patterns);
  static ConceptMatcher Compile(const ConceptLexicon& lexicon);
  // Every node of the graph.
  static ConceptMatcher CompileAll(const KnowledgeGraph& graph);

  std::size_t num_patterns() const { return num_patterns_; }
  std::uint32_t max_pattern_words() const { return max_pattern_words_; }

  struct WordMatch {
    ConceptId concept_id;
    std::uint32_t word_start;
    std::uint32_t word_end;
  };

  // Appends all matches to `out` in end-position order.
  void FindWordMatches(std::span<const std::string> words,
                       std::vector<WordMatch>& out) const;

  AnnotatedSequence Annotate(TokenSequence sequence) const;

 private:
  static constexpr std::uint32_t kRoot = 0;
  static constexpr std::uint32_t kNone = 0xffffffffu;
  static constexpr std::uint32_t kUnknownWord = 0xffffffffu;

  struct Node {
    std::uint32_t fail = kRoot;
    std::uint32_t output_link = kNone;  // nearest proper suffix with a pattern
    ConceptId concept_id = kNoConcept;
    std::uint32_t depth = 0;
  };

  struct WordHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::uint32_t WordId(std::string_view word) const;
  std::uint32_t Child(std::uint32_t node, std::uint32_t word) const;
  static std::uint64_t EdgeKey(std::uint32_t node, std::uint32_t word) {
    return (static_cast<std::uint64_t>(node) << 32) | word;
  }

  std::unordered_map<std::string, std::uint32_t, WordHash, std::equal_to<>>
      word_ids_;
  std::unordered_map<std::uint64_t, std::uint32_t> edges_;
  std::vector<Node> nodes_;
  std::size_t num_patterns_ = 0;
  std::uint32_t max_pattern_words_ = 0;
};

// Projects word-level matches onto token ranges and sorts them.
std::vector<ConceptSpan> ToConceptSpans(
    const TokenSequence& sequence,
    std::vector<ConceptMatcher::WordMatch> matches);

// Annotates every sequence, sharded over `workers` threads. Output order
// matches input order.
std::vector<AnnotatedSequence> AnnotateCorpus(std::vector<TokenSequence> corpus,
                                              const ConceptMatcher& matcher,
                                              std::size_t workers = 1);

}  // namespace ccm

#endif  // CCM_MATCHER_H_
