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

#include "ccm/matcher.h"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include <fmt/format.h>

#include "ccm/error.h"
#include "parallel.h"

namespace ccm {

ConceptMatcher ConceptMatcher::Compile(std::vector<Pattern> patterns) {
  if (patterns.empty()) throw ConfigError("cannot compile a matcher without patterns");
  // Insertion order does not affect the automaton, but sorting makes word
  // ids and node numbering reproducible.
  std::sort(patterns.begin(), patterns.end(),
            [](const Pattern& a, const Pattern& b) { return a.id < b.id; });

  ConceptMatcher m;
  m.nodes_.emplace_back();
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> children(1);

  for (const Pattern& p : patterns) {
    std::vector<std::string> words = NormalizeWords(p.surface, NormalizationPolicy{
        .lowercase = false,
        .underscores_to_spaces = false,
        .strip_edge_punctuation = false,
        .decode_conceptnet_uri = false});
    if (words.empty()) {
      throw ConfigError(fmt::format("concept {} has an empty surface", p.id));
    }
    std::uint32_t node = kRoot;
    for (const std::string& w : words) {
      auto [wit, _] = m.word_ids_.try_emplace(
          w, static_cast<std::uint32_t>(m.word_ids_.size()));
      const std::uint32_t wid = wit->second;
      auto [eit, inserted] = m.edges_.try_emplace(
          EdgeKey(node, wid), static_cast<std::uint32_t>(m.nodes_.size()));
      if (inserted) {
        Node child;
        child.depth = m.nodes_[node].depth + 1;
        m.nodes_.push_back(child);
        children[node].emplace_back(wid, eit->second);
        children.emplace_back();
      }
      node = eit->second;
    }
    if (m.nodes_[node].concept_id != kNoConcept) {
      throw ConfigError(fmt::format("duplicate pattern surface '{}' (concepts {} and {})",
                                    p.surface, m.nodes_[node].concept_id, p.id));
    }
    m.nodes_[node].concept_id = p.id;
    m.max_pattern_words_ =
        std::max(m.max_pattern_words_, static_cast<std::uint32_t>(words.size()));
  }
  m.num_patterns_ = patterns.size();

  // Breadth-first failure and output links.
  std::deque<std::uint32_t> queue;
  for (const auto& [wid, child] : children[kRoot]) {
    m.nodes_[child].fail = kRoot;
    queue.push_back(child);
  }
  while (!queue.empty()) {
    const std::uint32_t node = queue.front();
    queue.pop_front();
    for (const auto& [wid, child] : children[node]) {
      std::uint32_t f = m.nodes_[node].fail;
      std::uint32_t target = m.Child(f, wid);
      while (target == kNone && f != kRoot) {
        f = m.nodes_[f].fail;
        target = m.Child(f, wid);
      }
      const std::uint32_t fail = target == kNone ? kRoot : target;
      m.nodes_[child].fail = fail;
      m.nodes_[child].output_link =
          m.nodes_[fail].concept_id != kNoConcept ? fail : m.nodes_[fail].output_link;
      queue.push_back(child);
    }
  }
  return m;
}

ConceptMatcher ConceptMatcher::Compile(const ConceptLexicon& lexicon) {
  std::vector<Pattern> patterns;
  patterns.reserve(lexicon.size());
  for (const LexiconEntry& e : lexicon.entries()) patterns.push_back({e.id, e.surface});
  return Compile(std::move(patterns));
}

ConceptMatcher ConceptMatcher::CompileAll(const KnowledgeGraph& graph) {
  std::vector<Pattern> patterns;
  patterns.reserve(graph.num_nodes());
  for (const Concept& c : graph.concepts()) patterns.push_back({c.id, c.surface});
  return Compile(std::move(patterns));
}

std::uint32_t ConceptMatcher::WordId(std::string_view word) const {
  auto it = word_ids_.find(word);
  return it == word_ids_.end() ? kUnknownWord : it->second;
}

std::uint32_t ConceptMatcher::Child(std::uint32_t node, std::uint32_t word) const {
  auto it = edges_.find(EdgeKey(node, word));
  return it == edges_.end() ? kNone : it->second;
}

void ConceptMatcher::FindWordMatches(std::span<const std::string> words,
                                     std::vector<WordMatch>& out) const {
  std::uint32_t state = kRoot;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::uint32_t wid = WordId(words[i]);
    if (wid == kUnknownWord) {
      state = kRoot;
      continue;
    }
    std::uint32_t next = Child(state, wid);
    while (next == kNone && state != kRoot) {
      state = nodes_[state].fail;
      next = Child(state, wid);
    }
    state = next == kNone ? kRoot : next;

    std::uint32_t hit =
        nodes_[state].concept_id != kNoConcept ? state : nodes_[state].output_link;
    while (hit != kNone) {
      const Node& n = nodes_[hit];
      const auto end = static_cast<std::uint32_t>(i + 1);
      out.push_back({n.concept_id, end - n.depth, end});
      hit = n.output_link;
    }
  }
}

std::vector<ConceptSpan> ToConceptSpans(
    const TokenSequence& sequence,
    std::vector<ConceptMatcher::WordMatch> matches) {
  std::vector<ConceptSpan> spans;
  spans.reserve(matches.size());
  for (const auto& m : matches) {
    spans.push_back({m.concept_id, m.word_start, m.word_end,
                     sequence.word_boundaries[m.word_start].begin,
                     sequence.word_boundaries[m.word_end - 1].end});
  }
  std::sort(spans.begin(), spans.end(), [](const ConceptSpan& a, const ConceptSpan& b) {
    if (a.word_start != b.word_start) return a.word_start < b.word_start;
    if (a.word_end != b.word_end) return a.word_end < b.word_end;
    return a.concept_id < b.concept_id;
  });
  return spans;
}

AnnotatedSequence ConceptMatcher::Annotate(TokenSequence sequence) const {
  std::vector<WordMatch> matches;
  FindWordMatches(sequence.words, matches);
  AnnotatedSequence out;
  out.spans = ToConceptSpans(sequence, std::move(matches));
  out.sequence = std::move(sequence);
  return out;
}

std::vector<AnnotatedSequence> AnnotateCorpus(std::vector<TokenSequence> corpus,
                                              const ConceptMatcher& matcher,
                                              std::size_t workers) {
  std::vector<AnnotatedSequence> out(corpus.size());
  internal::ParallelShards(corpus.size(), workers,
                           [&](std::size_t, std::size_t begin, std::size_t end) {
                             for (std::size_t i = begin; i < end; ++i) {
                               out[i] = matcher.Annotate(std::move(corpus[i]));
                             }
                           });
  return out;
}

}  // namespace ccm
