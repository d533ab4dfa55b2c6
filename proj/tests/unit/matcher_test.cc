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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ccm/error.h"
#include "ccm/tokenizer.h"
#include "oracles/oracles.h"

namespace ccm {
namespace {

using Pattern = ConceptMatcher::Pattern;

std::vector<oracle::NaiveMatch> Matches(const ConceptMatcher& m,
                                    const std::vector<std::string>& words) {
  std::vector<ConceptMatcher::WordMatch> raw;
  m.FindWordMatches(words, raw);
  std::vector<oracle::NaiveMatch> out;
  for (const auto& w : raw) out.push_back({w.concept_id, w.word_start, w.word_end});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.word_start, a.word_end, a.id) < std::tie(b.word_start, b.word_end, b.id);
  });
  return out;
}

TEST(MatcherTest, NestedAndOverlappingMatches) {
  const ConceptMatcher m = ConceptMatcher::Compile(
      {{0, "stanford"}, {1, "stanford university"}, {2, "university"}, {3, "university life"}});
  const auto got = Matches(m, {"stanford", "university", "life"});
  const std::vector<oracle::NaiveMatch> expected = {
      {0, 0, 1}, {1, 0, 2}, {2, 1, 2}, {3, 1, 3}};
  EXPECT_EQ(got, expected);
  EXPECT_EQ(m.max_pattern_words(), 2u);
  EXPECT_EQ(m.num_patterns(), 4u);
}

TEST(MatcherTest, WordAligned) {
  const ConceptMatcher m = ConceptMatcher::Compile({{0, "dog"}});
  EXPECT_TRUE(Matches(m, {"hotdog", "dogs", "underdog"}).empty());
  EXPECT_EQ(Matches(m, {"dog", "dog"}).size(), 2u);
}

TEST(MatcherTest, RejectsBadPatterns) {
  EXPECT_THROW(ConceptMatcher::Compile(std::vector<Pattern>{}), ConfigError);
  EXPECT_THROW(ConceptMatcher::Compile({{0, "dog"}, {1, "dog"}}), ConfigError);
  EXPECT_THROW(ConceptMatcher::Compile({{0, ""}}), ConfigError);
}

TEST(MatcherTest, AnnotateMapsToTokens) {
  const WordPieceTokenizer tok = WordPieceTokenizer::Default();
  const ConceptMatcher m = ConceptMatcher::Compile({{7, "stanford"}, {9, "student"}});
  const AnnotatedSequence a = m.Annotate(Tokenize("a Stanford student", tok));
  ASSERT_EQ(a.spans.size(), 2u);
  EXPECT_EQ(a.spans[0], (ConceptSpan{7, 1, 2, 1, 3}));
  EXPECT_EQ(a.spans[1], (ConceptSpan{9, 2, 3, 3, 4}));
}

TEST(MatcherTest, MatchesWindowScanOracle) {
  std::mt19937_64 rng(1234);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f"};
  for (int trial = 0; trial < 50; ++trial) {
    // Small alphabet so patterns overlap, nest and share prefixes/suffixes.
    std::set<std::vector<std::string>> seen;
    std::vector<std::pair<std::uint32_t, std::vector<std::string>>> pats;
    std::vector<Pattern> compiled;
    const int num = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < num; ++i) {
      std::vector<std::string> w(1 + rng() % 4);
      for (auto& x : w) x = vocab[rng() % vocab.size()];
      if (!seen.insert(w).second) continue;
      const std::uint32_t id = static_cast<std::uint32_t>(pats.size()) * 3 + 1;
      std::string surface;
      for (const auto& x : w) surface += (surface.empty() ? "" : " ") + x;
      pats.emplace_back(id, w);
      compiled.push_back({id, surface});
    }
    const ConceptMatcher m = ConceptMatcher::Compile(compiled);
    for (int s = 0; s < 20; ++s) {
      std::vector<std::string> words(rng() % 60);
      for (auto& x : words) x = vocab[rng() % vocab.size()];
      ASSERT_EQ(Matches(m, words), oracle::WindowScan(words, pats)) << "trial " << trial;
    }
  }
}

TEST(MatcherTest, AnnotateCorpusIndependentOfWorkers) {
  const WordPieceTokenizer tok = WordPieceTokenizer::Default();
  const ConceptMatcher m =
      ConceptMatcher::Compile({{0, "the dog"}, {1, "dog"}, {2, "cat"}, {3, "the"}});
  std::vector<TokenSequence> corpus;
  for (int i = 0; i < 100; ++i) {
    corpus.push_back(Tokenize(i % 2 ? "the dog and the cat" : "cat dog the", tok));
  }
  const auto one = AnnotateCorpus(corpus, m, 1);
  const auto many = AnnotateCorpus(corpus, m, 5);
  ASSERT_EQ(one.size(), many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].spans, many[i].spans);
    EXPECT_TRUE(std::is_sorted(one[i].spans.begin(), one[i].spans.end(),
                               [](const ConceptSpan& a, const ConceptSpan& b) {
                                 return std::tie(a.word_start, a.word_end, a.concept_id) <
                                        std::tie(b.word_start, b.word_end, b.concept_id);
                               }));
  }
}

}  // namespace
}  // namespace ccm
