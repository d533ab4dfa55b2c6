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

#include "ccm/corpus.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include "ccm/knowledge_graph.h"
#include "ccm/matcher.h"
#include "ccm/tokenizer.h"
#include "oracles/oracles.h"

namespace ccm {
namespace {

const WordPieceTokenizer& Tok() {
  static const WordPieceTokenizer t = WordPieceTokenizer::Default();
  return t;
}

std::vector<TokenSequence> TokenizeAll(const std::vector<std::string>& texts) {
  std::vector<TokenSequence> out;
  for (const auto& t : texts) out.push_back(Tokenize(t, Tok()));
  return out;
}

TEST(TokenizeTest, WordBoundaries) {
  const TokenSequence s = Tokenize("Stanford student", Tok());
  EXPECT_EQ(s.words, (std::vector<std::string>{"stanford", "student"}));
  EXPECT_EQ(s.tokens, (std::vector<std::string>{"stan", "##ford", "student"}));
  EXPECT_EQ(s.word_boundaries, (std::vector<WordSpan>{{0, 2}, {2, 3}}));
}

TEST(TokenizeTest, BoundariesTileTheTokens) {
  const TokenSequence s = Tokenize("The quick, brown fox jumped over xyzzy!", Tok());
  ASSERT_EQ(s.words.size(), s.word_boundaries.size());
  std::uint32_t at = 0;
  for (const WordSpan& w : s.word_boundaries) {
    EXPECT_EQ(w.begin, at);
    EXPECT_LT(w.begin, w.end);
    at = w.end;
  }
  EXPECT_EQ(at, s.tokens.size());
}

TEST(TruncateTest, KeepsWholeWords) {
  const TokenSequence s = Tokenize("stanford student stanford", Tok());
  const TokenSequence t = TruncateToTokens(s, 4);
  EXPECT_EQ(t.words, (std::vector<std::string>{"stanford", "student"}));
  EXPECT_EQ(t.tokens.size(), 3u);
  EXPECT_EQ(TruncateToTokens(s, 100).tokens, s.tokens);
}

TEST(TruncateTest, OversizedFirstWordIsCut) {
  const TokenSequence s = Tokenize("stanford", Tok());
  const TokenSequence t = TruncateToTokens(s, 1);
  EXPECT_EQ(t.tokens, (std::vector<std::string>{"stan"}));
  ASSERT_EQ(t.words.size(), 1u);
  EXPECT_TRUE(t.words[0].empty());
}

TEST(ReadCorpusTest, SkipsBlankLinesAndOrdersFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "ccm_corpus_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "b.txt") << "second file\n";
  std::ofstream(dir / "a.txt") << "first line\n\n   \nthird line\n";
  const auto lines = ReadCorpus(dir);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0].text, "first line");
  EXPECT_EQ(lines[1].text, "third line");
  EXPECT_EQ(lines[2].text, "second file");
  EXPECT_EQ(lines[1].source_id, "a.txt:4");
  std::filesystem::remove_all(dir);
}

TEST(FrequencyTest, CountsOccurrences) {
  const KnowledgeGraph g = ParseGraph("r\tdog\tanimal\nr\tbark\tdog\n");
  const auto corpus = TokenizeAll({"the dog barks", "a dog"});
  const FrequencyTable f = CountConceptFrequencies(corpus, g);
  EXPECT_EQ(f[g.Find("dog")], 2u);
  EXPECT_EQ(f[g.Find("animal")], 0u);
  EXPECT_EQ(f[g.Find("bark")], 0u);  // "barks" is a different word
}

TEST(FrequencyTest, NestedConceptsCountIndependently) {
  const KnowledgeGraph g = ParseGraph(
      "r\tstanford\tstanford_university\nr\tuniversity\tstanford_university\n");
  const auto corpus = TokenizeAll({"I went to Stanford University"});
  const FrequencyTable f = CountConceptFrequencies(corpus, g);
  EXPECT_EQ(f[g.Find("stanford")], 1u);
  EXPECT_EQ(f[g.Find("university")], 1u);
  EXPECT_EQ(f[g.Find("stanford university")], 1u);
}

std::vector<std::string> RandomTexts(std::mt19937_64& rng, const std::vector<std::string>& vocab,
                                     int lines) {
  std::vector<std::string> out;
  for (int i = 0; i < lines; ++i) {
    const int len = 1 + static_cast<int>(rng() % 30);
    std::string s;
    for (int j = 0; j < len; ++j) {
      if (j) s += ' ';
      s += vocab[rng() % vocab.size()];
    }
    out.push_back(s);
  }
  return out;
}

TEST(FrequencyTest, MatchesSubstringOracle) {
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "ab", "ba"};
  std::string edges;
  std::vector<std::string> phrases = {"a", "b", "ab", "a b", "b a", "a b a", "c d", "ba b",
                                      "d d d"};
  for (std::size_t i = 1; i < phrases.size(); ++i) {
    std::string h = phrases[i - 1], t = phrases[i];
    std::replace(h.begin(), h.end(), ' ', '_');
    std::replace(t.begin(), t.end(), ' ', '_');
    edges += "r\t" + h + "\t" + t + "\n";
  }
  const KnowledgeGraph g = ParseGraph(edges);
  std::mt19937_64 rng(5);
  const auto texts = RandomTexts(rng, vocab, 300);
  const FrequencyTable f = CountConceptFrequencies(TokenizeAll(texts), g, 3);
  for (const std::string& p : phrases) {
    std::uint64_t expected = 0;
    for (const auto& t : texts) expected += oracle::CountAtWordBoundaries(t, p);
    EXPECT_EQ(f[g.Find(p)], expected) << p;
  }
}

TEST(FrequencyTest, IndependentOfOrderAndSharding) {
  const KnowledgeGraph g = ParseGraph("r\ta\tb\nr\ta_b\tc\nr\tc_c\td\n");
  std::mt19937_64 rng(9);
  auto texts = RandomTexts(rng, {"a", "b", "c", "d"}, 200);
  const FrequencyTable base = CountConceptFrequencies(TokenizeAll(texts), g, 1);
  std::shuffle(texts.begin(), texts.end(), rng);
  for (std::size_t workers : {1u, 2u, 7u, 64u}) {
    EXPECT_EQ(CountConceptFrequencies(TokenizeAll(texts), g, workers), base) << workers;
  }
  // Merge is associative and commutative.
  const auto corpus = TokenizeAll(texts);
  const ConceptMatcher m = ConceptMatcher::CompileAll(g);
  std::span<const TokenSequence> all(corpus);
  const FrequencyTable x = CountConceptFrequencies(all.subspan(0, 50), m, g.num_nodes());
  const FrequencyTable y = CountConceptFrequencies(all.subspan(50, 70), m, g.num_nodes());
  const FrequencyTable z = CountConceptFrequencies(all.subspan(120), m, g.num_nodes());
  FrequencyTable left = x;
  left.Merge(y);
  left.Merge(z);
  FrequencyTable right = z;
  FrequencyTable yz = y;
  yz.Merge(x);
  right.Merge(yz);
  EXPECT_EQ(left, right);
  EXPECT_EQ(left, base);
}

}  // namespace
}  // namespace ccm
