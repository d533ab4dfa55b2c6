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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ccm/error.h"
#include "ccm/log.h"
#include "oracles/oracles.h"

namespace ccm {
namespace {

// Lexicon holding every node of `g` with the given frequency (default 11).
ConceptLexicon FullLexicon(const KnowledgeGraph& g, const std::vector<std::uint64_t>& freq = {}) {
  std::vector<LexiconEntry> entries;
  for (const Concept& c : g.concepts()) {
    entries.push_back({c.id, c.surface, freq.empty() ? 11 : freq[c.id], c.word_count});
  }
  return ConceptLexicon(std::move(entries), 5, 0);
}

FrequencyTable Table(const ConceptLexicon& lex, std::size_t n) {
  FrequencyTable t(n);
  for (const LexiconEntry& e : lex.entries()) t.Add(e.id, e.frequency);
  return t;
}

std::vector<ConceptId> Ids(const KnowledgeGraph& g, std::initializer_list<const char*> names) {
  std::vector<ConceptId> out;
  for (const char* n : names) out.push_back(g.Find(n));
  std::sort(out.begin(), out.end());
  return out;
}

CurriculumConfig Config(std::uint32_t m, std::uint32_t k, std::uint32_t stages,
                        std::uint64_t min_frequency = 0) {
  CurriculumConfig c;
  c.initial_count = m;
  c.hops = k;
  c.stages = stages;
  c.min_frequency = min_frequency;
  return c;
}

class WarningCounter {
 public:
  WarningCounter() {
    log::SetSink([this](log::Level l, std::string_view) {
      if (l == log::Level::kWarning) ++count_;
    });
  }
  ~WarningCounter() { log::SetSink(nullptr); }
  int count() const { return count_; }

 private:
  int count_ = 0;
};

TEST(CurriculumConfigTest, Validate) {
  EXPECT_NO_THROW(CurriculumConfig().Validate());
  EXPECT_THROW(Config(0, 2, 4).Validate(), ConfigError);
  EXPECT_THROW(Config(1, 0, 4).Validate(), ConfigError);
  EXPECT_THROW(Config(1, 2, 1).Validate(), ConfigError);
  EXPECT_NE(Config(1, 2, 4).Digest(), Config(1, 3, 4).Digest());
}

TEST(CurriculumConfigTest, ScaledMinFrequency) {
  EXPECT_EQ(ScaledMinFrequency(kPaperScaleMinFrequencyPerMillion, 3'300'000'000ull), 100000u);
  EXPECT_EQ(ScaledMinFrequency(30.0, 1'000'000), 30u);
  EXPECT_EQ(ScaledMinFrequency(30.0, 1000), 1u);
}

TEST(SelectInitialTest, TopDegree) {
  // a has degree 5, b 4, c 3.
  const KnowledgeGraph g = ParseGraph(
      "r\ta\tx1\nr\ta\tx2\nr\ta\tx3\nr\ta\tx4\nr\ta\tx5\n"
      "r\tb\ty1\nr\tb\ty2\nr\tb\ty3\nr\tb\ty4\n"
      "r\tc\tz1\nr\tc\tz2\nr\tc\tz3\n");
  const ConceptLexicon lex = FullLexicon(g);
  EXPECT_EQ(SelectInitialConcepts(g, lex, Table(lex, g.num_nodes()), Config(2, 2, 4)),
            (std::vector<ConceptId>{g.Find("a"), g.Find("b")}));
}

TEST(SelectInitialTest, LowFrequencyExcludedBeforeRanking) {
  const KnowledgeGraph g = ParseGraph("r\thub\ta\nr\thub\tb\nr\thub\tc\nr\tx\ty\n");
  std::vector<std::uint64_t> f(g.num_nodes(), 50);
  f[g.Find("hub")] = 3;
  const ConceptLexicon lex = FullLexicon(g, f);
  const auto got = SelectInitialConcepts(g, lex, Table(lex, g.num_nodes()), Config(1, 2, 4, 10));
  ASSERT_EQ(got.size(), 1u);
  EXPECT_NE(got[0], g.Find("hub"));
}

TEST(SelectInitialTest, TooFewCandidatesWarns) {
  const KnowledgeGraph g = ParseGraph("r\ta\tb\nr\tb\tc\n");
  const ConceptLexicon lex = FullLexicon(g);
  WarningCounter warnings;
  const auto got = SelectInitialConcepts(g, lex, Table(lex, g.num_nodes()), Config(10, 2, 4));
  EXPECT_EQ(got.size(), 3u);
  EXPECT_EQ(got[0], g.Find("b"));
  EXPECT_EQ(warnings.count(), 1);
}

TEST(BuildStagesTest, PathGraph) {
  const KnowledgeGraph g = ParseGraph("r\ta\tb\nr\tb\tc\nr\tc\td\nr\td\te\n");
  const ConceptLexicon lex = FullLexicon(g);
  const CurriculumPlan p3 = BuildStages(g, Ids(g, {"a"}), Config(1, 2, 3), lex);
  ASSERT_EQ(p3.num_stages(), 3u);
  EXPECT_EQ(p3.stage_set(1), Ids(g, {"a"}));
  EXPECT_EQ(p3.stage_set(2), Ids(g, {"a", "b", "c"}));
  EXPECT_EQ(p3.stage_set(3), Ids(g, {"a", "b", "c", "d", "e"}));
  EXPECT_EQ(p3.visit_order, (std::vector<std::uint32_t>{1, 2, 3}));

  const CurriculumPlan p2 = BuildStages(g, Ids(g, {"a"}), Config(1, 2, 2), lex);
  ASSERT_EQ(p2.num_stages(), 2u);
  EXPECT_EQ(p2.stage_set(1), Ids(g, {"a"}));
  EXPECT_EQ(p2.stage_set(2), lex.ids());
}

TEST(BuildStagesTest, ExpansionSkipsNonLexiconNodesButWalksThroughThem) {
  // b is not in the lexicon; c is still reached through it.
  const KnowledgeGraph g = ParseGraph("r\ta\tb\nr\tb\tc\nr\tc\td\n");
  std::vector<LexiconEntry> entries;
  for (const char* n : {"a", "c", "d"}) entries.push_back({g.Find(n), n, 11, 1});
  const ConceptLexicon lex(std::move(entries), 5, 10);
  const CurriculumPlan p = BuildStages(g, Ids(g, {"a"}), Config(1, 2, 3), lex);
  EXPECT_EQ(p.stage_set(2), Ids(g, {"a", "c"}));
  EXPECT_EQ(p.stage_set(3), Ids(g, {"a", "c", "d"}));
}

TEST(BuildStagesTest, EmptyFirstStageIsAnError) {
  const KnowledgeGraph g = ParseGraph("r\ta\tb\n");
  const ConceptLexicon lex({{g.Find("a"), "a", 11, 1}}, 5, 10);
  EXPECT_THROW(BuildStages(g, Ids(g, {"b"}), Config(1, 2, 3), lex), ConfigError);
}

TEST(BuildStagesTest, PropertiesOnRandomGraphs) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 60);
    const oracle::EdgeList el = oracle::RandomGraph(rng, n, 1.5 + (rng() % 20) / 10.0);
    GraphBuilder b;
    for (int i = 0; i < n; ++i) b.AddNode(oracle::NodeName(i));
    for (auto [x, y] : el.edges) b.AddEdge(oracle::NodeName(x), oracle::NodeName(y));
    const KnowledgeGraph g = std::move(b).Build();
    const auto dist = oracle::AllPairsDistances(el);

    std::vector<LexiconEntry> entries;
    for (int i = 0; i < n; ++i) {
      if (rng() % 4) entries.push_back({ConceptId(i), oracle::NodeName(i), 11 + rng() % 100, 1});
    }
    if (entries.empty()) continue;
    const ConceptLexicon lex(entries, 5, 10);
    const std::uint32_t m = 1 + rng() % 5;
    const std::uint32_t k = 1 + rng() % 3;
    const std::uint32_t stages = 2 + rng() % 4;
    const CurriculumConfig cfg = Config(m, k, stages);
    const auto initial = SelectInitialConcepts(g, lex, Table(lex, n), cfg);
    const CurriculumPlan plan = BuildStages(g, initial, cfg, lex);

    ASSERT_EQ(plan.num_stages(), stages);
    EXPECT_NO_THROW(plan.Validate());
    EXPECT_EQ(plan.stages.back(), lex.ids());
    // Each intermediate stage is the previous one plus its lexicon k-hop ring.
    for (std::uint32_t i = 1; i + 1 < stages; ++i) {
      std::vector<int> prev(plan.stages[i - 1].begin(), plan.stages[i - 1].end());
      std::set<int> expected(prev.begin(), prev.end());
      for (int v : oracle::KHop(dist, prev, static_cast<int>(k))) {
        if (lex.Contains(v)) expected.insert(v);
      }
      EXPECT_EQ(std::vector<int>(plan.stages[i].begin(), plan.stages[i].end()),
                std::vector<int>(expected.begin(), expected.end()));
    }
  }
}

TEST(BaselineTest, RarityTakesMostFrequentFirst) {
  const KnowledgeGraph g = ParseGraph("r\ta\tb\nr\tc\td\n");
  std::vector<std::uint64_t> f(4);
  f[g.Find("a")] = 10;
  f[g.Find("b")] = 8;
  f[g.Find("c")] = 6;
  f[g.Find("d")] = 4;
  const ConceptLexicon lex = FullLexicon(g, f);
  const CurriculumPlan p = BaselineRarity(lex, 2);
  EXPECT_EQ(p.kind, "rarity");
  EXPECT_EQ(p.stage_set(1), Ids(g, {"a", "b"}));
  EXPECT_EQ(p.stage_set(2), lex.ids());
  EXPECT_THROW(BaselineRarity(lex, 1), ConfigError);
  EXPECT_NO_THROW(BaselineRarity(lex, 4).Validate());
}

TEST(BaselineTest, ReverseIsAnInvolution) {
  const KnowledgeGraph g = ParseGraph("r\ta\tb\nr\tb\tc\nr\tc\td\nr\td\te\n");
  const ConceptLexicon lex = FullLexicon(g);
  const CurriculumPlan p = BuildStages(g, Ids(g, {"a"}), Config(1, 1, 4), lex);
  const CurriculumPlan r = BaselineReverse(p);
  EXPECT_EQ(r.kind, "reverse");
  EXPECT_EQ(r.visit_order, (std::vector<std::uint32_t>{4, 3, 2, 1}));
  EXPECT_EQ(r.stages, p.stages);
  EXPECT_EQ(BaselineReverse(r), p);
}

TEST(BaselineTest, LengthSchedule) {
  EXPECT_EQ(BaselineLengthSchedule(4), (std::vector<std::uint32_t>{64, 128, 256, 512}));
  EXPECT_EQ(BaselineLengthSchedule(2), (std::vector<std::uint32_t>{64, 128}));
  EXPECT_EQ(BaselineLengthSchedule(5).back(), 1024u);
  EXPECT_THROW(BaselineLengthSchedule(0), ConfigError);
}

TEST(BaselineTest, MaskingRatioSchedule) {
  const MaskingRatioSchedule s(1000);
  EXPECT_DOUBLE_EQ(s(0), 0.10);
  EXPECT_DOUBLE_EQ(s(1000), 0.15);
  EXPECT_DOUBLE_EQ(s(500), 0.125);
  EXPECT_DOUBLE_EQ(s(5000), 0.15);
}

TEST(CurriculumKindTest, ParseRoundTrip) {
  for (const char* name : {"ccm", "rarity", "reverse", "masking-ratio", "length", "none"}) {
    EXPECT_EQ(CurriculumKindName(ParseCurriculumKind(name)), name);
  }
  EXPECT_THROW(ParseCurriculumKind("random"), ConfigError);
}

TEST(PlanTest, ValidateRejectsBrokenPlans) {
  CurriculumPlan p;
  p.stages = {{1, 2}, {1, 2, 3}};
  p.visit_order = {1, 2};
  EXPECT_NO_THROW(p.Validate());
  p.stages = {{1, 4}, {1, 2, 3}};
  EXPECT_THROW(p.Validate(), ConfigError);
  p.stages = {{1, 2}, {1, 2, 3}};
  p.visit_order = {1, 1};
  EXPECT_THROW(p.Validate(), ConfigError);
}

}  // namespace
}  // namespace ccm
