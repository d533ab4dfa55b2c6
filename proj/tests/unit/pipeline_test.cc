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

#include "ccm/pipeline.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ccm/error.h"
#include "ccm/log.h"
#include "ccm/plan_io.h"
#include "json.hpp"
#include "oracles/oracles.h"

namespace ccm {
namespace {

namespace fs = std::filesystem;

const fs::path kData = CCM_TEST_DATA_DIR;

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    log::SetLevel(log::Level::kError);
    dir_ = fs::temp_directory_path() /
           ("ccm_pipeline_" + std::string(::testing::UnitTest::GetInstance()
                                              ->current_test_info()
                                              ->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override {
    fs::remove_all(dir_);
    log::SetLevel(log::Level::kInfo);
  }

  PipelineConfig Config(const std::string& sub = "out") const {
    PipelineConfig c;
    c.graph = kData / "toy_graph.tsv";
    c.corpus = kData / "toy_corpus.txt";
    c.out = dir_ / sub;
    c.curriculum.min_frequency = 30;
    c.schedule.warmup_steps = 50;
    c.schedule.steps_per_stage = 25;
    c.schedule.max_steps = 1000;
    return c;
  }

  fs::path dir_;
};

TEST_F(PipelineTest, BuildWritesNestedPlan) {
  const PipelineConfig c = Config();
  const BuildSummary s = RunBuild(c);
  EXPECT_EQ(s.nodes, 47u);
  EXPECT_EQ(s.sequences, 500u);
  ASSERT_EQ(s.stage_sizes.size(), 4u);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_LE(s.stage_sizes[i - 1], s.stage_sizes[i]);
  EXPECT_EQ(s.stage_sizes.back(), s.lexicon_size);
  for (const char* f : {"graph_index.tsv", "lexicon.tsv", "plan.json", "build_report.json"}) {
    EXPECT_TRUE(fs::exists(c.out / f)) << f;
  }
  EXPECT_NO_THROW(ReadPlan(c.out / "plan.json").Validate());
}

TEST_F(PipelineTest, RerunIsByteIdentical) {
  PipelineConfig a = Config("a");
  PipelineConfig b = Config("b");
  b.workers = 3;
  RunBuild(a);
  RunMask(a);
  RunBuild(b);
  RunMask(b);
  for (const char* f : {"graph_index.tsv", "lexicon.tsv", "plan.json", "build_report.json",
                        "examples.jsonl"}) {
    EXPECT_EQ(Slurp(a.out / f), Slurp(b.out / f)) << f;
  }
  // The manifest snapshot leaves out runtime-only knobs such as workers.
  EXPECT_EQ(Slurp(a.out / "manifest.json"), Slurp(b.out / "manifest.json"));
}

TEST_F(PipelineTest, ManifestCountsMatchScheduleUnroll) {
  const PipelineConfig c = Config();
  RunBuild(c);
  const MaskSummary m = RunMask(c);
  std::map<std::uint32_t, std::uint64_t> expected;
  for (auto p : oracle::UnrollSchedule(50, 25, 4, 1000)) ++expected[p];
  EXPECT_EQ(m.per_stage, expected);
  const auto manifest = nlohmann::json::parse(Slurp(c.out / "manifest.json"));
  EXPECT_EQ(manifest["examples"], 1000);
  for (auto [stage, n] : expected) EXPECT_EQ(manifest["per_stage"][std::to_string(stage)], n);
}

TEST_F(PipelineTest, AllCurriculumKindsRun) {
  PipelineConfig c = Config();
  RunBuild(c);
  for (const char* kind : {"ccm", "rarity", "reverse", "masking-ratio", "length", "none"}) {
    c.curriculum_kind = kind;
    c.examples = dir_ / (std::string(kind) + ".jsonl");
    const MaskSummary m = RunMask(c);
    EXPECT_EQ(m.examples, 1000u) << kind;
    if (c.curriculum_kind == "none" || c.curriculum_kind == "masking-ratio") {
      EXPECT_EQ(m.per_stage.size(), 1u) << kind;
    } else {
      EXPECT_EQ(m.per_stage.size(), 5u) << kind;
    }
  }
  c.curriculum_kind = "bogus";
  try {
    RunMask(c);
    FAIL();
  } catch (const PhaseError& e) {
    EXPECT_TRUE(e.is_config_error());
  }
}

TEST_F(PipelineTest, ValidationHappensBeforeAnyOutput) {
  PipelineConfig c = Config();
  c.graph = dir_ / "missing.tsv";
  try {
    RunBuild(c);
    FAIL();
  } catch (const PhaseError& e) {
    EXPECT_EQ(e.phase(), "config");
    EXPECT_TRUE(e.is_config_error());
    EXPECT_NE(std::string(e.what()).find("missing.tsv"), std::string::npos);
  }
  EXPECT_FALSE(fs::exists(c.out));

  c = Config();
  c.curriculum.stages = 1;
  EXPECT_THROW(RunBuild(c), PhaseError);
  EXPECT_FALSE(fs::exists(c.out));
}

TEST_F(PipelineTest, MaskWithoutBuildIsAConfigError) {
  try {
    RunMask(Config());
    FAIL();
  } catch (const PhaseError& e) {
    EXPECT_TRUE(e.is_config_error());
  }
}

TEST_F(PipelineTest, MaskRejectsPlanFromOtherThresholds) {
  PipelineConfig c = Config();
  RunBuild(c);
  c.min_occurrences = 11;
  EXPECT_THROW(RunMask(c), PhaseError);
}

TEST_F(PipelineTest, VerifyPassesOnFreshArtifacts) {
  const PipelineConfig c = Config();
  RunBuild(c);
  RunMask(c);
  for (const VerifyCheck& check : RunVerify(c)) EXPECT_TRUE(check.ok) << check.name << ": " << check.detail;
}

TEST_F(PipelineTest, VerifyDetectsTamperedPlan) {
  const PipelineConfig c = Config();
  RunBuild(c);
  CurriculumPlan plan = ReadPlan(c.out / "plan.json");
  plan.stages[1].push_back(plan.stages.back().back() + 1000);
  std::ofstream(c.out / "plan.json") << PlanToJson(plan);
  bool any_failed = false;
  for (const VerifyCheck& check : RunVerify(c)) any_failed |= !check.ok;
  EXPECT_TRUE(any_failed);
}

TEST_F(PipelineTest, ReportWritesQuadrantsAndCoverage) {
  PipelineConfig c = Config();
  RunBuild(c);
  RunReport(c);
  const std::string tsv = Slurp(c.out / "concept_report.tsv");
  EXPECT_EQ(tsv.rfind("surface\tid\tdegree\tfrequency\tquadrant\n", 0), 0u);
  const auto cov = nlohmann::json::parse(Slurp(c.out / "coverage.json"));
  ASSERT_EQ(cov["stages"].size(), 4u);
  double prev = 0;
  for (const auto& s : cov["stages"]) {
    EXPECT_GE(s["fraction"].get<double>(), prev);
    prev = s["fraction"].get<double>();
  }
}

TEST_F(PipelineTest, EmptyLexiconGivesEmptyReport) {
  PipelineConfig c = Config();
  c.min_occurrences = 1000000;
  log::SetLevel(log::Level::kWarning);
  int warnings = 0;
  log::SetSink([&](log::Level l, std::string_view) { warnings += l == log::Level::kWarning; });
  EXPECT_THROW(RunBuild(c), PhaseError);  // no first stage without concepts
  log::SetSink(nullptr);
  EXPECT_GE(warnings, 1);
  ASSERT_TRUE(fs::exists(c.out / "lexicon.tsv"));
  EXPECT_NO_THROW(RunReport(c));
  EXPECT_EQ(Slurp(c.out / "concept_report.tsv"), "surface\tid\tdegree\tfrequency\tquadrant\n");
}

TEST_F(PipelineTest, MinFrequencyScalesWithCorpus) {
  PipelineConfig c = Config();
  c.min_frequency_per_million = kPaperScaleMinFrequencyPerMillion;
  const BuildSummary s = RunBuild(c);
  EXPECT_EQ(s.min_frequency, ScaledMinFrequency(kPaperScaleMinFrequencyPerMillion, s.words));
  EXPECT_EQ(ReadPlan(c.out / "plan.json").config.min_frequency, s.min_frequency);
}

TEST(PipelineConfigTest, JsonRoundTripAndUnknownKeys) {
  PipelineConfig c;
  c.graph = "g.tsv";
  c.curriculum.hops = 3;
  c.min_frequency_per_million = 30.3;
  c.hf_threshold = 5;
  c.masking.odds = {0.7, 0.2, 0.1};
  const PipelineConfig back = PipelineConfig::FromJson(c.ToJson(), PipelineConfig());
  EXPECT_EQ(back.ToJson(), c.ToJson());
  EXPECT_THROW(PipelineConfig::FromJson("{\"hopz\": 2}", PipelineConfig()), ConfigError);
  EXPECT_THROW(PipelineConfig::FromJson("{\"hops\": \"two\"}", PipelineConfig()), ConfigError);
  EXPECT_THROW(PipelineConfig::FromJson("[1]", PipelineConfig()), ConfigError);
  const PipelineConfig partial = PipelineConfig::FromJson("{\"stages\": 6}", c);
  EXPECT_EQ(partial.curriculum.stages, 6u);
  EXPECT_EQ(partial.curriculum.hops, 3u);
}

}  // namespace
}  // namespace ccm
