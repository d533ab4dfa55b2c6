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

#include <gtest/gtest.h>

#include "ccm/error.h"
#include "ccm/example_io.h"
#include "ccm/plan_io.h"
#include "ccm/tokenizer.h"
#include "ccm/matcher.h"

namespace ccm {
namespace {

CurriculumPlan SamplePlan() {
  CurriculumPlan p;
  p.kind = "ccm";
  p.config.initial_count = 2;
  p.config.min_frequency = 7;
  p.stages = {{3}, {1, 3}, {1, 2, 3}};
  p.visit_order = {1, 2, 3};
  p.digests = {"g", "l", "c"};
  return p;
}

TEST(PlanIoTest, RoundTrip) {
  const CurriculumPlan p = SamplePlan();
  const std::string json = PlanToJson(p);
  EXPECT_EQ(PlanFromJson(json), p);
  EXPECT_EQ(PlanToJson(PlanFromJson(json)), json);
  EXPECT_EQ(json.back(), '\n');
}

TEST(PlanIoTest, RejectsMalformedOrInvalidPlans) {
  EXPECT_THROW(PlanFromJson("{"), InputError);
  EXPECT_THROW(PlanFromJson("{}"), InputError);
  CurriculumPlan p = SamplePlan();
  p.stages = {{3}, {1}, {1, 2, 3}};
  EXPECT_THROW(PlanFromJson(PlanToJson(p)), ConfigError);
}

TEST(ExampleIoTest, RoundTrip) {
  MaskedExample ex;
  ex.step = 12;
  ex.stage = 2;
  ex.seed = 0xfffffffffffffff1ull;
  ex.original_tokens = {"stan", "##ford", "student"};
  ex.corrupted_tokens = {"[MASK]", "[MASK]", "student"};
  ex.label_positions = {0, 1};
  const std::string line = ExampleToJsonLine(ex);
  EXPECT_EQ(line,
            "{\"step\":12,\"stage\":2,\"tokens\":[\"stan\",\"##ford\",\"student\"],"
            "\"corrupted\":[\"[MASK]\",\"[MASK]\",\"student\"],\"labels\":[{\"pos\":0,"
            "\"original_token\":\"stan\"},{\"pos\":1,\"original_token\":\"##ford\"}],"
            "\"seed\":18446744073709551601}\n");
  EXPECT_EQ(ExampleFromJsonLine(line), ex);
}

TEST(ExampleIoTest, ErrorsNameTheField) {
  try {
    ExampleFromJsonLine("{\"step\":1,\"stage\":0,\"tokens\":[],\"corrupted\":[],\"labels\":[]}");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("seed"), std::string::npos);
  }
  EXPECT_THROW(ExampleFromJsonLine(
                   "{\"step\":1,\"stage\":0,\"tokens\":[\"a\"],\"corrupted\":[\"a\"],"
                   "\"labels\":[{\"pos\":0,\"original_token\":\"b\"}],\"seed\":1}"),
               InputError);
}

TEST(ExampleIoTest, AnnotationLine) {
  const ConceptMatcher m = ConceptMatcher::Compile({{4, "dog"}});
  TokenSequence seq = Tokenize("a dog", WordPieceTokenizer::Default(), {}, "f:1");
  EXPECT_EQ(AnnotationToJsonLine(m.Annotate(std::move(seq))),
            "{\"source_id\":\"f:1\",\"spans\":[{\"concept_id\":4,\"word_start\":1,"
            "\"word_end\":2}]}\n");
}

}  // namespace
}  // namespace ccm
