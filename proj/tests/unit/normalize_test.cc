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

#include "ccm/normalize.h"

#include <gtest/gtest.h>

namespace ccm {
namespace {

TEST(NormalizeTest, LowercasesAndSplitsUnderscores) {
  EXPECT_EQ(NormalizePhrase("Hot_Dog"), "hot dog");
  EXPECT_EQ(NormalizePhrase("  Stanford   University "), "stanford university");
}

TEST(NormalizeTest, DecodesConceptNetUris) {
  EXPECT_EQ(NormalizePhrase("/c/en/hot_dog/n"), "hot dog");
  EXPECT_EQ(NormalizePhrase("/c/en/dog"), "dog");
}

TEST(NormalizeTest, StripsEdgePunctuationOnly) {
  EXPECT_EQ(NormalizeWords("\"Hello,\" she said."),
            (std::vector<std::string>{"hello", "she", "said"}));
  EXPECT_EQ(NormalizePhrase("rock'n'roll"), "rock'n'roll");
  EXPECT_TRUE(NormalizeWords(" -- ... ").empty());
}

TEST(NormalizeTest, PolicyCanBeRelaxed) {
  NormalizationPolicy keep;
  keep.lowercase = false;
  keep.underscores_to_spaces = false;
  EXPECT_EQ(NormalizePhrase("Hot_Dog", keep), "Hot_Dog");
}

TEST(NormalizeTest, CountWords) {
  EXPECT_EQ(CountWords(""), 0u);
  EXPECT_EQ(CountWords("dog"), 1u);
  EXPECT_EQ(CountWords("stanford university"), 2u);
}

TEST(NormalizeTest, NonAsciiBytesAreWordCharacters) {
  EXPECT_EQ(NormalizePhrase("Caf\xc3\xa9!"), "caf\xc3\xa9");
}

}  // namespace
}  // namespace ccm
