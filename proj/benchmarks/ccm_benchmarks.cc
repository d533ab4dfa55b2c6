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

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ccm/knowledge_graph.h"
#include "ccm/masker.h"
#include "ccm/matcher.h"
#include "ccm/normalize.h"
#include "ccm/tokenizer.h"

namespace ccm {
namespace {

std::string Word(std::uint32_t i) { return "w" + std::to_string(i); }

std::vector<ConceptMatcher::Pattern> Patterns(std::size_t n, std::uint32_t vocab) {
  std::mt19937_64 rng(1);
  std::set<std::string> seen;
  std::vector<ConceptMatcher::Pattern> out;
  while (out.size() < n) {
    std::string s = Word(rng() % vocab);
    for (std::uint64_t extra = rng() % 3; extra > 0; --extra) s += " " + Word(rng() % vocab);
    if (seen.insert(s).second) out.push_back({static_cast<ConceptId>(out.size()), s});
  }
  return out;
}

std::vector<std::string> Words(std::size_t n, std::uint32_t vocab) {
  std::mt19937_64 rng(2);
  std::vector<std::string> out(n);
  for (auto& w : out) w = Word(rng() % vocab);
  return out;
}

void BM_MatcherFindWordMatches(benchmark::State& state) {
  const ConceptMatcher m = ConceptMatcher::Compile(Patterns(state.range(0), 5000));
  const auto words = Words(512, 5000);
  std::vector<ConceptMatcher::WordMatch> out;
  for (auto _ : state) {
    out.clear();
    m.FindWordMatches(words, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * words.size());
}
BENCHMARK(BM_MatcherFindWordMatches)->Arg(1000)->Arg(10000)->Arg(100000);

// Window-by-window comparison against every pattern, for scale.
void BM_NaiveWindowScan(benchmark::State& state) {
  const auto patterns = Patterns(state.range(0), 5000);
  std::vector<std::vector<std::string>> split;
  for (const auto& p : patterns) split.push_back(NormalizeWords(p.surface));
  const auto words = Words(512, 5000);
  for (auto _ : state) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (const auto& pw : split) {
        if (i + pw.size() <= words.size() &&
            std::equal(pw.begin(), pw.end(), words.begin() + i)) {
          ++hits;
        }
      }
    }
    benchmark::DoNotOptimize(hits);
  }
  state.SetItemsProcessed(state.iterations() * words.size());
}
BENCHMARK(BM_NaiveWindowScan)->Arg(1000)->Arg(10000);

void BM_KHopNeighborhood(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  GraphBuilder b;
  for (int e = 0; e < 3 * n; ++e) b.AddEdge(Word(rng() % n), Word(rng() % n));
  const KnowledgeGraph g = std::move(b).Build();
  std::vector<ConceptId> seeds;
  for (int i = 0; i < n / 100 + 1; ++i) seeds.push_back(rng() % g.num_nodes());
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  for (auto _ : state) benchmark::DoNotOptimize(g.KHopNeighborhood(seeds, 2));
}
BENCHMARK(BM_KHopNeighborhood)->Arg(10000)->Arg(100000);

void BM_MaskConceptSpans(benchmark::State& state) {
  const auto words = Words(128, 5000);
  const ConceptMatcher m = ConceptMatcher::Compile(Patterns(10000, 5000));
  std::vector<std::string> vocab = {"[UNK]", "[MASK]"};
  for (std::uint32_t i = 0; i < 5000; ++i) vocab.push_back(Word(i));
  const WordPieceTokenizer tok(vocab);
  std::string text;
  for (const auto& w : words) text += w + " ";
  const AnnotatedSequence a = m.Annotate(Tokenize(text, tok));
  std::vector<ConceptId> ids(10000);
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<ConceptId>(i);
  const EligibleSet eligible = EligibleSet::Concepts(ids, 1, true);
  const CorruptionVocab cv = CorruptionVocab::From(tok);
  std::uint64_t step = 0;
  for (auto _ : state) {
    Rng rng(DeriveSeed(0, step++));
    const auto spans = EligibleSpans(a, eligible);
    const double p = DynamicMaskProbability(a.sequence.num_tokens(), spans);
    benchmark::DoNotOptimize(MaskConceptSpans(a.sequence.tokens, spans, p, rng, cv));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_MaskConceptSpans);

}  // namespace
}  // namespace ccm

BENCHMARK_MAIN();
