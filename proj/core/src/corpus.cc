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

#include <algorithm>
#include <fstream>
#include <numeric>

#include <fmt/format.h>

#include "ccm/error.h"
#include "ccm/matcher.h"
#include "parallel.h"

namespace ccm {

TokenSequence Tokenize(std::string_view text, const SubwordTokenizer& tokenizer,
                       const NormalizationPolicy& policy, std::string source_id) {
  TokenSequence seq;
  seq.source_id = std::move(source_id);
  seq.words = NormalizeWords(text, policy);
  seq.word_boundaries.reserve(seq.words.size());
  for (const std::string& word : seq.words) {
    auto begin = static_cast<std::uint32_t>(seq.tokens.size());
    for (std::string& piece : tokenizer.TokenizeWord(word)) {
      seq.tokens.push_back(std::move(piece));
    }
    seq.word_boundaries.push_back({begin, static_cast<std::uint32_t>(seq.tokens.size())});
  }
  return seq;
}

TokenSequence TruncateToTokens(const TokenSequence& seq, std::size_t max_tokens) {
  if (seq.tokens.size() <= max_tokens) return seq;
  TokenSequence out;
  out.source_id = seq.source_id;
  std::size_t keep_words = 0;
  while (keep_words < seq.words.size() &&
         seq.word_boundaries[keep_words].end <= max_tokens) {
    ++keep_words;
  }
  if (keep_words == 0) {
    if (max_tokens == 0 || seq.words.empty()) return out;
    out.words.emplace_back();
    out.tokens.assign(seq.tokens.begin(),
                      seq.tokens.begin() + static_cast<std::ptrdiff_t>(max_tokens));
    out.word_boundaries.push_back({0, static_cast<std::uint32_t>(max_tokens)});
    return out;
  }
  const std::uint32_t cut = seq.word_boundaries[keep_words - 1].end;
  out.words.assign(seq.words.begin(),
                   seq.words.begin() + static_cast<std::ptrdiff_t>(keep_words));
  out.word_boundaries.assign(
      seq.word_boundaries.begin(),
      seq.word_boundaries.begin() + static_cast<std::ptrdiff_t>(keep_words));
  out.tokens.assign(seq.tokens.begin(), seq.tokens.begin() + cut);
  return out;
}

namespace {

void ReadLines(const std::filesystem::path& file, std::vector<CorpusLine>& out) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open corpus file '{}'", file.string()));
  const std::string name = file.filename().string();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t\f\v") == std::string::npos) continue;
    out.push_back({fmt::format("{}:{}", name, lineno), std::move(line)});
  }
  if (in.bad()) throw InputError(fmt::format("{}: read error", file.string()));
}

}  // namespace

std::vector<CorpusLine> ReadCorpus(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) {
    throw InputError(fmt::format("corpus path '{}' does not exist", path.string()));
  }
  std::vector<CorpusLine> lines;
  if (std::filesystem::is_directory(path, ec)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) ReadLines(f, lines);
  } else {
    ReadLines(path, lines);
  }
  return lines;
}

std::vector<TokenSequence> TokenizeCorpus(std::span<const CorpusLine> lines,
                                          const SubwordTokenizer& tokenizer,
                                          const NormalizationPolicy& policy,
                                          std::size_t workers) {
  std::vector<TokenSequence> out(lines.size());
  internal::ParallelShards(lines.size(), workers,
                           [&](std::size_t, std::size_t begin, std::size_t end) {
                             for (std::size_t i = begin; i < end; ++i) {
                               out[i] = Tokenize(lines[i].text, tokenizer, policy,
                                                 lines[i].source_id);
                             }
                           });
  std::erase_if(out, [](const TokenSequence& s) { return s.tokens.empty(); });
  return out;
}

void FrequencyTable::Merge(const FrequencyTable& other) {
  if (counts_.size() < other.counts_.size()) counts_.resize(other.counts_.size(), 0);
  for (std::size_t i = 0; i < other.counts_.size(); ++i) counts_[i] += other.counts_[i];
}

std::uint64_t FrequencyTable::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

FrequencyTable CountConceptFrequencies(std::span<const TokenSequence> corpus,
                                       const ConceptMatcher& matcher,
                                       std::size_t num_concepts,
                                       std::size_t workers) {
  const std::size_t shards = internal::ShardCount(corpus.size(), workers);
  std::vector<FrequencyTable> partial(shards, FrequencyTable(num_concepts));
  internal::ParallelShards(
      corpus.size(), shards, [&](std::size_t w, std::size_t begin, std::size_t end) {
        std::vector<ConceptMatcher::WordMatch> matches;
        FrequencyTable& table = partial[w];
        for (std::size_t i = begin; i < end; ++i) {
          matches.clear();
          matcher.FindWordMatches(corpus[i].words, matches);
          for (const auto& m : matches) table.Add(m.concept_id);
        }
      });
  FrequencyTable total(num_concepts);
  for (const FrequencyTable& t : partial) total.Merge(t);
  return total;
}

FrequencyTable CountConceptFrequencies(std::span<const TokenSequence> corpus,
                                       const KnowledgeGraph& graph,
                                       std::size_t workers) {
  return CountConceptFrequencies(corpus, ConceptMatcher::CompileAll(graph),
                                 graph.num_nodes(), workers);
}

}  // namespace ccm
