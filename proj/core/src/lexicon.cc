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

#include "ccm/lexicon.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "ccm/digest.h"
#include "ccm/error.h"
#include "ccm/log.h"

namespace ccm {

ConceptLexicon::ConceptLexicon(std::vector<LexiconEntry> entries,
                               std::uint32_t max_words,
                               std::uint64_t min_occurrences)
    : entries_(std::move(entries)),
      max_words_(max_words),
      min_occurrences_(min_occurrences) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const LexiconEntry& e = entries_[i];
    if (i > 0 && entries_[i - 1].id >= e.id) {
      throw ConfigError(fmt::format("lexicon ids not strictly increasing at {}", e.id));
    }
    if (e.surface.empty() || e.word_count == 0 ||
        e.word_count != CountWords(e.surface)) {
      throw ConfigError(fmt::format("lexicon entry {} has inconsistent surface '{}'",
                                    e.id, e.surface));
    }
    if (e.word_count >= max_words_ || e.frequency <= min_occurrences_) {
      throw ConfigError(fmt::format(
          "lexicon entry '{}' violates thresholds (words {} < {}, frequency {} > {})",
          e.surface, e.word_count, max_words_, e.frequency, min_occurrences_));
    }
  }
}

const LexiconEntry* ConceptLexicon::Find(ConceptId id) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), id,
      [](const LexiconEntry& e, ConceptId v) { return e.id < v; });
  return it != entries_.end() && it->id == id ? &*it : nullptr;
}

std::vector<ConceptId> ConceptLexicon::ids() const {
  std::vector<ConceptId> out;
  out.reserve(entries_.size());
  for (const LexiconEntry& e : entries_) out.push_back(e.id);
  return out;
}

std::uint32_t ConceptLexicon::max_entry_words() const {
  std::uint32_t m = 0;
  for (const LexiconEntry& e : entries_) m = std::max(m, e.word_count);
  return m;
}

std::string ConceptLexicon::Digest() const {
  Sha256 sha;
  sha.Update("ccm-lexicon-v1");
  sha.UpdateU64(max_words_).UpdateU64(min_occurrences_).UpdateU64(entries_.size());
  for (const LexiconEntry& e : entries_) {
    sha.UpdateU64(e.id).UpdateU64(e.frequency).UpdateU64(e.word_count);
    sha.UpdateU64(e.surface.size()).Update(e.surface);
  }
  return sha.HexDigest();
}

ConceptLexicon BuildLexicon(const KnowledgeGraph& graph, const FrequencyTable& freqs,
                            std::uint32_t max_words, std::uint64_t min_occurrences) {
  if (freqs.size() != graph.num_nodes()) {
    throw ConfigError(fmt::format("frequency table has {} entries, graph has {} nodes",
                                  freqs.size(), graph.num_nodes()));
  }
  std::vector<LexiconEntry> entries;
  for (const Concept& c : graph.concepts()) {
    const std::uint64_t f = freqs[c.id];
    if (c.word_count < max_words && f > min_occurrences) {
      entries.push_back({c.id, c.surface, f, c.word_count});
    }
  }
  if (entries.empty()) {
    log::Warn(fmt::format(
        "lexicon is empty: no concept has fewer than {} words and more than {} "
        "occurrences",
        max_words, min_occurrences));
  }
  return ConceptLexicon(std::move(entries), max_words, min_occurrences);
}

void WriteLexiconTsv(const ConceptLexicon& lexicon, std::ostream& out) {
  for (const LexiconEntry& e : lexicon.entries()) {
    out << e.surface << '\t' << e.id << '\t' << e.frequency << '\t' << e.word_count
        << '\n';
  }
}

std::string LexiconToTsv(const ConceptLexicon& lexicon) {
  std::ostringstream out;
  WriteLexiconTsv(lexicon, out);
  return out.str();
}

namespace {

template <typename T>
T ParseNumber(std::string_view field, std::size_t lineno) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw InputError(fmt::format("lexicon line {}: bad number '{}'", lineno, field));
  }
  return value;
}

}  // namespace

ConceptLexicon ParseLexiconTsv(std::string_view tsv, std::uint32_t max_words,
                               std::uint64_t min_occurrences) {
  std::vector<LexiconEntry> entries;
  std::size_t lineno = 0;
  while (!tsv.empty()) {
    std::size_t nl = tsv.find('\n');
    std::string_view line = tsv.substr(0, nl);
    tsv.remove_prefix(nl == std::string_view::npos ? tsv.size() : nl + 1);
    ++lineno;
    if (line.empty()) continue;
    std::string_view cols[4];
    std::size_t n = 0;
    while (n < 4) {
      std::size_t tab = line.find('\t');
      cols[n++] = line.substr(0, tab);
      if (tab == std::string_view::npos) break;
      line.remove_prefix(tab + 1);
    }
    if (n != 4) throw InputError(fmt::format("lexicon line {}: expected 4 columns", lineno));
    entries.push_back({ParseNumber<ConceptId>(cols[1], lineno), std::string(cols[0]),
                       ParseNumber<std::uint64_t>(cols[2], lineno),
                       ParseNumber<std::uint32_t>(cols[3], lineno)});
  }
  return ConceptLexicon(std::move(entries), max_words, min_occurrences);
}

ConceptLexicon ReadLexiconTsv(const std::filesystem::path& path, std::uint32_t max_words,
                              std::uint64_t min_occurrences) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open lexicon '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseLexiconTsv(buf.str(), max_words, min_occurrences);
}

}  // namespace ccm
