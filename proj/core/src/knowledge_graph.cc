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

#include "ccm/knowledge_graph.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "ccm/digest.h"
#include "ccm/error.h"

namespace ccm {

std::string LoadReport::ToString() const {
  return fmt::format(
      "valid={} skipped={} comments={} self_loops={} duplicate_edges={}",
      valid_lines, skipped_lines, comment_lines, self_loops, duplicate_edges);
}

void KnowledgeGraph::CheckId(ConceptId id) const {
  if (id >= concepts_.size()) {
    throw LookupError(fmt::format("unknown concept id {} (graph has {} nodes)",
                                  id, concepts_.size()));
  }
}

const Concept& KnowledgeGraph::concept_at(ConceptId id) const {
  CheckId(id);
  return concepts_[id];
}

std::size_t KnowledgeGraph::degree(ConceptId id) const {
  CheckId(id);
  return offsets_[id + 1] - offsets_[id];
}

std::span<const ConceptId> KnowledgeGraph::neighbors(ConceptId id) const {
  CheckId(id);
  return std::span<const ConceptId>(neighbors_).subspan(
      offsets_[id], offsets_[id + 1] - offsets_[id]);
}

ConceptId KnowledgeGraph::Find(std::string_view normalized_surface) const {
  auto it = index_.find(std::string(normalized_surface));
  return it == index_.end() ? kNoConcept : it->second;
}

std::vector<ConceptId> KnowledgeGraph::KHopNeighborhood(
    std::span<const ConceptId> seeds, std::uint32_t k) const {
  if (k == 0) throw ConfigError("k-hop neighborhood requires k >= 1");
  for (ConceptId s : seeds) CheckId(s);

  // Multi-source BFS truncated at depth k.
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dist(concepts_.size(), kUnseen);
  std::vector<ConceptId> frontier;
  for (ConceptId s : seeds) {
    if (dist[s] == kUnseen) {
      dist[s] = 0;
      frontier.push_back(s);
    }
  }

  std::vector<ConceptId> result;
  std::vector<ConceptId> next;
  for (std::uint32_t depth = 1; depth <= k && !frontier.empty(); ++depth) {
    next.clear();
    for (ConceptId u : frontier) {
      for (std::size_t e = offsets_[u]; e < offsets_[u + 1]; ++e) {
        ConceptId v = neighbors_[e];
        if (dist[v] != kUnseen) continue;
        dist[v] = depth;
        next.push_back(v);
        result.push_back(v);
      }
    }
    frontier.swap(next);
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::string KnowledgeGraph::Digest() const {
  Sha256 sha;
  sha.Update("ccm-graph-v1");
  sha.UpdateU64(concepts_.size());
  for (const Concept& c : concepts_) {
    sha.UpdateU64(c.surface.size()).Update(c.surface);
  }
  sha.UpdateU64(neighbors_.size());
  for (std::size_t off : offsets_) sha.UpdateU64(off);
  for (ConceptId n : neighbors_) sha.UpdateU64(n);
  return sha.HexDigest();
}

std::uint32_t GraphBuilder::Intern(std::string surface) {
  auto [it, inserted] =
      ids_.try_emplace(surface, static_cast<std::uint32_t>(surfaces_.size()));
  if (inserted) surfaces_.push_back(std::move(surface));
  return it->second;
}

bool GraphBuilder::AddNode(std::string_view surface) {
  std::string normalized = NormalizePhrase(surface, policy_);
  if (normalized.empty()) return false;
  Intern(std::move(normalized));
  return true;
}

bool GraphBuilder::AddEdge(std::string_view head, std::string_view tail) {
  std::string h = NormalizePhrase(head, policy_);
  std::string t = NormalizePhrase(tail, policy_);
  if (h.empty() || t.empty()) return false;
  if (h == t) {
    Intern(std::move(h));
    ++report_.self_loops;
    return false;
  }
  std::uint32_t a = Intern(std::move(h));
  std::uint32_t b = Intern(std::move(t));
  edges_.emplace_back(std::min(a, b), std::max(a, b));
  return true;
}

KnowledgeGraph GraphBuilder::Build() && {
  // Renumber so ids follow lexicographic surface order.
  const std::size_t n = surfaces_.size();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    return surfaces_[x] < surfaces_[y];
  });
  std::vector<ConceptId> remap(n);
  for (std::size_t i = 0; i < n; ++i) remap[order[i]] = static_cast<ConceptId>(i);

  for (auto& [a, b] : edges_) {
    ConceptId x = remap[a];
    ConceptId y = remap[b];
    a = std::min(x, y);
    b = std::max(x, y);
  }
  std::sort(edges_.begin(), edges_.end());
  auto last = std::unique(edges_.begin(), edges_.end());
  report_.duplicate_edges += static_cast<std::size_t>(edges_.end() - last);
  edges_.erase(last, edges_.end());

  KnowledgeGraph g;
  g.concepts_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Concept& c = g.concepts_[i];
    c.id = static_cast<ConceptId>(i);
    c.surface = std::move(surfaces_[order[i]]);
    c.word_count = static_cast<std::uint32_t>(CountWords(c.surface));
    g.index_.emplace(c.surface, c.id);
  }

  std::vector<std::size_t> degree(n, 0);
  for (const auto& [a, b] : edges_) {
    ++degree[a];
    ++degree[b];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
  g.neighbors_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [a, b] : edges_) {
    g.neighbors_[cursor[a]++] = b;
    g.neighbors_[cursor[b]++] = a;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
  }

  surfaces_.clear();
  ids_.clear();
  edges_.clear();
  return g;
}

namespace {

KnowledgeGraph ParseStream(std::istream& in, const NormalizationPolicy& policy,
                           LoadReport* report, const std::string& name) {
  GraphBuilder builder(policy);
  LoadReport& r = builder.mutable_report();
  std::string line;
  std::vector<std::string_view> cols;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') {
      ++r.comment_lines;
      continue;
    }
    cols.clear();
    std::string_view rest = line;
    while (cols.size() < 3) {
      std::size_t tab = rest.find('\t');
      cols.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    if (cols.size() < 3) {
      ++r.skipped_lines;
      continue;
    }
    const std::size_t loops = builder.report().self_loops;
    if (builder.AddEdge(cols[1], cols[2])) {
      ++r.valid_lines;
    } else if (builder.report().self_loops == loops) {
      ++r.skipped_lines;
    }
  }
  if (in.bad()) throw InputError(fmt::format("{}: read error", name));

  KnowledgeGraph g = std::move(builder).Build();
  // Build() leaves the builder empty but keeps its report, including the
  // duplicate count it computed.
  const LoadReport& final_report = builder.report();
  if (report != nullptr) *report = final_report;
  if (g.num_edges() == 0) {
    throw EmptyGraphError(fmt::format("{}: no valid edges ({})", name,
                                      final_report.ToString()));
  }
  return g;
}

}  // namespace

KnowledgeGraph LoadGraph(const std::filesystem::path& edge_file,
                         const NormalizationPolicy& policy, LoadReport* report) {
  std::ifstream in(edge_file, std::ios::binary);
  if (!in) {
    throw InputError(fmt::format("cannot open graph file '{}'", edge_file.string()));
  }
  return ParseStream(in, policy, report, edge_file.string());
}

KnowledgeGraph ParseGraph(std::string_view tsv, const NormalizationPolicy& policy,
                          LoadReport* report) {
  std::istringstream in{std::string(tsv)};
  return ParseStream(in, policy, report, "<memory>");
}

}  // namespace ccm
