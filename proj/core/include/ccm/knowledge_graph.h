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

#ifndef CCM_KNOWLEDGE_GRAPH_H_
#define CCM_KNOWLEDGE_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ccm/normalize.h"

namespace ccm {

using ConceptId = std::uint32_t;
inline constexpr ConceptId kNoConcept = std::numeric_limits<ConceptId>::max();

// A knowledge-graph node: a normalized word or phrase.
struct Concept {
  ConceptId id = kNoConcept;
  std::string surface;
  std::uint32_t word_count = 0;
};

// Counters emitted while reading an edge file.
struct LoadReport {
  std::size_t valid_lines = 0;
  std::size_t skipped_lines = 0;   // fewer than 3 columns or empty surfaces
  std::size_t comment_lines = 0;   // '#' or blank
  std::size_t self_loops = 0;      // head == tail after normalization
  std::size_t duplicate_edges = 0;

  std::string ToString() const;
};

// Undirected, deduplicated concept graph with dense ids.
//
// Node ids are assigned in lexicographic order of the normalized surface, so
// the same edge set always yields the same ids regardless of line order.
// Immutable after construction; all const members are safe to call
// concurrently.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  std::size_t num_nodes() const { return concepts_.size(); }
  std::size_t num_edges() const { return neighbors_.size() / 2; }

  const Concept& concept_at(ConceptId id) const;
  std::span<const Concept> concepts() const { return concepts_; }

  // Throws LookupError for unknown ids.
  std::size_t degree(ConceptId id) const;
  std::span<const ConceptId> neighbors(ConceptId id) const;

  // Returns kNoConcept if the normalized surface is not a node.
  ConceptId Find(std::string_view normalized_surface) const;

  // Every node whose shortest-path distance to some seed lies in [1, k].
  // Seeds themselves are never part of the result. Sorted by id.
  std::vector<ConceptId> KHopNeighborhood(std::span<const ConceptId> seeds,
                                          std::uint32_t k) const;

  // SHA-256 over surfaces and adjacency.
  std::string Digest() const;

 private:
  friend class GraphBuilder;

  void CheckId(ConceptId id) const;

  std::vector<Concept> concepts_;
  // CSR adjacency: neighbors of i are neighbors_[offsets_[i] .. offsets_[i+1]).
  std::vector<std::size_t> offsets_{0};
  std::vector<ConceptId> neighbors_;
  std::unordered_map<std::string, ConceptId> index_;
};

// Accumulates edges by surface and produces an immutable KnowledgeGraph.
class GraphBuilder {
 public:
  explicit GraphBuilder(NormalizationPolicy policy = {}) : policy_(policy) {}

  // Normalizes both surfaces. Returns false (and records why) if the edge is
  // unusable: an empty surface or a self-loop. Duplicate edges return true.
  bool AddEdge(std::string_view head, std::string_view tail);
  // Adds an isolated node. Returns false for an empty surface.
  bool AddNode(std::string_view surface);

  const LoadReport& report() const { return report_; }
  LoadReport& mutable_report() { return report_; }

  KnowledgeGraph Build() &&;

 private:
  std::uint32_t Intern(std::string surface);

  NormalizationPolicy policy_;
  LoadReport report_;
  std::vector<std::string> surfaces_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
};

// Reads a TSV edge file: relation \t head \t tail [\t ignored...].
// Relation types are collapsed into one undirected relation. Lines starting
// with '#' are comments. Throws InputError if the file cannot be read and
// EmptyGraphError if no valid edge was found.
KnowledgeGraph LoadGraph(const std::filesystem::path& edge_file,
                         const NormalizationPolicy& policy = {},
                         LoadReport* report = nullptr);

// Same as LoadGraph over an in-memory TSV string.
KnowledgeGraph ParseGraph(std::string_view tsv,
                          const NormalizationPolicy& policy = {},
                          LoadReport* report = nullptr);

}  // namespace ccm

#endif  // CCM_KNOWLEDGE_GRAPH_H_
