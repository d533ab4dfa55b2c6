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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "ccm/corpus.h"
#include "ccm/digest.h"
#include "ccm/error.h"
#include "ccm/example_io.h"
#include "ccm/lexicon.h"
#include "ccm/log.h"
#include "ccm/matcher.h"
#include "ccm/plan_io.h"
#include "ccm/report.h"
#include "ccm/tokenizer.h"
#include "json.hpp"

namespace ccm {

using nlohmann::json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Config

std::string PipelineConfig::ToJson() const {
  json j;
  j["graph"] = graph.string();
  j["corpus"] = corpus.string();
  j["out"] = out.string();
  j["vocab"] = vocab.string();
  j["examples"] = examples.string();
  j["initial_count"] = curriculum.initial_count;
  j["hops"] = curriculum.hops;
  j["stages"] = curriculum.stages;
  j["min_frequency"] = curriculum.min_frequency;
  j["include_nonconcept_words"] = curriculum.include_nonconcept_words_in_final;
  j["min_frequency_per_million"] =
      min_frequency_per_million ? json(*min_frequency_per_million) : json(nullptr);
  j["max_words"] = max_words;
  j["min_occurrences"] = min_occurrences;
  j["warmup_steps"] = schedule.warmup_steps;
  j["steps_per_stage"] = schedule.steps_per_stage;
  j["max_steps"] = schedule.max_steps;
  j["target_mask_ratio"] = masking.target_ratio;
  j["corruption_odds"] = {masking.odds.mask, masking.odds.random, masking.odds.keep};
  j["max_seq_len"] = masking.max_seq_len;
  j["curriculum"] = curriculum_kind;
  j["seed"] = seed;
  j["workers"] = workers;
  j["verbosity"] = verbosity;
  j["dump_annotations"] = dump_annotations;
  j["hf_threshold"] = hf_threshold ? json(*hf_threshold) : json(nullptr);
  j["rc_threshold"] = rc_threshold ? json(*rc_threshold) : json(nullptr);
  return j.dump(2) + "\n";
}

PipelineConfig PipelineConfig::FromJson(const std::string& text, PipelineConfig c) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("malformed config JSON: {}", e.what()));
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "graph") {
        c.graph = v.get<std::string>();
      } else if (key == "corpus") {
        c.corpus = v.get<std::string>();
      } else if (key == "out") {
        c.out = v.get<std::string>();
      } else if (key == "vocab") {
        c.vocab = v.get<std::string>();
      } else if (key == "examples") {
        c.examples = v.get<std::string>();
      } else if (key == "initial_count") {
        c.curriculum.initial_count = v.get<std::uint32_t>();
      } else if (key == "hops") {
        c.curriculum.hops = v.get<std::uint32_t>();
      } else if (key == "stages") {
        c.curriculum.stages = v.get<std::uint32_t>();
      } else if (key == "min_frequency") {
        c.curriculum.min_frequency = v.get<std::uint64_t>();
      } else if (key == "include_nonconcept_words") {
        c.curriculum.include_nonconcept_words_in_final = v.get<bool>();
      } else if (key == "min_frequency_per_million") {
        c.min_frequency_per_million =
            v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
      } else if (key == "max_words") {
        c.max_words = v.get<std::uint32_t>();
      } else if (key == "min_occurrences") {
        c.min_occurrences = v.get<std::uint64_t>();
      } else if (key == "warmup_steps") {
        c.schedule.warmup_steps = v.get<std::uint64_t>();
      } else if (key == "steps_per_stage") {
        c.schedule.steps_per_stage = v.get<std::uint64_t>();
      } else if (key == "max_steps") {
        c.schedule.max_steps = v.get<std::uint64_t>();
      } else if (key == "target_mask_ratio") {
        c.masking.target_ratio = v.get<double>();
      } else if (key == "corruption_odds") {
        auto odds = v.get<std::vector<double>>();
        if (odds.size() != 3) throw ConfigError("corruption_odds needs 3 values");
        c.masking.odds = {odds[0], odds[1], odds[2]};
      } else if (key == "max_seq_len") {
        c.masking.max_seq_len = v.get<std::uint32_t>();
      } else if (key == "curriculum") {
        c.curriculum_kind = v.get<std::string>();
      } else if (key == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else if (key == "workers") {
        c.workers = v.get<std::size_t>();
      } else if (key == "verbosity") {
        c.verbosity = v.get<std::string>();
      } else if (key == "dump_annotations") {
        c.dump_annotations = v.get<bool>();
      } else if (key == "hf_threshold") {
        c.hf_threshold = v.is_null() ? std::nullopt
                                     : std::optional<std::uint64_t>(v.get<std::uint64_t>());
      } else if (key == "rc_threshold") {
        c.rc_threshold = v.is_null() ? std::nullopt
                                     : std::optional<std::size_t>(v.get<std::size_t>());
      } else {
        throw ConfigError(fmt::format("unknown config key '{}'", key));
      }
    } catch (const json::exception& e) {
      throw ConfigError(fmt::format("config key '{}': {}", key, e.what()));
    }
  }
  return c;
}

PipelineConfig PipelineConfig::Load(const fs::path& path, PipelineConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return FromJson(buf.str(), std::move(base));
}

fs::path PipelineConfig::examples_path() const {
  return examples.empty() ? out / "examples.jsonl" : examples;
}

namespace {

// ---------------------------------------------------------------------------
// Helpers

template <typename Fn>
auto Phase(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const PhaseError&) {
    throw;
  } catch (const ConfigError& e) {
    throw PhaseError(name, e.what(), true);
  } catch (const InputError& e) {
    // Bad input data is the caller's to fix, like a bad flag.
    throw PhaseError(name, e.what(), true);
  } catch (const std::exception& e) {
    throw PhaseError(name, e.what(), false);
  }
}

void RequireFile(const fs::path& path, std::string_view what) {
  if (path.empty()) throw ConfigError(fmt::format("no {} path given", what));
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    throw ConfigError(fmt::format("{} '{}' does not exist", what, path.string()));
  }
}

void RequireOutDir(const fs::path& out) {
  if (out.empty()) throw ConfigError("no output directory given");
  std::error_code ec;
  if (fs::exists(out, ec) && !fs::is_directory(out, ec)) {
    throw ConfigError(fmt::format("output path '{}' is not a directory", out.string()));
  }
}

void ValidateCommon(const PipelineConfig& c) {
  if (c.workers < 1) throw ConfigError("workers must be >= 1");
  if (c.max_words < 1) throw ConfigError("max_words must be >= 1");
  if (c.min_frequency_per_million && *c.min_frequency_per_million < 0) {
    throw ConfigError("min_frequency_per_million must be >= 0");
  }
  c.curriculum.Validate();
  c.schedule.Validate();
  c.masking.Validate();
  ParseCurriculumKind(c.curriculum_kind);
  if (!c.vocab.empty()) RequireFile(c.vocab, "vocabulary");
}

void WriteFileAtomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError(fmt::format("cannot write '{}'", path.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InputError(fmt::format("write failed for '{}'", path.string()));
  }
  fs::rename(tmp, path);
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::unique_ptr<SubwordTokenizer> MakeTokenizer(const PipelineConfig& c) {
  if (c.vocab.empty()) return std::make_unique<WordPieceTokenizer>(WordPieceTokenizer::Default());
  return std::make_unique<WordPieceTokenizer>(WordPieceTokenizer::FromFile(c.vocab));
}

std::string GraphIndexTsv(const KnowledgeGraph& g) {
  std::string out;
  for (const Concept& c : g.concepts()) {
    out += fmt::format("{}\t{}\t{}\n", c.id, c.surface, g.degree(c.id));
  }
  return out;
}

struct GraphIndexRow {
  ConceptId id;
  std::string surface;
  std::size_t degree;
};

std::vector<GraphIndexRow> ParseGraphIndex(std::string_view tsv) {
  std::vector<GraphIndexRow> rows;
  std::size_t lineno = 0;
  while (!tsv.empty()) {
    const std::size_t nl = tsv.find('\n');
    std::string_view line = tsv.substr(0, nl);
    tsv.remove_prefix(nl == std::string_view::npos ? tsv.size() : nl + 1);
    ++lineno;
    if (line.empty()) continue;
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = line.rfind('\t');
    if (t1 == std::string_view::npos || t1 == t2) {
      throw InputError(fmt::format("graph index line {}: expected 3 columns", lineno));
    }
    GraphIndexRow row{0, std::string(line.substr(t1 + 1, t2 - t1 - 1)), 0};
    auto parse = [&](std::string_view f, auto& v) {
      auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || p != f.data() + f.size()) {
        throw InputError(fmt::format("graph index line {}: bad number '{}'", lineno, f));
      }
    };
    parse(line.substr(0, t1), row.id);
    parse(line.substr(t2 + 1), row.degree);
    if (row.id != rows.size()) {
      throw InputError(fmt::format("graph index line {}: ids must be dense", lineno));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<TokenSequence> LoadCorpus(const PipelineConfig& c,
                                      const SubwordTokenizer& tokenizer) {
  std::vector<CorpusLine> lines = ReadCorpus(c.corpus);
  return TokenizeCorpus(lines, tokenizer, NormalizationPolicy{}, c.workers);
}

std::vector<AnnotatedSequence> AnnotateOrWrap(std::vector<TokenSequence> corpus,
                                              const ConceptLexicon& lexicon,
                                              std::size_t workers) {
  if (lexicon.empty()) {
    std::vector<AnnotatedSequence> out(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) out[i].sequence = std::move(corpus[i]);
    return out;
  }
  return AnnotateCorpus(std::move(corpus), ConceptMatcher::Compile(lexicon), workers);
}

ConceptLexicon LoadLexicon(const PipelineConfig& c) {
  return ReadLexiconTsv(c.out / artifacts::kLexicon, c.max_words, c.min_occurrences);
}

// Manifests must not depend on runtime-only knobs or output locations.
json ConfigSnapshot(const PipelineConfig& c) {
  json j = json::parse(c.ToJson());
  j.erase("workers");
  j.erase("verbosity");
  j.erase("out");
  j.erase("examples");
  return j;
}

}  // namespace

// ---------------------------------------------------------------------------
// build

BuildSummary RunBuild(const PipelineConfig& config) {
  Phase("config", [&] {
    ValidateCommon(config);
    RequireFile(config.graph, "graph file");
    RequireFile(config.corpus, "corpus");
    RequireOutDir(config.out);
  });

  BuildSummary summary;
  LoadReport load_report;
  const KnowledgeGraph graph = Phase("load_graph", [&] {
    return LoadGraph(config.graph, NormalizationPolicy{}, &load_report);
  });
  log::Info(fmt::format("graph {}: {} nodes, {} edges ({})", config.graph.string(),
                        graph.num_nodes(), graph.num_edges(), load_report.ToString()));
  summary.nodes = graph.num_nodes();
  summary.edges = graph.num_edges();

  const auto tokenizer = Phase("tokenizer", [&] { return MakeTokenizer(config); });
  const std::vector<TokenSequence> corpus =
      Phase("tokenize", [&] { return LoadCorpus(config, *tokenizer); });
  summary.sequences = corpus.size();
  for (const TokenSequence& s : corpus) {
    summary.words += s.num_words();
    summary.tokens += s.num_tokens();
  }
  log::Info(fmt::format("corpus {}: {} sequences, {} words, {} tokens",
                        config.corpus.string(), summary.sequences, summary.words,
                        summary.tokens));

  const FrequencyTable freqs = Phase(
      "count", [&] { return CountConceptFrequencies(corpus, graph, config.workers); });
  const ConceptLexicon lexicon = Phase("lexicon", [&] {
    return BuildLexicon(graph, freqs, config.max_words, config.min_occurrences);
  });
  summary.lexicon_size = lexicon.size();
  log::Info(fmt::format("lexicon: {} concepts", lexicon.size()));

  Phase("write", [&] {
    fs::create_directories(config.out);
    WriteFileAtomic(config.out / artifacts::kGraphIndex, GraphIndexTsv(graph));
    WriteFileAtomic(config.out / artifacts::kLexicon, LexiconToTsv(lexicon));
  });

  CurriculumConfig cc = config.curriculum;
  if (config.min_frequency_per_million) {
    cc.min_frequency = ScaledMinFrequency(*config.min_frequency_per_million, summary.words);
    log::Info(fmt::format("min_frequency scaled to {} ({} per million words)",
                          cc.min_frequency, *config.min_frequency_per_million));
  }
  summary.min_frequency = cc.min_frequency;

  const std::vector<ConceptId> initial =
      Phase("select", [&] { return SelectInitialConcepts(graph, lexicon, freqs, cc); });
  const CurriculumPlan plan =
      Phase("stages", [&] { return BuildStages(graph, initial, cc, lexicon); });
  for (const auto& s : plan.stages) summary.stage_sizes.push_back(s.size());

  Phase("write", [&] {
    const std::string plan_json = PlanToJson(plan);
    WriteFileAtomic(config.out / artifacts::kPlan, plan_json);

    json report;
    report["graph"] = {{"nodes", summary.nodes},
                       {"edges", summary.edges},
                       {"valid_lines", load_report.valid_lines},
                       {"skipped_lines", load_report.skipped_lines},
                       {"comment_lines", load_report.comment_lines},
                       {"self_loops", load_report.self_loops},
                       {"duplicate_edges", load_report.duplicate_edges}};
    report["corpus"] = {{"sequences", summary.sequences},
                        {"words", summary.words},
                        {"tokens", summary.tokens}};
    report["lexicon"] = {{"size", lexicon.size()},
                         {"max_words", lexicon.max_words()},
                         {"min_occurrences", lexicon.min_occurrences()}};
    report["curriculum"] = {{"min_frequency", cc.min_frequency},
                            {"initial_selected", initial.size()},
                            {"stage_sizes", summary.stage_sizes}};
    report["digests"] = {{"graph", plan.digests.graph},
                         {"lexicon", plan.digests.lexicon},
                         {"config", plan.digests.config},
                         {"plan", Sha256Hex(plan_json)},
                         {"tokenizer", tokenizer->Digest()}};
    WriteFileAtomic(config.out / artifacts::kBuildReport, report.dump(2) + "\n");
  });

  std::string sizes;
  for (std::size_t i = 0; i < summary.stage_sizes.size(); ++i) {
    sizes += fmt::format("{}|S_{}|={}", i ? " <= " : "", i + 1, summary.stage_sizes[i]);
  }
  log::Info(fmt::format("plan: {}", sizes));
  return summary;
}

// ---------------------------------------------------------------------------
// mask

MaskSummary RunMask(const PipelineConfig& config) {
  const CurriculumKind kind = Phase("config", [&] {
    ValidateCommon(config);
    RequireFile(config.corpus, "corpus");
    RequireOutDir(config.out);
    const CurriculumKind k = ParseCurriculumKind(config.curriculum_kind);
    RequireFile(config.out / artifacts::kLexicon, "lexicon (run build first)");
    if (k == CurriculumKind::kCcm || k == CurriculumKind::kReverse) {
      RequireFile(config.out / artifacts::kPlan, "plan (run build first)");
    }
    return k;
  });

  const ConceptLexicon lexicon = Phase("load_artifacts", [&] { return LoadLexicon(config); });
  std::optional<CurriculumPlan> plan;
  std::string graph_digest;
  Phase("load_artifacts", [&] {
    if (kind == CurriculumKind::kCcm || kind == CurriculumKind::kReverse) {
      CurriculumPlan built = ReadPlan(config.out / artifacts::kPlan);
      if (built.digests.lexicon != lexicon.Digest()) {
        throw ConfigError(
            "plan.json was built from a different lexicon (or thresholds differ); "
            "rerun build");
      }
      graph_digest = built.digests.graph;
      plan = kind == CurriculumKind::kReverse ? BaselineReverse(built) : std::move(built);
    } else if (kind == CurriculumKind::kRarity) {
      plan = BaselineRarity(lexicon, config.curriculum.stages,
                            config.curriculum.include_nonconcept_words_in_final);
    }
    if (plan && lexicon.empty()) throw ConfigError("lexicon is empty");
  });

  const auto tokenizer = Phase("tokenizer", [&] { return MakeTokenizer(config); });
  std::vector<AnnotatedSequence> annotated = Phase("annotate", [&] {
    return AnnotateOrWrap(LoadCorpus(config, *tokenizer), lexicon, config.workers);
  });

  if (config.dump_annotations) {
    Phase("write", [&] {
      std::string dump;
      for (const AnnotatedSequence& a : annotated) dump += AnnotationToJsonLine(a);
      fs::create_directories(config.out);
      WriteFileAtomic(config.out / artifacts::kAnnotations, dump);
    });
  }

  ExampleGenerator::Options options;
  options.kind = kind;
  options.schedule = config.schedule;
  options.masking = config.masking;
  options.seed = config.seed;
  options.length_stages = config.curriculum.stages;
  const ExampleGenerator generator = Phase("mask", [&] {
    return ExampleGenerator(std::move(annotated), plan, CorruptionVocab::From(*tokenizer),
                            options);
  });

  const fs::path examples_path = config.examples_path();
  MaskSummary summary;
  Sha256 examples_sha;
  Phase("mask", [&] {
    if (examples_path.has_parent_path()) fs::create_directories(examples_path.parent_path());
    fs::path tmp = examples_path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw InputError(fmt::format("cannot write '{}'", examples_path.string()));
      const ScheduleStats stats =
          RunSchedule(generator, config.workers, [&](const MaskedExample& ex) {
            const std::string line = ExampleToJsonLine(ex);
            examples_sha.Update(line);
            out << line;
          });
      if (!out) throw InputError(fmt::format("write failed for '{}'", examples_path.string()));
      summary.examples = stats.total;
      summary.per_stage = stats.per_stage;
    }
    fs::rename(tmp, examples_path);
  });

  Phase("write", [&] {
    json manifest;
    manifest["curriculum"] = config.curriculum_kind;
    manifest["config"] = ConfigSnapshot(config);
    manifest["examples"] = summary.examples;
    json per_stage = json::object();
    for (const auto& [stage, n] : summary.per_stage) per_stage[std::to_string(stage)] = n;
    manifest["per_stage"] = per_stage;
    manifest["schedule"] = {{"warmup_steps", config.schedule.warmup_steps},
                            {"steps_per_stage", config.schedule.steps_per_stage},
                            {"max_steps", config.schedule.max_steps},
                            {"positions", generator.num_positions()}};
    if (plan) manifest["visit_order"] = plan->visit_order;
    manifest["digests"] = {{"graph", graph_digest},
                           {"lexicon", lexicon.Digest()},
                           {"plan", plan ? Sha256Hex(PlanToJson(*plan)) : ""},
                           {"tokenizer", tokenizer->Digest()},
                           {"examples", examples_sha.HexDigest()}};
    WriteFileAtomic(config.out / artifacts::kManifest, manifest.dump(2) + "\n");
  });
  return summary;
}

// ---------------------------------------------------------------------------
// report

void RunReport(const PipelineConfig& config) {
  Phase("config", [&] {
    ValidateCommon(config);
    RequireOutDir(config.out);
    RequireFile(config.out / artifacts::kLexicon, "lexicon (run build first)");
    RequireFile(config.out / artifacts::kGraphIndex, "graph index (run build first)");
  });

  const ConceptLexicon lexicon = Phase("load_artifacts", [&] { return LoadLexicon(config); });
  const std::vector<GraphIndexRow> index = Phase("load_artifacts", [&] {
    return ParseGraphIndex(ReadFile(config.out / artifacts::kGraphIndex));
  });
  std::vector<std::size_t> degrees;
  degrees.reserve(index.size());
  for (const GraphIndexRow& r : index) degrees.push_back(r.degree);

  std::optional<CurriculumPlan> plan;
  Phase("load_artifacts", [&] {
    std::error_code ec;
    if (!lexicon.empty() && fs::exists(config.out / artifacts::kPlan, ec)) {
      plan = ReadPlan(config.out / artifacts::kPlan);
    }
  });

  QuadrantThresholds thresholds;
  thresholds.high_frequency =
      config.hf_threshold.value_or(plan ? plan->config.min_frequency
                                        : config.curriculum.min_frequency);
  if (config.rc_threshold) {
    thresholds.related_concepts = *config.rc_threshold;
  } else if (!lexicon.empty()) {
    std::vector<std::size_t> lex_degrees;
    for (const LexiconEntry& e : lexicon.entries()) {
      lex_degrees.push_back(e.id < degrees.size() ? degrees[e.id] : 0);
    }
    auto mid = lex_degrees.begin() + lex_degrees.size() / 2;
    std::nth_element(lex_degrees.begin(), mid, lex_degrees.end());
    thresholds.related_concepts = *mid;
  }

  if (lexicon.empty()) log::Warn("lexicon is empty; writing an empty report");
  const std::vector<ConceptReportRow> rows =
      BuildConceptReport(lexicon, degrees, thresholds);

  std::vector<StageCoverage> coverage;
  std::error_code ec;
  if (plan && !config.corpus.empty() && fs::exists(config.corpus, ec)) {
    coverage = Phase("coverage", [&] {
      const auto tokenizer = MakeTokenizer(config);
      return BuildStageCoverage(
          AnnotateOrWrap(LoadCorpus(config, *tokenizer), lexicon, config.workers), *plan);
    });
  } else if (plan) {
    log::Warn("no corpus given; skipping per-stage coverage");
  }

  Phase("write", [&] {
    WriteFileAtomic(config.out / artifacts::kConceptReport, ConceptReportToTsv(rows));
    json j;
    j["thresholds"] = {{"high_frequency", thresholds.high_frequency},
                       {"related_concepts", thresholds.related_concepts}};
    std::map<std::string, std::size_t> counts;
    for (Quadrant q : {Quadrant::kHfRc, Quadrant::kHfOnly, Quadrant::kRcOnly,
                       Quadrant::kNeither}) {
      counts[std::string(QuadrantName(q))] = 0;
    }
    for (const ConceptReportRow& r : rows) ++counts[std::string(QuadrantName(r.quadrant))];
    j["quadrants"] = counts;
    json stages = json::array();
    for (const StageCoverage& c : coverage) {
      stages.push_back({{"stage", c.stage},
                        {"concepts", c.concepts},
                        {"maskable_tokens", c.maskable_tokens},
                        {"total_tokens", c.total_tokens},
                        {"fraction", c.fraction}});
    }
    j["stages"] = stages;
    WriteFileAtomic(config.out / artifacts::kCoverage, j.dump(2) + "\n");
  });
}

// ---------------------------------------------------------------------------
// verify

std::vector<VerifyCheck> RunVerify(const PipelineConfig& config) {
  Phase("config", [&] {
    ValidateCommon(config);
    RequireOutDir(config.out);
    RequireFile(config.out / artifacts::kLexicon, "lexicon (run build first)");
    RequireFile(config.out / artifacts::kPlan, "plan (run build first)");
  });

  std::vector<VerifyCheck> checks;
  auto check = [&](std::string name, auto&& fn) {
    VerifyCheck c{std::move(name), true, ""};
    try {
      c.detail = fn();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = e.what();
    }
    checks.push_back(std::move(c));
    return checks.back().ok;
  };

  std::optional<ConceptLexicon> lexicon;
  check("lexicon thresholds", [&] {
    lexicon = LoadLexicon(config);
    return fmt::format("{} entries, word_count < {}, frequency > {}", lexicon->size(),
                       config.max_words, config.min_occurrences);
  });

  std::optional<CurriculumPlan> plan;
  check("plan nesting", [&] {
    plan = ReadPlan(config.out / artifacts::kPlan);  // validates nesting
    std::string sizes;
    for (const auto& s : plan->stages) sizes += fmt::format(" {}", s.size());
    return fmt::format("stage sizes:{}", sizes);
  });

  if (lexicon && plan) {
    check("final stage equals lexicon", [&] {
      if (plan->stages.empty() || plan->stages.back() != lexicon->ids()) {
        throw ConfigError("S_K differs from the lexicon concept set");
      }
      return std::string("ok");
    });
    check("plan lexicon digest", [&] {
      if (plan->digests.lexicon != lexicon->Digest()) {
        throw ConfigError("plan digest does not match lexicon.tsv");
      }
      return plan->digests.lexicon.substr(0, 16);
    });
  }

  std::error_code ec;
  if (plan && lexicon && !config.graph.empty() && fs::exists(config.graph, ec)) {
    check("stages match k-hop expansion", [&] {
      const KnowledgeGraph graph = LoadGraph(config.graph);
      if (graph.Digest() != plan->digests.graph) {
        throw ConfigError("graph digest differs from the one recorded in plan.json");
      }
      const CurriculumPlan rebuilt =
          BuildStages(graph, plan->stages.front(), plan->config, *lexicon);
      if (rebuilt.stages != plan->stages) throw ConfigError("recomputed stages differ");
      return std::string("recomputed from graph");
    });
  }

  const fs::path examples_path = config.examples_path();
  if (fs::exists(examples_path, ec)) {
    check("example invariants", [&] {
      // The seed and counts come from the manifest of the run that wrote the
      // stream, when there is one.
      std::optional<json> manifest;
      const fs::path manifest_path = config.out / artifacts::kManifest;
      if (fs::exists(manifest_path)) manifest = json::parse(ReadFile(manifest_path));
      const std::uint64_t seed =
          manifest ? manifest->at("config").at("seed").get<std::uint64_t>() : config.seed;

      std::ifstream in(examples_path, std::ios::binary);
      const auto tokenizer = MakeTokenizer(config);
      const std::set<std::string> replacements(tokenizer->replacement_tokens().begin(),
                                               tokenizer->replacement_tokens().end());
      const std::uint32_t max_stage = plan ? plan->num_stages() : config.curriculum.stages;
      std::map<std::uint32_t, std::uint64_t> per_stage;
      Sha256 sha;
      std::string line;
      std::uint64_t n = 0;
      while (std::getline(in, line)) {
        sha.Update(line);
        sha.Update("\n");
        const MaskedExample ex = ExampleFromJsonLine(line);
        if (ex.step != n) {
          throw ConfigError(fmt::format("line {}: step {} out of order", n + 1, ex.step));
        }
        if (ex.stage > max_stage) {
          throw ConfigError(fmt::format("step {}: stage {} out of range", ex.step, ex.stage));
        }
        if (ex.seed != DeriveSeed(seed, ex.step)) {
          throw ConfigError(fmt::format("step {}: seed does not match base seed {}", ex.step, seed));
        }
        std::size_t li = 0;
        for (std::size_t pos = 0; pos < ex.original_tokens.size(); ++pos) {
          const bool labeled = li < ex.label_positions.size() && ex.label_positions[li] == pos;
          if (labeled) ++li;
          const std::string& orig = ex.original_tokens[pos];
          const std::string& cor = ex.corrupted_tokens[pos];
          if (!labeled && cor != orig) {
            throw ConfigError(fmt::format("step {}: unlabeled position {} changed", ex.step, pos));
          }
          if (labeled && cor != orig && cor != tokenizer->mask_token() &&
              !replacements.contains(cor)) {
            throw ConfigError(fmt::format("step {}: position {} has foreign token '{}'",
                                          ex.step, pos, cor));
          }
        }
        ++per_stage[ex.stage];
        ++n;
      }
      if (manifest) {
        if (manifest->at("digests").at("examples").get<std::string>() != sha.HexDigest()) {
          throw ConfigError("manifest.json describes a different example stream");
        }
        if (manifest->at("examples").get<std::uint64_t>() != n) {
          throw ConfigError("manifest example count differs from the stream");
        }
        for (const auto& [stage, count] : per_stage) {
          if (manifest->at("per_stage").at(std::to_string(stage)).get<std::uint64_t>() != count) {
            throw ConfigError(fmt::format("manifest count for stage {} differs", stage));
          }
        }
      }
      return fmt::format("{} examples", n);
    });
  }
  return checks;
}

}  // namespace ccm
