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

// ccm: build concept curricula and materialize masked-LM example streams.
//
//   ccm build  --graph edges.tsv --corpus corpus/ --out run/
//   ccm mask   --corpus corpus/ --out run/ --curriculum ccm
//   ccm report --corpus corpus/ --out run/
//   ccm verify --graph edges.tsv --out run/
//
// Exit codes: 0 success, 1 internal error, 2 usage or configuration error.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "ccm/error.h"
#include "ccm/log.h"
#include "ccm/pipeline.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

// Flags are kept as optionals so that only flags the user actually passed
// override values from --config.
struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> graph, corpus, out, vocab, examples;
  std::optional<std::uint32_t> initial_count, hops, stages;
  std::optional<std::uint64_t> min_frequency;
  std::optional<double> min_frequency_per_million;
  std::optional<std::uint32_t> max_words;
  std::optional<std::uint64_t> min_occurrences;
  std::optional<double> target_mask_ratio;
  std::optional<std::uint64_t> warmup_steps, steps_per_stage, max_steps;
  std::optional<std::uint32_t> max_seq_len;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> curriculum;
  std::optional<std::uint64_t> hf_threshold;
  std::optional<std::size_t> rc_threshold;
  bool dump_annotations = false;
  bool no_nonconcept_words = false;
  std::optional<std::string> verbosity;
  bool print_config = false;
};

void AddFlags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file; flags override its values");
  cmd->add_option("--graph", f.graph, "Knowledge-graph edge TSV (relation, head, tail)");
  cmd->add_option("--corpus", f.corpus, "Corpus file or directory, one sequence per line");
  cmd->add_option("--out", f.out, "Artifact directory");
  cmd->add_option("--vocab", f.vocab, "WordPiece vocab.txt (default: bundled vocabulary)");
  cmd->add_option("--examples", f.examples, "Example stream path (default: <out>/examples.jsonl)");
  cmd->add_option("--initial-count", f.initial_count, "Number of initial concepts (M)");
  cmd->add_option("--hops", f.hops, "Neighborhood radius per stage (k)");
  cmd->add_option("--stages", f.stages, "Number of concept stages (K)");
  cmd->add_option("--min-frequency", f.min_frequency,
                  "Minimum corpus frequency for initial concepts");
  cmd->add_option("--min-frequency-per-million", f.min_frequency_per_million,
                  "Scale --min-frequency to the corpus size");
  cmd->add_option("--max-words", f.max_words, "Lexicon: concepts must have fewer words");
  cmd->add_option("--min-occurrences", f.min_occurrences,
                  "Lexicon: concepts must occur more often");
  cmd->add_option("--target-mask-ratio", f.target_mask_ratio, "Expected masked token fraction");
  cmd->add_option("--warmup-steps", f.warmup_steps, "Plain MLM steps before each cycle");
  cmd->add_option("--steps-per-stage", f.steps_per_stage, "Steps per concept stage");
  cmd->add_option("--max-steps", f.max_steps, "Total examples to emit");
  cmd->add_option("--max-seq-len", f.max_seq_len, "Token limit per example");
  cmd->add_option("--seed", f.seed, "Base random seed");
  cmd->add_option("--workers", f.workers, "Worker threads (results do not depend on it)");
  cmd->add_option("--curriculum", f.curriculum,
                  "ccm, rarity, reverse, masking-ratio, length or none");
  cmd->add_option("--hf-threshold", f.hf_threshold, "Report: high-frequency threshold");
  cmd->add_option("--rc-threshold", f.rc_threshold, "Report: related-concepts threshold");
  cmd->add_flag("--dump-annotations", f.dump_annotations,
                "mask: also write annotations.jsonl");
  cmd->add_flag("--no-nonconcept-words", f.no_nonconcept_words,
                "Do not mask non-concept words in the final stage");
  cmd->add_option("--verbosity", f.verbosity, "debug, info, warning, error or silent");
  cmd->add_flag("--print-config", f.print_config, "Print the effective config and exit");
}

ccm::PipelineConfig Resolve(const Flags& f) {
  ccm::PipelineConfig c;
  if (f.config) c = ccm::PipelineConfig::Load(*f.config, c);
  auto set = [](auto& dst, const auto& src) {
    if (src) dst = *src;
  };
  set(c.graph, f.graph);
  set(c.corpus, f.corpus);
  set(c.out, f.out);
  set(c.vocab, f.vocab);
  set(c.examples, f.examples);
  set(c.curriculum.initial_count, f.initial_count);
  set(c.curriculum.hops, f.hops);
  set(c.curriculum.stages, f.stages);
  set(c.curriculum.min_frequency, f.min_frequency);
  if (f.min_frequency_per_million) c.min_frequency_per_million = f.min_frequency_per_million;
  set(c.max_words, f.max_words);
  set(c.min_occurrences, f.min_occurrences);
  set(c.masking.target_ratio, f.target_mask_ratio);
  set(c.schedule.warmup_steps, f.warmup_steps);
  set(c.schedule.steps_per_stage, f.steps_per_stage);
  set(c.schedule.max_steps, f.max_steps);
  set(c.masking.max_seq_len, f.max_seq_len);
  set(c.seed, f.seed);
  set(c.workers, f.workers);
  set(c.curriculum_kind, f.curriculum);
  if (f.hf_threshold) c.hf_threshold = f.hf_threshold;
  if (f.rc_threshold) c.rc_threshold = f.rc_threshold;
  if (f.dump_annotations) c.dump_annotations = true;
  if (f.no_nonconcept_words) c.curriculum.include_nonconcept_words_in_final = false;
  set(c.verbosity, f.verbosity);
  return c;
}

ccm::log::Level ParseLevel(const std::string& name) {
  if (name == "debug") return ccm::log::Level::kDebug;
  if (name == "info") return ccm::log::Level::kInfo;
  if (name == "warning") return ccm::log::Level::kWarning;
  if (name == "error") return ccm::log::Level::kError;
  if (name == "silent") return ccm::log::Level::kSilent;
  throw ccm::ConfigError(fmt::format("unknown verbosity '{}'", name));
}

int Run(const std::string& command, const ccm::PipelineConfig& c) {
  if (command == "build") {
    const ccm::BuildSummary s = ccm::RunBuild(c);
    fmt::print("nodes\t{}\nedges\t{}\nsequences\t{}\nwords\t{}\nlexicon\t{}\nmin_frequency\t{}\n",
               s.nodes, s.edges, s.sequences, s.words, s.lexicon_size, s.min_frequency);
    for (std::size_t i = 0; i < s.stage_sizes.size(); ++i) {
      fmt::print("stage_{}\t{}\n", i + 1, s.stage_sizes[i]);
    }
    return kExitOk;
  }
  if (command == "mask") {
    const ccm::MaskSummary s = ccm::RunMask(c);
    fmt::print("examples\t{}\n", s.examples);
    for (const auto& [stage, n] : s.per_stage) fmt::print("stage_{}\t{}\n", stage, n);
    return kExitOk;
  }
  if (command == "report") {
    ccm::RunReport(c);
    fmt::print("{}\n{}\n", (c.out / ccm::artifacts::kConceptReport).string(),
               (c.out / ccm::artifacts::kCoverage).string());
    return kExitOk;
  }
  bool ok = true;
  for (const ccm::VerifyCheck& check : ccm::RunVerify(c)) {
    fmt::print("{}\t{}\t{}\n", check.ok ? "ok" : "FAIL", check.name, check.detail);
    ok = ok && check.ok;
  }
  return ok ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concept-based curriculum masking for masked language models"};
  app.require_subcommand(1);
  Flags flags;
  std::string command;
  for (const char* name : {"build", "mask", "report", "verify"}) {
    CLI::App* sub = app.add_subcommand(name);
    AddFlags(sub, flags);
    sub->callback([&command, name] { command = name; });
  }
  app.get_subcommand("build")->description(
      "Load the graph, count concepts, and write lexicon.tsv and plan.json");
  app.get_subcommand("mask")->description("Write the scheduled masked example stream");
  app.get_subcommand("report")->description("Write per-concept and per-stage statistics");
  app.get_subcommand("verify")->description("Check invariants of existing artifacts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const ccm::PipelineConfig config = Resolve(flags);
    ccm::log::SetLevel(ParseLevel(config.verbosity));
    if (flags.print_config) {
      fmt::print("{}", config.ToJson());
      return kExitOk;
    }
    return Run(command, config);
  } catch (const ccm::PhaseError& e) {
    fmt::print(stderr, "ccm {}: {}\n", command, e.what());
    return e.is_config_error() ? kExitUsage : kExitInternal;
  } catch (const ccm::ConfigError& e) {
    fmt::print(stderr, "ccm {}: {}\n", command, e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(stderr, "ccm {}: internal error: {}\n", command, e.what());
    return kExitInternal;
  }
}
