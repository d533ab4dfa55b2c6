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

#ifndef CCM_SCHEDULE_H_
#define CCM_SCHEDULE_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "ccm/curriculum.h"
#include "ccm/masker.h"
#include "ccm/matcher.h"

namespace ccm {

// Warmup (plain MLM), then steps_per_stage examples per curriculum stage;
// after the last stage the schedule returns to the warmup and repeats until
// max_steps examples have been produced.
struct ScheduleConfig {
  std::uint64_t warmup_steps = 100000;
  std::uint64_t steps_per_stage = 100000;
  std::uint64_t max_steps = 1000000;

  // Throws ConfigError unless steps_per_stage >= 1 and max_steps >= 1.
  void Validate() const;
  // Logs a warning when max_steps does not cover one full pass of K stages.
  void WarnIfShort(std::uint32_t stages) const;

  bool operator==(const ScheduleConfig&) const = default;
};

// Schedule position of `step`: 0 during warmup, otherwise 1..stages.
std::uint32_t SchedulePosition(std::uint64_t step, const ScheduleConfig& sched,
                               std::uint32_t stages);

struct MaskingOptions {
  double target_ratio = 0.15;
  CorruptionOdds odds;
  // Sequences are cut to a whole-word prefix of at most this many tokens.
  std::uint32_t max_seq_len = 128;

  void Validate() const;
};

// Produces the example for any step independently of every other step.
//
// The corpus is visited in a seeded permutation that is redrawn for every
// epoch. Stage tags follow the curriculum kind:
//   ccm, rarity, reverse  0 during warmup, else the visited stage set index
//   length                0 during warmup, else the length stage 1..K
//   none, masking-ratio   always 0
class ExampleGenerator {
 public:
  struct Options {
    CurriculumKind kind = CurriculumKind::kCcm;
    ScheduleConfig schedule;
    MaskingOptions masking;
    std::uint64_t seed = 0;
    // Number of stages of the length curriculum. Ignored by other kinds.
    std::uint32_t length_stages = 4;
  };

  // `plan` is required for ccm, rarity and reverse. Throws ConfigError for
  // an empty corpus or inconsistent options.
  ExampleGenerator(std::vector<AnnotatedSequence> corpus,
                   std::optional<CurriculumPlan> plan, const CorruptionVocab& vocab,
                   Options options);

  MaskedExample Generate(std::uint64_t step) const;
  std::uint32_t StageTag(std::uint64_t step) const;
  // Index into the corpus used at `step`.
  std::size_t SequenceIndex(std::uint64_t step) const;

  std::uint32_t num_positions() const { return num_positions_; }
  const std::vector<AnnotatedSequence>& corpus() const { return corpus_; }
  const Options& options() const { return options_; }

 private:
  std::vector<std::uint32_t> EpochOrder(std::uint64_t epoch) const;

  std::vector<AnnotatedSequence> corpus_;
  std::optional<CurriculumPlan> plan_;
  CorruptionVocab vocab_;
  Options options_;
  std::uint32_t num_positions_ = 0;
  std::vector<EligibleSet> eligible_;          // by schedule position
  std::vector<std::uint32_t> lengths_;         // length curriculum
  std::optional<MaskingRatioSchedule> ratio_;  // masking-ratio curriculum
  std::vector<std::vector<std::uint32_t>> orders_;
};

struct ScheduleStats {
  std::uint64_t total = 0;
  std::map<std::uint32_t, std::uint64_t> per_stage;
};

// Generates steps [0, max_steps) on `workers` threads and hands them to
// `sink` in step order. Output does not depend on the worker count.
ScheduleStats RunSchedule(const ExampleGenerator& generator, std::size_t workers,
                          const std::function<void(const MaskedExample&)>& sink);

}  // namespace ccm

#endif  // CCM_SCHEDULE_H_
