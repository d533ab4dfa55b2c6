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

#include "ccm/schedule.h"

#include <algorithm>

#include <fmt/format.h>

#include "ccm/error.h"
#include "ccm/log.h"
#include "parallel.h"

namespace ccm {
namespace {

constexpr std::uint64_t kEpochSalt = 0x6570'6f63'6873'6565ull;
constexpr std::uint64_t kChunk = 512;
constexpr std::uint64_t kMaxCachedEpochs = 4096;

// Whole-word prefix length of at most max_tokens tokens; see TruncateToTokens.
std::size_t Cut(const TokenSequence& seq, std::size_t max_tokens) {
  if (seq.num_tokens() <= max_tokens) return seq.num_tokens();
  std::size_t cut = 0;
  for (const WordSpan& b : seq.word_boundaries) {
    if (b.end > max_tokens) break;
    cut = b.end;
  }
  return cut == 0 ? max_tokens : cut;
}

bool UsesPlan(CurriculumKind kind) {
  return kind == CurriculumKind::kCcm || kind == CurriculumKind::kRarity ||
         kind == CurriculumKind::kReverse;
}

}  // namespace

void ScheduleConfig::Validate() const {
  if (steps_per_stage < 1) throw ConfigError("steps_per_stage must be >= 1");
  if (max_steps < 1) throw ConfigError("max_steps must be >= 1");
}

void ScheduleConfig::WarnIfShort(std::uint32_t stages) const {
  const std::uint64_t pass = warmup_steps + stages * steps_per_stage;
  if (max_steps < warmup_steps) {
    log::Warn(fmt::format("max_steps {} < warmup_steps {}: every example is plain MLM",
                          max_steps, warmup_steps));
  } else if (pass > max_steps) {
    log::Warn(fmt::format(
        "max_steps {} does not cover one curriculum pass ({} warmup + {} x {} steps)",
        max_steps, warmup_steps, stages, steps_per_stage));
  }
}

std::uint32_t SchedulePosition(std::uint64_t step, const ScheduleConfig& sched,
                               std::uint32_t stages) {
  const std::uint64_t cycle = sched.warmup_steps + stages * sched.steps_per_stage;
  const std::uint64_t r = step % cycle;
  if (r < sched.warmup_steps) return 0;
  return static_cast<std::uint32_t>(1 + (r - sched.warmup_steps) / sched.steps_per_stage);
}

void MaskingOptions::Validate() const {
  if (!(target_ratio > 0.0 && target_ratio < 1.0)) {
    throw ConfigError(fmt::format("target mask ratio must be in (0, 1), got {}",
                                  target_ratio));
  }
  odds.Validate();
  if (max_seq_len < 1) throw ConfigError("max_seq_len must be >= 1");
}

ExampleGenerator::ExampleGenerator(std::vector<AnnotatedSequence> corpus,
                                   std::optional<CurriculumPlan> plan,
                                   const CorruptionVocab& vocab, Options options)
    : corpus_(std::move(corpus)),
      plan_(std::move(plan)),
      vocab_(vocab),
      options_(std::move(options)) {
  options_.schedule.Validate();
  options_.masking.Validate();
  if (corpus_.empty()) throw ConfigError("cannot generate examples from an empty corpus");
  if (vocab_.replacements.empty()) throw ConfigError("corruption vocabulary is empty");

  const CurriculumKind kind = options_.kind;
  if (UsesPlan(kind)) {
    if (!plan_) {
      throw ConfigError(fmt::format("curriculum '{}' requires a plan",
                                    CurriculumKindName(kind)));
    }
    plan_->Validate();
    num_positions_ = plan_->num_stages();
    for (std::uint32_t p = 0; p <= num_positions_; ++p) {
      eligible_.push_back(StageEligibleSet(*plan_, p));
    }
  } else if (kind == CurriculumKind::kLength) {
    lengths_ = BaselineLengthSchedule(options_.length_stages);
    num_positions_ = options_.length_stages;
  } else if (kind == CurriculumKind::kMaskingRatio) {
    ratio_.emplace(options_.schedule.max_steps);
  }
  if (num_positions_ > 0) options_.schedule.WarnIfShort(num_positions_);

  const std::uint64_t n = corpus_.size();
  // Tiny corpora with long schedules recompute orders on demand instead.
  const std::uint64_t epochs =
      std::min<std::uint64_t>((options_.schedule.max_steps + n - 1) / n, kMaxCachedEpochs);
  orders_.reserve(epochs);
  for (std::uint64_t e = 0; e < epochs; ++e) orders_.push_back(EpochOrder(e));
}

std::vector<std::uint32_t> ExampleGenerator::EpochOrder(std::uint64_t epoch) const {
  std::vector<std::uint32_t> order(corpus_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::uint32_t>(i);
  Rng rng(DeriveSeed(options_.seed ^ kEpochSalt, epoch));
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.UniformBelow(i)]);
  }
  return order;
}

std::size_t ExampleGenerator::SequenceIndex(std::uint64_t step) const {
  const std::uint64_t n = corpus_.size();
  const std::uint64_t epoch = step / n;
  const std::uint64_t offset = step % n;
  if (epoch < orders_.size()) return orders_[epoch][offset];
  return EpochOrder(epoch)[offset];
}

std::uint32_t ExampleGenerator::StageTag(std::uint64_t step) const {
  if (num_positions_ == 0) return 0;
  const std::uint32_t position =
      SchedulePosition(step, options_.schedule, num_positions_);
  if (position == 0) return 0;
  return plan_ ? eligible_[position].stage : position;
}

MaskedExample ExampleGenerator::Generate(std::uint64_t step) const {
  const std::uint64_t seed = DeriveSeed(options_.seed, step);
  Rng rng(seed);
  const AnnotatedSequence& a = corpus_[SequenceIndex(step)];
  const std::span<const std::string> all_tokens = a.sequence.tokens;
  const MaskingOptions& m = options_.masking;

  const std::uint32_t position =
      num_positions_ == 0 ? 0 : SchedulePosition(step, options_.schedule, num_positions_);

  MaskedExample ex;
  std::uint32_t tag = 0;
  if (plan_ && position > 0) {
    const EligibleSet& eligible = eligible_[position];
    const std::size_t cut = Cut(a.sequence, m.max_seq_len);
    const std::vector<ConceptSpan> spans = EligibleSpans(a, eligible, cut);
    const double p_d = DynamicMaskProbability(cut, spans, m.target_ratio);
    ex = MaskConceptSpans(all_tokens.first(cut), spans, p_d, rng, vocab_, m.odds);
    tag = eligible.stage;
  } else {
    std::size_t max_len = m.max_seq_len;
    double ratio = m.target_ratio;
    if (!lengths_.empty() && position > 0) {
      max_len = lengths_[position - 1];
      tag = position;
    }
    if (ratio_) ratio = (*ratio_)(step);
    ex = MaskTokens(all_tokens.first(Cut(a.sequence, max_len)), ratio, rng, vocab_, m.odds);
  }
  ex.step = step;
  ex.stage = tag;
  ex.seed = seed;
  return ex;
}

ScheduleStats RunSchedule(const ExampleGenerator& generator, std::size_t workers,
                          const std::function<void(const MaskedExample&)>& sink) {
  ScheduleStats stats;
  const std::uint64_t total = generator.options().schedule.max_steps;
  workers = std::max<std::size_t>(1, workers);
  std::vector<MaskedExample> batch;
  for (std::uint64_t begin = 0; begin < total;) {
    const std::uint64_t end = std::min<std::uint64_t>(total, begin + kChunk * workers);
    batch.assign(end - begin, MaskedExample{});
    internal::ParallelShards(batch.size(), workers,
                             [&](std::size_t, std::size_t lo, std::size_t hi) {
                               for (std::size_t i = lo; i < hi; ++i) {
                                 batch[i] = generator.Generate(begin + i);
                               }
                             });
    for (const MaskedExample& ex : batch) {
      ++stats.total;
      ++stats.per_stage[ex.stage];
      sink(ex);
    }
    begin = end;
  }
  return stats;
}

}  // namespace ccm
