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

#ifndef CCM_PLAN_IO_H_
#define CCM_PLAN_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "ccm/curriculum.h"

namespace ccm {

// JSON object {config, digests, final_includes_all_words, kind, stages,
// visit_order} with keys in sorted order. Serialization is byte-stable and
// PlanFromJson(PlanToJson(p)) == p.
std::string PlanToJson(const CurriculumPlan& plan);
// Throws InputError on malformed documents and ConfigError on invalid plans.
CurriculumPlan PlanFromJson(std::string_view json);

void WritePlan(const CurriculumPlan& plan, const std::filesystem::path& path);
CurriculumPlan ReadPlan(const std::filesystem::path& path);

}  // namespace ccm

#endif  // CCM_PLAN_IO_H_
