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

#include "ccm/plan_io.h"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "ccm/error.h"
#include "json.hpp"

namespace ccm {

using nlohmann::json;

std::string PlanToJson(const CurriculumPlan& plan) {
  json j;
  j["kind"] = plan.kind;
  j["config"] = {
      {"initial_count", plan.config.initial_count},
      {"hops", plan.config.hops},
      {"stages", plan.config.stages},
      {"min_frequency", plan.config.min_frequency},
      {"include_nonconcept_words_in_final", plan.config.include_nonconcept_words_in_final},
  };
  j["stages"] = plan.stages;
  j["visit_order"] = plan.visit_order;
  j["final_includes_all_words"] = plan.final_includes_all_words;
  j["digests"] = {
      {"graph", plan.digests.graph},
      {"lexicon", plan.digests.lexicon},
      {"config", plan.digests.config},
  };
  return j.dump(1) + "\n";
}

CurriculumPlan PlanFromJson(std::string_view text) {
  CurriculumPlan plan;
  try {
    const json j = json::parse(text);
    plan.kind = j.at("kind").get<std::string>();
    const json& c = j.at("config");
    plan.config.initial_count = c.at("initial_count").get<std::uint32_t>();
    plan.config.hops = c.at("hops").get<std::uint32_t>();
    plan.config.stages = c.at("stages").get<std::uint32_t>();
    plan.config.min_frequency = c.at("min_frequency").get<std::uint64_t>();
    plan.config.include_nonconcept_words_in_final =
        c.at("include_nonconcept_words_in_final").get<bool>();
    plan.stages = j.at("stages").get<std::vector<std::vector<ConceptId>>>();
    plan.visit_order = j.at("visit_order").get<std::vector<std::uint32_t>>();
    plan.final_includes_all_words = j.at("final_includes_all_words").get<bool>();
    const json& d = j.at("digests");
    plan.digests.graph = d.at("graph").get<std::string>();
    plan.digests.lexicon = d.at("lexicon").get<std::string>();
    plan.digests.config = d.at("config").get<std::string>();
  } catch (const json::exception& e) {
    throw InputError(fmt::format("malformed plan JSON: {}", e.what()));
  }
  plan.Validate();
  return plan;
}

void WritePlan(const CurriculumPlan& plan, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(fmt::format("cannot write plan '{}'", path.string()));
  out << PlanToJson(plan);
}

CurriculumPlan ReadPlan(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open plan '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return PlanFromJson(buf.str());
}

}  // namespace ccm
