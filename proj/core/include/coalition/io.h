// Copyright 2026 The Coalition Sharing Authors.
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

// Scenario files and structured reports. Both are JSON documents tagged
// with a versioned "schema" string:
//
//   {
//     "schema": "coalition-scenario/1",
//     "agents": 4,
//     "rule": {"family": "priority-satiation", "satiation": 10,
//              "priority_agent": 1},
//     "endowments": [{"coalition": [1, 2], "endowment": 10}, ...],
//     "options": {"epsilon": 1e-9, "cap": 12, "seed": 1, "samples": 2000}
//   }
//
// Unbounded interval ends are written "inf".

#ifndef COALITION_IO_H_
#define COALITION_IO_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "coalition/axioms.h"
#include "coalition/fuzz.h"
#include "coalition/model.h"
#include "coalition/rules.h"
#include "coalition/stability.h"
#include "coalition/structure.h"

namespace coalition {

inline constexpr std::string_view kScenarioSchema = "coalition-scenario/1";
inline constexpr std::string_view kReportSchema = "coalition-report/1";

struct ScenarioOptions {
  double epsilon = InducedProblem::kDefaultEpsilon;
  int cap = kDefaultEnumerationCap;
  std::uint64_t seed = 1;
  int samples = SamplingPlan::kDefaultSamples;

  friend bool operator==(const ScenarioOptions&,
                         const ScenarioOptions&) = default;
};

struct Scenario {
  AgentSet agents{1};
  SharingRuleSpec rule;
  EndowmentMap endowments;
  ScenarioOptions options;

  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.agents.size() == b.agents.size() && a.rule == b.rule &&
           a.endowments == b.endowments && a.options == b.options;
  }
};

// Parse/validation failure; `what()` names the line (for syntax errors) or
// the offending field path.
class ScenarioError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

Scenario ParseScenario(std::string_view text);
Scenario LoadScenario(const std::string& path);
// Canonical form: fixed key order, endowments sorted canonically.
std::string SerializeScenario(const Scenario& scenario);

// Structured reports (pretty-printed JSON, "schema": kReportSchema).
std::string PayoffTableReport(const Scenario& scenario,
                              const PayoffTable& table);
std::string StructureReport(const Scenario& scenario,
                            const StructureAnalysis& analysis);
std::string CoreReportText(const Scenario& scenario, const CoreReport& report,
                           bool with_certificates);
std::string AxiomReport(const Scenario& scenario, const SamplingPlan& plan,
                        const std::vector<AxiomVerdict>& verdicts,
                        const Lemma1Report& lemma1);
std::string CampaignReport(const FuzzCampaign& campaign,
                           const CampaignSummary& summary);

}  // namespace coalition

#endif  // COALITION_IO_H_
