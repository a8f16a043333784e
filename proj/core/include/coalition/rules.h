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

#ifndef COALITION_RULES_H_
#define COALITION_RULES_H_

#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "coalition/model.h"

namespace coalition {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// positions[i - 1] is the position of agent i; position 1 is the top.
struct Ranking {
  std::vector<int> positions;

  static Ranking Identity(int n);
  int PositionOf(int agent) const { return positions.at(agent - 1); }
  // Position of `agent` among the members of `c`, 1 = highest ranked.
  int ProjectedPosition(Coalition c, int agent) const;

  friend bool operator==(const Ranking&, const Ranking&) = default;
};

struct Interval {
  double lower = 0.0;
  double upper = 0.0;  // may be kInfinity

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct EqualDivisionSpec {
  friend bool operator==(const EqualDivisionSpec&,
                         const EqualDivisionSpec&) = default;
};

// The priority agent takes the first `satiation` units of any coalition it
// belongs to; the rest is split equally among the others.
struct PrioritySatiationSpec {
  double satiation = 0.0;
  int priority_agent = 1;
  friend bool operator==(const PrioritySatiationSpec&,
                         const PrioritySatiationSpec&) = default;
};

// Same priority, but only in the grand coalition.
struct GrandCoalitionPrioritySpec {
  double satiation = 0.0;
  int priority_agent = 1;
  friend bool operator==(const GrandCoalitionPrioritySpec&,
                         const GrandCoalitionPrioritySpec&) = default;
};

struct IntervalRankingSpec {
  Ranking ranking;
  std::vector<Interval> intervals;
  friend bool operator==(const IntervalRankingSpec&,
                         const IntervalRankingSpec&) = default;
};

// weights[k - 1] is the weight of projected position k.
struct ProportionalRankingSpec {
  Ranking ranking;
  std::vector<double> weights;
  friend bool operator==(const ProportionalRankingSpec&,
                         const ProportionalRankingSpec&) = default;
};

enum class ClaimsMethod { kProportional, kConstrainedEqualAwards, kRandomArrival };

struct ClaimsSpec {
  ClaimsMethod method = ClaimsMethod::kProportional;
  std::vector<double> claims;  // claims[i - 1] belongs to agent i
  friend bool operator==(const ClaimsSpec&, const ClaimsSpec&) = default;
};

// Nash bargaining over utilities u_i(x) = log(1 + slopes[i - 1] * x).
struct NashProductSpec {
  std::vector<double> slopes;
  friend bool operator==(const NashProductSpec&,
                         const NashProductSpec&) = default;
};

using SharingRuleSpec =
    std::variant<EqualDivisionSpec, PrioritySatiationSpec,
                 GrandCoalitionPrioritySpec, IntervalRankingSpec,
                 ProportionalRankingSpec, ClaimsSpec, NashProductSpec>;

// Stable family tags: "equal-division", "priority-satiation", ...
std::string FamilyTag(const SharingRuleSpec& spec);
const std::vector<std::string>& KnownFamilyTags();

// Throws InvalidInput if parameters are inconsistent with the agent set
// (agent ids, vector lengths, interval ordering, weight monotonicity, ...).
void ValidateRule(const SharingRuleSpec& spec, const AgentSet& agents);

// Validates, then wraps the spec as a callable rule over `agents`.
SharingRule MakeRule(const SharingRuleSpec& spec, const AgentSet& agents);

// Individual rule evaluations. All return allocations in ascending member
// order and assume validated parameters.
Allocation EqualDivision(Coalition c, double endowment);
Allocation PrioritySatiation(Coalition c, double endowment, double satiation,
                             int priority_agent);
Allocation GrandCoalitionPriority(Coalition c, double endowment,
                                  double satiation, int priority_agent,
                                  const AgentSet& agents);
Allocation IntervalRule(Coalition c, double endowment, const Ranking& ranking,
                        std::span<const Interval> intervals);
Allocation ProportionalRanking(Coalition c, double endowment,
                               const Ranking& ranking,
                               std::span<const double> weights);
// Endowment beyond the total claim is split equally on top of full claims.
Allocation ClaimsRule(Coalition c, double endowment,
                      std::span<const double> claims, ClaimsMethod method);

struct NashOptions {
  double kkt_tolerance = 1e-9;
  int max_iterations = 400;
};
// Throws std::runtime_error carrying the residual if the multiplier search
// does not converge.
Allocation NashProduct(Coalition c, double endowment,
                       std::span<const double> slopes,
                       const NashOptions& options = {});
// max_i |u_i'(x_i)/u_i(x_i) - mean| over members with x_i > 0, relative.
double NashKktResidual(const Allocation& allocation,
                       std::span<const double> slopes);

// Endowment values where the rule's formula changes branch within some
// coalition (satiation level, |C| * interval endpoints, total claims).
std::vector<double> RuleBreakpoints(const SharingRuleSpec& spec,
                                    const AgentSet& agents);

}  // namespace coalition

#endif  // COALITION_RULES_H_
