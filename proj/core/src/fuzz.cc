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

#include "coalition/fuzz.h"

#include <algorithm>
#include <numeric>

#include "coalition/stability.h"

namespace coalition {
namespace {

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Ranking RandomRanking(int n, std::mt19937_64& rng) {
  Ranking r = Ranking::Identity(n);
  std::shuffle(r.positions.begin(), r.positions.end(), rng);
  return r;
}

std::vector<double> RandomVector(int n, double lo, double hi,
                                 std::mt19937_64& rng) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = Uniform(rng, lo, hi);
  return v;
}

std::mt19937_64 InstanceRng(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

}  // namespace

EndowmentMap EndowmentSampler::Draw(const AgentSet& agents,
                                    std::mt19937_64& rng) const {
  EndowmentMap map;
  std::bernoulli_distribution zero(std::clamp(sparsity, 0.0, 1.0));
  for (Coalition c : CanonicalCoalitions(agents)) {
    if (zero(rng)) continue;
    map.Set(c, Uniform(rng, 0.0, max_endowment));
  }
  return map;
}

PublishedInstance Example1Instance() {
  PublishedInstance p{"example1", 4, PrioritySatiationSpec{10.0, 1}, {}};
  p.endowments.Set(Coalition::Of({1, 2}), 10);
  p.endowments.Set(Coalition::Of({1, 3}), 12);
  p.endowments.Set(Coalition::Of({1, 4}), 14);
  p.endowments.Set(Coalition::Of({1, 2, 3}), 16);
  p.endowments.Set(Coalition::Of({1, 2, 4}), 20);
  p.endowments.Set(Coalition::Of({1, 3, 4}), 24);
  p.endowments.Set(Coalition::Of({1, 2, 3, 4}), 28);
  return p;
}

PublishedInstance Example2Instance() {
  PublishedInstance p{"example2", 3, GrandCoalitionPrioritySpec{6.0, 1}, {}};
  p.endowments.Set(Coalition::Of({1, 2}), 10);
  p.endowments.Set(Coalition::Of({1, 3}), 8);
  p.endowments.Set(Coalition::Of({2, 3}), 6);
  p.endowments.Set(Coalition::Of({1, 2, 3}), 15);
  return p;
}

namespace {

EndowmentMap Example3Endowments() {
  EndowmentMap m;
  m.Set(Coalition::Of({1, 2}), 20);
  m.Set(Coalition::Of({2, 3}), 14);
  m.Set(Coalition::Of({1, 3}), 15);
  m.Set(Coalition::Of({1, 2, 3}), 21);
  return m;
}

}  // namespace

PublishedInstance Example3IntervalInstance() {
  IntervalRankingSpec spec{Ranking::Identity(3),
                           {{2.0, 9.0}, {9.0, 10.5}, {10.5, kInfinity}}};
  return {"example3-interval", 3, spec, Example3Endowments()};
}

PublishedInstance Example3ProportionalInstance() {
  ProportionalRankingSpec spec{Ranking::Identity(3), {3.0, 1.0, 1.0}};
  return {"example3-proportional", 3, spec, Example3Endowments()};
}

std::optional<PublishedInstance> PublishedFor(const std::string& family) {
  if (family == "priority-satiation") return Example1Instance();
  if (family == "grand-coalition-priority") return Example2Instance();
  if (family == "interval-ranking") return Example3IntervalInstance();
  if (family == "proportional-ranking") return Example3ProportionalInstance();
  return std::nullopt;
}

SharingRuleSpec SampleRule(const std::string& family, int n,
                           std::mt19937_64& rng) {
  std::uniform_int_distribution<int> agent(1, n);
  if (family == "equal-division") return EqualDivisionSpec{};
  if (family == "priority-satiation") {
    return PrioritySatiationSpec{Uniform(rng, 0.0, 20.0), agent(rng)};
  }
  if (family == "grand-coalition-priority") {
    return GrandCoalitionPrioritySpec{Uniform(rng, 0.0, 20.0), agent(rng)};
  }
  if (family == "interval-ranking") {
    IntervalRankingSpec spec{RandomRanking(n, rng), {}};
    const int count = std::uniform_int_distribution<int>(1, 3)(rng);
    double cursor = Uniform(rng, 0.0, 5.0);
    for (int m = 0; m < count; ++m) {
      Interval iv{cursor, cursor};
      // Occasionally degenerate (a = b).
      if (!std::bernoulli_distribution(0.15)(rng)) {
        iv.upper = cursor + Uniform(rng, 0.0, 6.0);
      }
      spec.intervals.push_back(iv);
      cursor = iv.upper + Uniform(rng, 0.0, 4.0);
    }
    if (std::bernoulli_distribution(0.5)(rng)) {
      spec.intervals.back().upper = kInfinity;
    }
    return spec;
  }
  if (family == "proportional-ranking") {
    ProportionalRankingSpec spec{RandomRanking(n, rng), {}};
    double w = Uniform(rng, 0.5, 5.0);
    for (int k = 0; k < n; ++k) {
      spec.weights.push_back(w);
      w *= Uniform(rng, 0.0, 1.0);
    }
    return spec;
  }
  if (family == "claims-proportional") {
    return ClaimsSpec{ClaimsMethod::kProportional, RandomVector(n, 0, 20, rng)};
  }
  if (family == "claims-cea") {
    return ClaimsSpec{ClaimsMethod::kConstrainedEqualAwards,
                      RandomVector(n, 0, 20, rng)};
  }
  if (family == "claims-random-arrival") {
    return ClaimsSpec{ClaimsMethod::kRandomArrival, RandomVector(n, 0, 20, rng)};
  }
  if (family == "nash-product") {
    return NashProductSpec{RandomVector(n, 0.1, 3.0, rng)};
  }
  throw InvalidInput("unknown rule family '" + family + "'");
}

InstanceOutcome EvaluateInstance(const FuzzCampaign& campaign, int index,
                                 const std::string& family, int n,
                                 const SharingRuleSpec& rule_spec,
                                 const EndowmentMap& endowments,
                                 std::uint64_t seed) {
  const AgentSet agents(n);
  const SharingRule rule = MakeRule(rule_spec, agents);
  InstanceOutcome out;
  out.index = index;
  out.family = family;
  out.agents = n;
  out.rule = rule_spec;
  out.endowments = endowments;

  SamplingPlan plan = SamplingPlan::ForScenario(
      endowments, RuleBreakpoints(rule_spec, agents), seed,
      campaign.solidarity_samples);
  plan.epsilon = campaign.epsilon;
  const AxiomVerdict solidarity = CheckSolidarity(rule, agents, plan);
  out.solidarity_passed = solidarity.passed;
  out.solidarity_witness = solidarity.witness;

  const InducedProblem problem =
      InducePreferences(rule, endowments, agents, campaign.epsilon);
  const NonCircularity nc = CheckNonCircular(problem);
  out.non_circular = nc.non_circular;
  out.wpa_violation = nc.wpa_violation;
  out.ring = nc.ring;
  out.anomaly = out.solidarity_passed && !out.non_circular;

  if (!out.solidarity_passed && out.non_circular && out.solidarity_witness) {
    try {
      const auto cx = ConstructWpaCounterexample(rule, agents,
                                                 *out.solidarity_witness,
                                                 campaign.epsilon);
      out.counterexample_confirmed =
          WeakAlignmentBrokenAt(
              InducePreferences(rule, cx.endowments, agents, campaign.epsilon),
              cx.violation.preferred, cx.violation.other, cx.violation.agent,
              cx.violation.other_agent);
    } catch (const std::exception&) {
      out.counterexample_confirmed = false;
    }
  }

  CoreReport core;
  if (campaign.compute_core || campaign.analyze_lattice) {
    core = ComputeCore(problem, {campaign.cap, false});
    out.core_size = core.stable.size();
  }
  if (campaign.analyze_lattice) {
    out.common_ranking = CheckCommonRanking(problem).holds;
    out.top_coalition_property = HasTopCoalitionProperty(problem);
    const auto built = BuildStableByTopCoalitions(problem);
    if (const auto* p = std::get_if<Partition>(&built)) {
      out.top_partition_in_core =
          std::find(core.stable.begin(), core.stable.end(), *p) !=
          core.stable.end();
    }
  }
  return out;
}

CampaignSummary RunTheorem1Campaign(const FuzzCampaign& campaign) {
  if (campaign.families.empty()) throw InvalidInput("campaign has no families");
  if (campaign.min_agents < 1 || campaign.max_agents < campaign.min_agents ||
      campaign.max_agents > campaign.cap) {
    throw InvalidInput("campaign agent range must satisfy 1 <= min <= max <= cap");
  }
  CampaignSummary summary;
  const int families = static_cast<int>(campaign.families.size());
  for (int index = 0; index < campaign.instances; ++index) {
    const std::string& family = campaign.families[index % families];
    std::mt19937_64 rng = InstanceRng(campaign.seed, index);
    int n = std::uniform_int_distribution<int>(campaign.min_agents,
                                               campaign.max_agents)(rng);
    SharingRuleSpec rule;
    EndowmentMap endowments;
    bool published = false;
    const auto example = PublishedFor(family);
    if (campaign.include_published && index < families && example) {
      n = example->agents;
      rule = example->rule;
      endowments = example->endowments;
      published = true;
    } else {
      rule = SampleRule(family, n, rng);
      endowments = campaign.endowments.Draw(AgentSet(n), rng);
    }
    const std::uint64_t check_seed = rng();
    InstanceOutcome out = EvaluateInstance(campaign, index, family, n, rule,
                                           endowments, check_seed);
    out.published = published;
    summary.cells[out.solidarity_passed][out.non_circular]++;
    if (out.anomaly) ++summary.anomalies;
    if (out.core_size && *out.core_size == 0) ++summary.empty_cores;
    if (out.counterexample_confirmed) {
      ++(*out.counterexample_confirmed ? summary.counterexamples_confirmed
                                       : summary.counterexamples_failed);
    }
    summary.records.push_back(std::move(out));
  }
  return summary;
}

WpaCounterexample ConstructWpaCounterexample(const SharingRule& rule,
                                             const AgentSet& agents,
                                             const AxiomWitness& w,
                                             double epsilon) {
  if (!ReplayWitness(rule, Axiom::kSolidarity, w)) {
    throw InvalidInput("solidarity witness does not replay: " + w.Describe());
  }
  WpaCounterexample out;
  out.endowments.Set(w.coalition, w.endowment);
  out.endowments.Set(w.other, w.other_endowment);
  // The smaller coalition is better for `agent`, worse for `other_agent`.
  out.violation = AlignmentViolation{w.coalition, w.other, w.agent,
                                     w.other_agent};
  const InducedProblem problem =
      InducePreferences(rule, out.endowments, agents, epsilon);
  if (!WeakAlignmentBrokenAt(problem, w.coalition, w.other, w.agent,
                             w.other_agent)) {
    throw InvariantBreach("constructed endowments keep weak pairwise alignment "
                          "at " + out.violation.Describe());
  }
  if (!CheckWeakPairwiseAlignment(problem)) {
    throw InvariantBreach("alignment scan missed the constructed violation");
  }
  return out;
}

std::optional<EndowmentMap> HuntEmptyCore(const SharingRule& rule,
                                          const AgentSet& agents,
                                          const EmptyCoreHunt& hunt) {
  auto empty_core = [&](const EndowmentMap& map) {
    return ComputeCore(InducePreferences(rule, map, agents, hunt.epsilon))
        .empty();
  };
  for (const EndowmentMap& map : hunt.anchors) {
    if (empty_core(map)) return map;
  }
  std::mt19937_64 rng(hunt.seed);
  for (int k = 0; k < hunt.budget; ++k) {
    EndowmentMap map = hunt.sampler.Draw(agents, rng);
    if (empty_core(map)) return map;
  }
  return std::nullopt;
}

}  // namespace coalition
