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

// Randomized campaigns relating sampled solidarity to the structure of the
// induced problems, and the constructive route from a solidarity witness to
// a weak-pairwise-alignment violation.

#ifndef COALITION_FUZZ_H_
#define COALITION_FUZZ_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coalition/axioms.h"
#include "coalition/model.h"
#include "coalition/rules.h"
#include "coalition/structure.h"

namespace coalition {

struct EndowmentSampler {
  double max_endowment = 30.0;
  // Probability that a coalition is left at endowment 0.
  double sparsity = 0.5;

  EndowmentMap Draw(const AgentSet& agents, std::mt19937_64& rng) const;
};

// One of the published worked examples: rule, agents and endowments.
struct PublishedInstance {
  std::string name;
  int agents = 0;
  SharingRuleSpec rule;
  EndowmentMap endowments;
};

// Example 1..3 of the source model (Example 3 in both rule variants).
PublishedInstance Example1Instance();
PublishedInstance Example2Instance();
PublishedInstance Example3IntervalInstance();
PublishedInstance Example3ProportionalInstance();
// The published instance for this family tag, if any.
std::optional<PublishedInstance> PublishedFor(const std::string& family);

// Random parameters for a family over n agents.
SharingRuleSpec SampleRule(const std::string& family, int n,
                           std::mt19937_64& rng);

struct FuzzCampaign {
  std::uint64_t seed = 1;
  int instances = 1000;
  int min_agents = 3;
  int max_agents = 6;
  std::vector<std::string> families;
  EndowmentSampler endowments;
  // The first instance of a family with a published example replays it.
  bool include_published = true;
  int solidarity_samples = 300;
  double epsilon = InducedProblem::kDefaultEpsilon;
  int cap = kDefaultEnumerationCap;
  // Extra per-instance analyses (common ranking, top coalitions, core).
  bool analyze_lattice = false;
  bool compute_core = true;
};

struct InstanceOutcome {
  int index = 0;
  std::string family;
  int agents = 0;
  bool published = false;
  SharingRuleSpec rule;
  EndowmentMap endowments;

  bool solidarity_passed = true;
  std::optional<AxiomWitness> solidarity_witness;
  bool non_circular = true;
  std::optional<AlignmentViolation> wpa_violation;
  std::optional<RingCertificate> ring;
  std::optional<std::size_t> core_size;
  // Solidarity sampled clean, yet the induced problem is circular.
  bool anomaly = false;
  // Solidarity failed on a non-circular instance: the witness was turned
  // into a separate endowment map; true iff that map breaks alignment.
  std::optional<bool> counterexample_confirmed;

  // Filled when analyze_lattice is set.
  std::optional<bool> common_ranking;
  std::optional<bool> top_coalition_property;
  // Top-coalition construction succeeded and landed in the core.
  std::optional<bool> top_partition_in_core;
};

struct CampaignSummary {
  // [solidarity passed][non circular]
  std::size_t cells[2][2] = {{0, 0}, {0, 0}};
  std::size_t anomalies = 0;
  std::size_t empty_cores = 0;
  std::size_t counterexamples_confirmed = 0;
  std::size_t counterexamples_failed = 0;
  std::vector<InstanceOutcome> records;
};

// Deterministic for a given campaign; records are ordered by index.
CampaignSummary RunTheorem1Campaign(const FuzzCampaign& campaign);

// Evaluates a single instance the same way the campaign does.
InstanceOutcome EvaluateInstance(const FuzzCampaign& campaign, int index,
                                 const std::string& family, int n,
                                 const SharingRuleSpec& rule,
                                 const EndowmentMap& endowments,
                                 std::uint64_t seed);

struct WpaCounterexample {
  EndowmentMap endowments;
  AlignmentViolation violation;
};

// Assigns E to C and E' to C' (0 elsewhere). Throws InvalidInput if the
// witness does not replay, InvariantBreach if alignment unexpectedly holds.
WpaCounterexample ConstructWpaCounterexample(
    const SharingRule& rule, const AgentSet& agents,
    const AxiomWitness& solidarity_witness,
    double epsilon = InducedProblem::kDefaultEpsilon);

struct EmptyCoreHunt {
  int budget = 200;
  std::uint64_t seed = 1;
  EndowmentSampler sampler;
  // Maps tried before random ones.
  std::vector<EndowmentMap> anchors;
  double epsilon = InducedProblem::kDefaultEpsilon;
};

std::optional<EndowmentMap> HuntEmptyCore(const SharingRule& rule,
                                          const AgentSet& agents,
                                          const EmptyCoreHunt& hunt);

}  // namespace coalition

#endif  // COALITION_FUZZ_H_
