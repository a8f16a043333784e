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

// Sampling checkers for the sharing-rule axioms. Every check is
// semi-decidable: a failure comes with a witness that re-verifies when
// replayed through the rule, a pass only means no violation was sampled.

#ifndef COALITION_AXIOMS_H_
#define COALITION_AXIOMS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coalition/model.h"

namespace coalition {

enum class Axiom {
  kEndowmentMonotonicity,
  kConsistency,
  kSolidarity,
  kEndowmentContinuity,
};

std::string AxiomTag(Axiom axiom);

struct SamplingPlan {
  static constexpr int kDefaultSamples = 2000;

  double max_endowment = 100.0;
  int samples = kDefaultSamples;
  std::uint64_t seed = 1;
  // Endowments always probed on top of the grid (rule kinks).
  std::vector<double> breakpoints;
  // Scenario endowments, probed first as (coalition, endowment) anchors.
  EndowmentMap anchors;
  // Strictness margin; comparisons use epsilon * max(1, E).
  double epsilon = 1e-9;
  // Continuity: jump allowed at the finest delta.
  double continuity_tolerance = 1e-6;

  // Default plan for a scenario: E_max = 4 * max endowment (100 if none).
  static SamplingPlan ForScenario(const EndowmentMap& endowments,
                                  std::vector<double> breakpoints,
                                  std::uint64_t seed = 1,
                                  int samples = kDefaultSamples);
};

// Counterexample record. Field meaning per axiom:
//  monotonicity: coalition, endowment < other_endowment, agent loses.
//  consistency:  coalition C, other = C' subset, endowment E, agent whose
//                payoff changes on re-solving C' with its share.
//  solidarity:   coalition C proper subset of other C', endowments E, E';
//                agent gains strictly in C, other_agent loses strictly.
//  continuity:   coalition, endowment, other_endowment = E +- delta, agent.
struct AxiomWitness {
  Coalition coalition;
  Coalition other;
  double endowment = 0.0;
  double other_endowment = 0.0;
  int agent = 0;
  int other_agent = 0;
  // Payoff vectors observed when the witness was found.
  Allocation first;
  Allocation second;

  std::string Describe() const;
};

struct AxiomVerdict {
  Axiom axiom = Axiom::kSolidarity;
  bool passed = true;  // pass-sampled
  std::optional<AxiomWitness> witness;
  int samples = 0;
  std::uint64_t seed = 0;
};

AxiomVerdict CheckEndowmentMonotonicity(const SharingRule& rule,
                                        const AgentSet& agents,
                                        const SamplingPlan& plan);
AxiomVerdict CheckConsistency(const SharingRule& rule, const AgentSet& agents,
                              const SamplingPlan& plan);
AxiomVerdict CheckSolidarity(const SharingRule& rule, const AgentSet& agents,
                             const SamplingPlan& plan);
AxiomVerdict CheckEndowmentContinuity(const SharingRule& rule,
                                      const AgentSet& agents,
                                      const SamplingPlan& plan);

// Re-evaluates the witness from scratch; true iff the violation reproduces.
bool ReplayWitness(const SharingRule& rule, Axiom axiom,
                   const AxiomWitness& witness, double epsilon = 1e-9,
                   double continuity_tolerance = 1e-6);

// Solidarity at one pair of problems: C proper subset of C', i gains and j
// loses strictly (epsilon-separated).
bool SolidarityViolated(const SharingRule& rule, Coalition c, double e,
                        Coalition c_prime, double e_prime, int i, int j,
                        double epsilon = 1e-9);

struct Lemma1Report {
  AxiomVerdict solidarity;
  AxiomVerdict monotonicity;
  AxiomVerdict consistency;
  // Solidarity passes exactly when monotonicity and consistency both pass.
  bool concordant = true;
  std::string note;
};

Lemma1Report CheckLemma1Equivalence(const SharingRule& rule,
                                    const AgentSet& agents,
                                    const SamplingPlan& plan);

// Raised when the bracket search for a consistent extension runs out.
class NoSolutionInRange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finds E with sum_{i in C'} F_i(C, E) = E' (within tol) by doubling an
// upper bracket and bisecting the nondecreasing share of C'.
double SolveConsistentExtension(const SharingRule& rule, Coalition c,
                                Coalition c_prime, double e_prime,
                                double tol = 1e-10, int max_doublings = 200);

}  // namespace coalition

#endif  // COALITION_AXIOMS_H_
