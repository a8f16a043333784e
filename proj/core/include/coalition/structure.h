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

#ifndef COALITION_STRUCTURE_H_
#define COALITION_STRUCTURE_H_

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "coalition/model.h"

namespace coalition {

// Two agents of C ∩ C' that rank C and C' differently. Agent `agent`
// strictly prefers `preferred`; `other_agent` either strictly prefers
// `other` (weak alignment broken) or is indifferent (alignment broken).
struct AlignmentViolation {
  Coalition preferred;
  Coalition other;
  int agent = 0;
  int other_agent = 0;

  std::string Describe() const;
  friend bool operator==(const AlignmentViolation&,
                         const AlignmentViolation&) = default;
};

// Scans unordered coalition pairs in canonical order, agent pairs i < j.
std::optional<AlignmentViolation> CheckWeakPairwiseAlignment(
    const InducedProblem& problem);
std::optional<AlignmentViolation> CheckPairwiseAlignment(
    const InducedProblem& problem);

// True iff i strictly prefers `a` to `b` while j strictly prefers `b`.
bool WeakAlignmentBrokenAt(const InducedProblem& problem, Coalition a,
                           Coalition b, int i, int j);
// True iff i and j (both in a ∩ b) compare a and b differently.
bool AlignmentBrokenAt(const InducedProblem& problem, Coalition a, Coalition b,
                       int i, int j);

// Edge C -> C' exists when C and C' intersect and every shared agent weakly
// prefers C'; it is strict when some shared agent strictly prefers C'.
class PreferenceDigraph {
 public:
  explicit PreferenceDigraph(const InducedProblem& problem);

  struct Edge {
    Coalition to;
    bool strict = false;
    int witness = 0;  // smallest strictly-preferring agent when strict
  };

  const std::vector<Coalition>& nodes() const { return nodes_; }
  // Outgoing edges of `from`, targets in canonical order.
  const std::vector<Edge>& EdgesFrom(Coalition from) const {
    return edges_[from.mask()];
  }
  std::optional<Edge> Find(Coalition from, Coalition to) const;

  // Graphviz export: nodes are "134" style labels, strict edges solid,
  // weak-only edges dashed.
  void WriteDot(std::ostream& out) const;

 private:
  std::vector<Coalition> nodes_;
  std::vector<std::vector<Edge>> edges_;  // indexed by mask
};

// Link-level edge test used by ring checks; nullopt when no weak edge.
std::optional<PreferenceDigraph::Edge> RingLink(const InducedProblem& problem,
                                                Coalition from, Coalition to);

struct RingCertificate {
  std::vector<Coalition> coalitions;
  // witnesses[k] strictly prefers coalitions[k + 1] to coalitions[k].
  std::vector<int> witnesses;

  std::string Describe() const;
};

// Checks the ring conditions directly against the preferences.
bool IsValidRing(const InducedProblem& problem, const RingCertificate& ring);

// Shortest strict cycle through the canonically smallest coalition that
// lies on any strict cycle; nullopt when the problem has no ring.
std::optional<RingCertificate> DetectRing(const InducedProblem& problem);

struct NonCircularity {
  bool non_circular = true;
  std::optional<AlignmentViolation> wpa_violation;
  std::optional<RingCertificate> ring;
};

NonCircularity CheckNonCircular(const InducedProblem& problem);

struct CommonRankingResult {
  bool holds = true;
  // On success: every considered coalition with its rank (0 = best).
  std::vector<std::pair<Coalition, int>> ranking;
  // On failure: a cycle C_1 -> ... -> C_m -> C_1 of "weakly better" steps,
  // at least one strict.
  std::vector<Coalition> cycle;
};

// `include` restricts the coalitions considered (all when empty).
CommonRankingResult CheckCommonRanking(
    const InducedProblem& problem,
    const std::function<bool(Coalition)>& include = {});

// First subset of `within` (canonical order) that is a top coalition of it.
std::optional<Coalition> FindTopCoalition(const InducedProblem& problem,
                                          Coalition within);

// True iff every nonempty coalition has a top coalition.
bool HasTopCoalitionProperty(const InducedProblem& problem);

// Everything the analyze command reports.
struct StructureAnalysis {
  std::optional<AlignmentViolation> pairwise_violation;
  std::optional<AlignmentViolation> weak_pairwise_violation;
  CommonRankingResult common_ranking;
  std::optional<RingCertificate> ring;
  bool non_circular = true;
  std::optional<Coalition> top_of_all;
  bool top_coalition_property = true;
};

StructureAnalysis AnalyzeStructure(const InducedProblem& problem);

}  // namespace coalition

#endif  // COALITION_STRUCTURE_H_
