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

#ifndef COALITION_STABILITY_H_
#define COALITION_STABILITY_H_

#include <optional>
#include <variant>
#include <vector>

#include "coalition/model.h"

namespace coalition {

struct BlockingCertificate {
  Partition partition;
  Coalition blocker;
};

struct CoreReport {
  std::vector<Partition> stable;
  // Filled only when requested: one certificate per unstable partition.
  std::vector<BlockingCertificate> blocked;
  std::size_t examined = 0;
  double elapsed_seconds = 0.0;

  bool empty() const { return stable.empty(); }
};

// First coalition (canonical order) whose members all strictly prefer it to
// their block in `partition`.
std::optional<Coalition> IsBlocked(const InducedProblem& problem,
                                   const Partition& partition);

// True iff every member of `blocker` strictly prefers it to its block.
bool Blocks(const InducedProblem& problem, const Partition& partition,
            Coalition blocker);

struct CoreOptions {
  int cap = kDefaultEnumerationCap;
  bool collect_certificates = false;
};

// Exhaustive: tests every partition against every coalition. Stable
// partitions come out in restricted-growth-string order.
CoreReport ComputeCore(const InducedProblem& problem,
                       const CoreOptions& options = {});

struct TopCoalitionFailure {
  int step = 0;  // 1-based extraction step
  Coalition remaining;
};

// Repeatedly removes the first top coalition of the remaining agents.
std::variant<Partition, TopCoalitionFailure> BuildStableByTopCoalitions(
    const InducedProblem& problem);

}  // namespace coalition

#endif  // COALITION_STABILITY_H_
