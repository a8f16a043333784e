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

#include "coalition/stability.h"

#include <bit>
#include <chrono>

#include "coalition/structure.h"

namespace coalition {

bool Blocks(const InducedProblem& problem, const Partition& partition,
            Coalition blocker) {
  if (blocker.empty()) return false;
  for (int i : blocker.Members()) {
    if (!problem.StrictlyPrefers(i, blocker, partition.BlockOf(i))) return false;
  }
  return true;
}

namespace {

// Blocking scan with per-agent tiers of the current blocks precomputed.
class BlockingScanner {
 public:
  explicit BlockingScanner(const InducedProblem& problem)
      : problem_(problem), order_(CanonicalCoalitions(problem.agents())) {}

  std::optional<Coalition> Scan(const std::vector<Coalition>& blocks) {
    const int n = problem_.num_agents();
    current_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (Coalition b : blocks) {
      for (int i : b.Members()) current_[i] = problem_.Tier(i, b);
    }
    for (Coalition t : order_) {
      bool blocks_it = true;
      for (std::uint32_t m = t.mask(); m != 0; m &= m - 1) {
        const int i = std::countr_zero(m) + 1;
        if (problem_.Tier(i, t) <= current_[i]) {
          blocks_it = false;
          break;
        }
      }
      if (blocks_it) return t;
    }
    return std::nullopt;
  }

 private:
  const InducedProblem& problem_;
  std::vector<Coalition> order_;
  std::vector<int> current_;
};

}  // namespace

std::optional<Coalition> IsBlocked(const InducedProblem& problem,
                                   const Partition& partition) {
  return BlockingScanner(problem).Scan(partition.blocks());
}

CoreReport ComputeCore(const InducedProblem& problem,
                       const CoreOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  PartitionEnumerator partitions(problem.agents(), options.cap);
  BlockingScanner scanner(problem);
  CoreReport report;
  std::vector<Coalition> blocks;
  while (partitions.Next(blocks)) {
    ++report.examined;
    const auto blocker = scanner.Scan(blocks);
    Partition p(blocks, problem.agents());
    if (!blocker) {
      report.stable.push_back(std::move(p));
    } else if (options.collect_certificates) {
      if (!Blocks(problem, p, *blocker)) {
        throw InvariantBreach("blocking certificate failed re-verification");
      }
      report.blocked.push_back({std::move(p), *blocker});
    }
  }
  for (const Partition& p : report.stable) {
    if (IsBlocked(problem, p)) {
      throw InvariantBreach("stable partition " + p.ToString() +
                            " is blocked on re-check");
    }
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

std::variant<Partition, TopCoalitionFailure> BuildStableByTopCoalitions(
    const InducedProblem& problem) {
  Coalition remaining = Coalition::All(problem.agents());
  std::vector<Coalition> blocks;
  int step = 0;
  while (!remaining.empty()) {
    ++step;
    const auto top = FindTopCoalition(problem, remaining);
    if (!top) return TopCoalitionFailure{step, remaining};
    blocks.push_back(*top);
    remaining = remaining.Without(*top);
  }
  return Partition(std::move(blocks), problem.agents());
}

}  // namespace coalition
