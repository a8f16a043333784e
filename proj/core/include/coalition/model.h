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

#ifndef COALITION_MODEL_H_
#define COALITION_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coalition {

// Hard limit on the number of agents; coalitions are 32-bit masks and the
// induced problem stores one entry per (agent, coalition).
inline constexpr int kMaxAgents = 16;
// Default refusal threshold for anything that enumerates partitions.
inline constexpr int kDefaultEnumerationCap = 12;

// Thrown for malformed input: bad agent ids, invalid rule parameters,
// unparsable scenarios.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an enumeration would exceed the configured agent cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an internal invariant (efficiency, certificate re-check) fails.
class InvariantBreach : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Agents are labelled 1..n.
class AgentSet {
 public:
  explicit AgentSet(int n);

  int size() const { return n_; }
  bool Contains(int agent) const { return agent >= 1 && agent <= n_; }

 private:
  int n_;
};

// A set of agents stored as a bitmask: agent i <-> bit (i - 1).
class Coalition {
 public:
  constexpr Coalition() = default;
  constexpr explicit Coalition(std::uint32_t mask) : mask_(mask) {}

  // Throws InvalidInput on agent ids outside 1..kMaxAgents.
  static Coalition Of(std::initializer_list<int> members);
  static Coalition FromMembers(std::span<const int> members);
  static Coalition Singleton(int agent);
  static Coalition All(const AgentSet& agents);
  // Parses "134" (n <= 9) or "1,3,4" / "{1,3,4}".
  static Coalition Parse(std::string_view text);

  constexpr std::uint32_t mask() const { return mask_; }
  bool empty() const { return mask_ == 0; }
  int size() const;
  bool Contains(int agent) const {
    return agent >= 1 && agent <= kMaxAgents &&
           ((mask_ >> (agent - 1)) & 1u) != 0;
  }
  bool IsSubsetOf(Coalition other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  bool IsProperSubsetOf(Coalition other) const {
    return IsSubsetOf(other) && mask_ != other.mask_;
  }
  bool Intersects(Coalition other) const { return (mask_ & other.mask_) != 0; }
  Coalition Intersect(Coalition other) const {
    return Coalition(mask_ & other.mask_);
  }
  Coalition Union(Coalition other) const {
    return Coalition(mask_ | other.mask_);
  }
  Coalition Without(Coalition other) const {
    return Coalition(mask_ & ~other.mask_);
  }
  // Smallest member id, 0 when empty.
  int First() const;
  // Ascending member ids.
  std::vector<int> Members() const;
  // Index of `agent` among the ascending members; -1 when absent.
  int IndexOf(int agent) const;
  // "134" style label when every member is <= 9, "1,3,10" otherwise.
  std::string ToString() const;

  friend constexpr bool operator==(Coalition a, Coalition b) = default;

 private:
  std::uint32_t mask_ = 0;
};

// Canonical coalition order: by size, then lexicographically by the sorted
// member list. All "first violation" style searches follow this order.
bool CanonicalLess(Coalition a, Coalition b);

// All nonempty coalitions of the agent set, in canonical order.
std::vector<Coalition> CanonicalCoalitions(const AgentSet& agents);
// All nonempty subsets of `c`, in canonical order.
std::vector<Coalition> CanonicalSubsets(Coalition c);

struct MaskLess {
  bool operator()(Coalition a, Coalition b) const { return a.mask() < b.mask(); }
};

// Coalitional endowments; coalitions not listed have endowment 0.
class EndowmentMap {
 public:
  EndowmentMap() = default;

  // Throws InvalidInput on negative or non-finite endowment, empty coalition.
  void Set(Coalition c, double endowment);
  double At(Coalition c) const;
  bool Has(Coalition c) const { return entries_.count(c) != 0; }
  const std::map<Coalition, double, MaskLess>& entries() const {
    return entries_;
  }
  // Largest listed endowment, 0 when empty.
  double MaxEndowment() const;
  // Throws InvalidInput when a listed coalition reaches outside the agents.
  void Validate(const AgentSet& agents) const;

  friend bool operator==(const EndowmentMap&, const EndowmentMap&) = default;

 private:
  std::map<Coalition, double, MaskLess> entries_;
};

// Payoffs of a coalition's members, in ascending member order.
struct Allocation {
  Coalition coalition;
  std::vector<double> payoffs;

  double PayoffOf(int agent) const;
  double Total() const;
};

// Efficiency tolerance 1e-9 * max(1, E).
double SumTolerance(double endowment);
// Checks non-negativity and efficiency against `endowment`; tiny negative
// payoffs within tolerance are clamped to 0. Throws InvariantBreach.
void ValidateAllocation(Allocation& allocation, double endowment);

// Type-erased sharing rule: (C, E) -> allocation of E among C.
class SharingRule {
 public:
  using Function = std::function<Allocation(Coalition, double)>;

  SharingRule(std::string name, Function fn)
      : name_(std::move(name)), fn_(std::move(fn)) {}

  const std::string& name() const { return name_; }
  Allocation operator()(Coalition c, double endowment) const {
    return fn_(c, endowment);
  }

 private:
  std::string name_;
  Function fn_;
};

// Materialized F(C, E_C) for every nonempty coalition.
class PayoffTable {
 public:
  // Evaluates `rule` on every nonempty coalition. Failures are rethrown
  // naming the offending coalition: InvariantBreach for malformed
  // allocations, InvalidInput otherwise.
  static PayoffTable Compute(const SharingRule& rule,
                             const EndowmentMap& endowments,
                             const AgentSet& agents);

  const AgentSet& agents() const { return agents_; }
  const Allocation& At(Coalition c) const { return rows_.at(c.mask()); }
  double Payoff(int agent, Coalition c) const;
  double Endowment(Coalition c) const { return endowments_.at(c.mask()); }

 private:
  PayoffTable(AgentSet agents) : agents_(agents) {}

  AgentSet agents_;
  std::vector<Allocation> rows_;  // indexed by mask; slot 0 unused
  std::vector<double> endowments_;
};

enum class Preference { kPrefers, kIndifferent, kDisprefers };

// Agent preferences over coalitions induced by comparing payoffs. Each
// agent's payoffs are grouped into indifference tiers: sorted ascending, a
// new tier starts whenever the gap to the previous payoff exceeds epsilon.
// Comparisons use tier indices, so each relation is complete and transitive.
class InducedProblem {
 public:
  static constexpr double kDefaultEpsilon = 1e-9;

  InducedProblem(PayoffTable table, double epsilon = kDefaultEpsilon);

  const AgentSet& agents() const { return table_.agents(); }
  int num_agents() const { return table_.agents().size(); }
  const PayoffTable& table() const { return table_; }
  double epsilon() const { return epsilon_; }

  // Both coalitions must contain `agent`.
  Preference Compare(int agent, Coalition a, Coalition b) const;
  bool WeaklyPrefers(int agent, Coalition a, Coalition b) const {
    return Tier(agent, a) >= Tier(agent, b);
  }
  bool StrictlyPrefers(int agent, Coalition a, Coalition b) const {
    return Tier(agent, a) > Tier(agent, b);
  }
  // Higher is better; 0 is the agent's worst tier.
  int Tier(int agent, Coalition c) const {
    return tiers_[static_cast<std::size_t>(agent - 1) * stride_ + c.mask()];
  }
  double Payoff(int agent, Coalition c) const { return table_.Payoff(agent, c); }

  // Coalitions containing `agent`, best tier first; ties in canonical order.
  std::vector<std::vector<Coalition>> OrderFor(int agent) const;

 private:
  PayoffTable table_;
  double epsilon_;
  std::size_t stride_;
  std::vector<int> tiers_;
};

// Convenience: payoff table + tiers in one call.
InducedProblem InducePreferences(const SharingRule& rule,
                                 const EndowmentMap& endowments,
                                 const AgentSet& agents,
                                 double epsilon = InducedProblem::kDefaultEpsilon);

// Blocks ordered by their smallest member.
class Partition {
 public:
  // Throws InvalidInput unless blocks are nonempty, disjoint and cover all.
  Partition(std::vector<Coalition> blocks, const AgentSet& agents);

  const std::vector<Coalition>& blocks() const { return blocks_; }
  // The block containing `agent`.
  Coalition BlockOf(int agent) const;
  // "{{134},{2}}"
  std::string ToString() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<Coalition> blocks_;
};

// Enumerates all partitions of {1..n} in restricted-growth-string order.
class PartitionEnumerator {
 public:
  // Throws CapExceeded when n > cap.
  explicit PartitionEnumerator(const AgentSet& agents,
                               int cap = kDefaultEnumerationCap);

  // Fills `out` with the next partition; false when exhausted.
  bool Next(std::vector<Coalition>& out);

 private:
  int n_;
  bool started_ = false;
  bool done_ = false;
  std::vector<int> rgs_;
  std::vector<int> prefix_max_;
};

std::vector<Partition> EnumeratePartitions(const AgentSet& agents,
                                           int cap = kDefaultEnumerationCap);

// Shortest round-trip-ish rendering used in tables: 10, 4.5, 12.6.
std::string FormatNumber(double value);
// "(10,7,7)"
std::string FormatAllocation(const Allocation& allocation);

}  // namespace coalition

#endif  // COALITION_MODEL_H_
