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

#include "coalition/model.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace coalition {

AgentSet::AgentSet(int n) : n_(n) {
  if (n < 1 || n > kMaxAgents) {
    throw InvalidInput("agent count must be in 1.." +
                       std::to_string(kMaxAgents) + ", got " +
                       std::to_string(n));
  }
}

Coalition Coalition::Of(std::initializer_list<int> members) {
  return FromMembers(std::span<const int>(members.begin(), members.size()));
}

Coalition Coalition::FromMembers(std::span<const int> members) {
  std::uint32_t mask = 0;
  for (int agent : members) {
    if (agent < 1 || agent > kMaxAgents) {
      throw InvalidInput("agent id out of range: " + std::to_string(agent));
    }
    mask |= 1u << (agent - 1);
  }
  return Coalition(mask);
}

Coalition Coalition::Singleton(int agent) { return Of({agent}); }

Coalition Coalition::All(const AgentSet& agents) {
  return Coalition(agents.size() == 32 ? ~0u : (1u << agents.size()) - 1u);
}

Coalition Coalition::Parse(std::string_view text) {
  std::vector<int> members;
  const bool separated = text.find(',') != std::string_view::npos;
  int current = -1;
  for (char ch : text) {
    if (ch >= '0' && ch <= '9') {
      if (separated) {
        current = (current < 0 ? 0 : current * 10) + (ch - '0');
      } else {
        members.push_back(ch - '0');
      }
    } else if (ch == ',') {
      if (current < 0) throw InvalidInput("bad coalition: " + std::string(text));
      members.push_back(current);
      current = -1;
    } else if (ch != '{' && ch != '}' && ch != ' ') {
      throw InvalidInput("bad coalition: " + std::string(text));
    }
  }
  if (current >= 0) members.push_back(current);
  if (members.empty()) throw InvalidInput("empty coalition: " + std::string(text));
  return FromMembers(members);
}

int Coalition::size() const { return std::popcount(mask_); }

int Coalition::First() const {
  return mask_ == 0 ? 0 : std::countr_zero(mask_) + 1;
}

std::vector<int> Coalition::Members() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) {
    out.push_back(std::countr_zero(m) + 1);
  }
  return out;
}

int Coalition::IndexOf(int agent) const {
  if (!Contains(agent)) return -1;
  const std::uint32_t below = mask_ & ((1u << (agent - 1)) - 1u);
  return std::popcount(below);
}

std::string Coalition::ToString() const {
  const auto members = Members();
  const bool compact =
      std::all_of(members.begin(), members.end(), [](int a) { return a <= 9; });
  std::string out;
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (!compact && k > 0) out += ',';
    out += std::to_string(members[k]);
  }
  return out;
}

bool CanonicalLess(Coalition a, Coalition b) {
  const int sa = a.size();
  const int sb = b.size();
  if (sa != sb) return sa < sb;
  // Same size: lexicographic on ascending members. The first differing
  // member decides, i.e. the lowest bit where the masks differ belongs to
  // the lexicographically smaller coalition.
  const std::uint32_t diff = a.mask() ^ b.mask();
  if (diff == 0) return false;
  const std::uint32_t lowest = diff & (~diff + 1u);
  return (a.mask() & lowest) != 0;
}

std::vector<Coalition> CanonicalCoalitions(const AgentSet& agents) {
  return CanonicalSubsets(Coalition::All(agents));
}

std::vector<Coalition> CanonicalSubsets(Coalition c) {
  std::vector<Coalition> out;
  out.reserve((std::size_t{1} << c.size()) - 1);
  const std::uint32_t full = c.mask();
  for (std::uint32_t s = full; s != 0; s = (s - 1) & full) {
    out.emplace_back(s);
  }
  std::sort(out.begin(), out.end(), CanonicalLess);
  return out;
}

void EndowmentMap::Set(Coalition c, double endowment) {
  if (c.empty()) throw InvalidInput("endowment for empty coalition");
  if (!std::isfinite(endowment) || endowment < 0.0) {
    throw InvalidInput("endowment of {" + c.ToString() +
                       "} must be finite and nonnegative");
  }
  entries_[c] = endowment;
}

double EndowmentMap::At(Coalition c) const {
  const auto it = entries_.find(c);
  return it == entries_.end() ? 0.0 : it->second;
}

double EndowmentMap::MaxEndowment() const {
  double best = 0.0;
  for (const auto& [c, e] : entries_) best = std::max(best, e);
  return best;
}

void EndowmentMap::Validate(const AgentSet& agents) const {
  const Coalition all = Coalition::All(agents);
  for (const auto& [c, e] : entries_) {
    if (!c.IsSubsetOf(all)) {
      throw InvalidInput("endowment coalition {" + c.ToString() +
                         "} references agents beyond n=" +
                         std::to_string(agents.size()));
    }
  }
}

double Allocation::PayoffOf(int agent) const {
  const int index = coalition.IndexOf(agent);
  if (index < 0) {
    throw InvalidInput("agent " + std::to_string(agent) + " not in {" +
                       coalition.ToString() + "}");
  }
  return payoffs[static_cast<std::size_t>(index)];
}

double Allocation::Total() const {
  return std::accumulate(payoffs.begin(), payoffs.end(), 0.0);
}

double SumTolerance(double endowment) {
  return 1e-9 * std::max(1.0, std::abs(endowment));
}

void ValidateAllocation(Allocation& allocation, double endowment) {
  const double tol = SumTolerance(endowment);
  if (allocation.payoffs.size() !=
      static_cast<std::size_t>(allocation.coalition.size())) {
    throw InvariantBreach("allocation for {" + allocation.coalition.ToString() +
                          "} has wrong length");
  }
  for (double& x : allocation.payoffs) {
    if (!std::isfinite(x) || x < -tol) {
      throw InvariantBreach("negative payoff in {" +
                            allocation.coalition.ToString() + "}");
    }
    if (x < 0.0) x = 0.0;
  }
  if (std::abs(allocation.Total() - endowment) > tol) {
    throw InvariantBreach("allocation for {" + allocation.coalition.ToString() +
                          "} sums to " + FormatNumber(allocation.Total()) +
                          ", expected " + FormatNumber(endowment));
  }
}

PayoffTable PayoffTable::Compute(const SharingRule& rule,
                                 const EndowmentMap& endowments,
                                 const AgentSet& agents) {
  endowments.Validate(agents);
  PayoffTable table(agents);
  const std::size_t count = std::size_t{1} << agents.size();
  table.rows_.resize(count);
  table.endowments_.assign(count, 0.0);
  for (std::uint32_t mask = 1; mask < count; ++mask) {
    const Coalition c(mask);
    const double e = endowments.At(c);
    try {
      Allocation a = rule(c, e);
      if (a.coalition != c) throw InvariantBreach("rule answered wrong coalition");
      ValidateAllocation(a, e);
      table.rows_[mask] = std::move(a);
    } catch (const InvariantBreach& ex) {
      throw InvariantBreach("rule '" + rule.name() + "' on coalition {" +
                            c.ToString() + "} with E=" + FormatNumber(e) +
                            ": " + ex.what());
    } catch (const std::exception& ex) {
      throw InvalidInput("rule '" + rule.name() + "' failed on coalition {" +
                         c.ToString() + "} with E=" + FormatNumber(e) + ": " +
                         ex.what());
    }
    table.endowments_[mask] = e;
  }
  return table;
}

double PayoffTable::Payoff(int agent, Coalition c) const {
  return rows_.at(c.mask()).PayoffOf(agent);
}

InducedProblem::InducedProblem(PayoffTable table, double epsilon)
    : table_(std::move(table)),
      epsilon_(epsilon),
      stride_(std::size_t{1} << table_.agents().size()) {
  if (!(epsilon >= 0.0)) throw InvalidInput("epsilon must be nonnegative");
  const int n = table_.agents().size();
  tiers_.assign(static_cast<std::size_t>(n) * stride_, -1);
  std::vector<std::pair<double, std::uint32_t>> column;
  for (int agent = 1; agent <= n; ++agent) {
    column.clear();
    const std::uint32_t bit = 1u << (agent - 1);
    for (std::uint32_t mask = 1; mask < stride_; ++mask) {
      if (mask & bit) column.emplace_back(Payoff(agent, Coalition(mask)), mask);
    }
    std::sort(column.begin(), column.end());
    int tier = 0;
    for (std::size_t k = 0; k < column.size(); ++k) {
      if (k > 0 && column[k].first - column[k - 1].first > epsilon_) ++tier;
      tiers_[static_cast<std::size_t>(agent - 1) * stride_ + column[k].second] =
          tier;
    }
  }
}

Preference InducedProblem::Compare(int agent, Coalition a, Coalition b) const {
  const int ta = Tier(agent, a);
  const int tb = Tier(agent, b);
  if (ta > tb) return Preference::kPrefers;
  if (ta < tb) return Preference::kDisprefers;
  return Preference::kIndifferent;
}

std::vector<std::vector<Coalition>> InducedProblem::OrderFor(int agent) const {
  std::map<int, std::vector<Coalition>, std::greater<>> by_tier;
  for (Coalition c : CanonicalCoalitions(agents())) {
    if (c.Contains(agent)) by_tier[Tier(agent, c)].push_back(c);
  }
  std::vector<std::vector<Coalition>> out;
  for (auto& [tier, group] : by_tier) out.push_back(std::move(group));
  return out;
}

InducedProblem InducePreferences(const SharingRule& rule,
                                 const EndowmentMap& endowments,
                                 const AgentSet& agents, double epsilon) {
  return InducedProblem(PayoffTable::Compute(rule, endowments, agents),
                        epsilon);
}

Partition::Partition(std::vector<Coalition> blocks, const AgentSet& agents)
    : blocks_(std::move(blocks)) {
  std::uint32_t seen = 0;
  for (Coalition b : blocks_) {
    if (b.empty()) throw InvalidInput("partition has an empty block");
    if ((seen & b.mask()) != 0) throw InvalidInput("partition blocks overlap");
    seen |= b.mask();
  }
  if (seen != Coalition::All(agents).mask()) {
    throw InvalidInput("partition blocks do not cover all agents");
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](Coalition a, Coalition b) { return a.First() < b.First(); });
}

Coalition Partition::BlockOf(int agent) const {
  for (Coalition b : blocks_) {
    if (b.Contains(agent)) return b;
  }
  throw InvalidInput("agent " + std::to_string(agent) + " not in partition");
}

std::string Partition::ToString() const {
  std::string out = "{";
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (k > 0) out += ',';
    out += '{' + blocks_[k].ToString() + '}';
  }
  return out + '}';
}

PartitionEnumerator::PartitionEnumerator(const AgentSet& agents, int cap)
    : n_(agents.size()) {
  if (n_ > cap) {
    throw CapExceeded("refusing to enumerate partitions of " +
                      std::to_string(n_) + " agents (cap " +
                      std::to_string(cap) +
                      "); raise --cap if you accept Bell(n) work");
  }
  rgs_.assign(static_cast<std::size_t>(n_), 0);
  prefix_max_.assign(static_cast<std::size_t>(n_), 0);
}

bool PartitionEnumerator::Next(std::vector<Coalition>& out) {
  if (done_) return false;
  if (started_) {
    // Advance the restricted growth string: bump the rightmost position that
    // may still grow, reset everything after it to 0.
    int pos = n_ - 1;
    while (pos > 0 && rgs_[pos] > prefix_max_[pos - 1]) --pos;
    if (pos == 0) {
      done_ = true;
      return false;
    }
    ++rgs_[pos];
    prefix_max_[pos] = std::max(prefix_max_[pos - 1], rgs_[pos]);
    for (int k = pos + 1; k < n_; ++k) {
      rgs_[k] = 0;
      prefix_max_[k] = prefix_max_[pos];
    }
  }
  started_ = true;
  const int blocks = prefix_max_[n_ - 1] + 1;
  out.assign(static_cast<std::size_t>(blocks), Coalition());
  for (int k = 0; k < n_; ++k) {
    out[rgs_[k]] = Coalition(out[rgs_[k]].mask() | (1u << k));
  }
  return true;
}

std::vector<Partition> EnumeratePartitions(const AgentSet& agents, int cap) {
  PartitionEnumerator it(agents, cap);
  std::vector<Partition> out;
  std::vector<Coalition> blocks;
  while (it.Next(blocks)) out.emplace_back(blocks, agents);
  return out;
}

std::string FormatNumber(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string FormatAllocation(const Allocation& allocation) {
  std::string out = "(";
  for (std::size_t k = 0; k < allocation.payoffs.size(); ++k) {
    if (k > 0) out += ',';
    out += FormatNumber(allocation.payoffs[k]);
  }
  return out + ')';
}

}  // namespace coalition
