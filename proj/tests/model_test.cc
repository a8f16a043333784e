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

#include <set>

#include <gtest/gtest.h>

#include "coalition/rules.h"
#include "oracles.h"

namespace coalition {
namespace {

TEST(CoalitionTest, MembersAndLabels) {
  const Coalition c = Coalition::Of({3, 1, 4});
  EXPECT_EQ(c.size(), 3);
  EXPECT_EQ(c.Members(), (std::vector<int>{1, 3, 4}));
  EXPECT_EQ(c.ToString(), "134");
  EXPECT_EQ(c.First(), 1);
  EXPECT_EQ(c.IndexOf(4), 2);
  EXPECT_EQ(c.IndexOf(2), -1);
  EXPECT_EQ(Coalition::Of({1, 3, 10}).ToString(), "1,3,10");
}

TEST(CoalitionTest, ParseAcceptsBothNotations) {
  EXPECT_EQ(Coalition::Parse("134"), Coalition::Of({1, 3, 4}));
  EXPECT_EQ(Coalition::Parse("{1,3,10}"), Coalition::Of({1, 3, 10}));
  EXPECT_EQ(Coalition::Parse(Coalition::Of({2, 11}).ToString()),
            Coalition::Of({2, 11}));
  EXPECT_THROW(Coalition::Parse(""), InvalidInput);
  EXPECT_THROW(Coalition::Parse("1a"), InvalidInput);
  EXPECT_THROW(Coalition::Of({0}), InvalidInput);
  EXPECT_THROW(Coalition::Of({kMaxAgents + 1}), InvalidInput);
}

TEST(CoalitionTest, SetOperations) {
  const Coalition a = Coalition::Of({1, 2});
  const Coalition b = Coalition::Of({2, 3});
  EXPECT_TRUE(a.Intersects(b));
  EXPECT_EQ(a.Intersect(b), Coalition::Singleton(2));
  EXPECT_EQ(a.Union(b), Coalition::Of({1, 2, 3}));
  EXPECT_EQ(a.Without(b), Coalition::Singleton(1));
  EXPECT_TRUE(a.IsProperSubsetOf(a.Union(b)));
  EXPECT_FALSE(a.IsProperSubsetOf(a));
  EXPECT_TRUE(a.IsSubsetOf(a));
}

TEST(CoalitionTest, CanonicalOrderIsSizeThenLexicographic) {
  const auto all = CanonicalCoalitions(AgentSet(3));
  std::vector<std::string> labels;
  for (Coalition c : all) labels.push_back(c.ToString());
  EXPECT_EQ(labels, (std::vector<std::string>{"1", "2", "3", "12", "13", "23",
                                              "123"}));
  EXPECT_TRUE(CanonicalLess(Coalition::Of({1, 4}), Coalition::Of({2, 3})));
  EXPECT_TRUE(CanonicalLess(Coalition::Of({4}), Coalition::Of({1, 2})));
}

TEST(CoalitionTest, SubsetsOfACoalition) {
  const auto subs = CanonicalSubsets(Coalition::Of({1, 3}));
  ASSERT_EQ(subs.size(), 3u);
  EXPECT_EQ(subs[0], Coalition::Singleton(1));
  EXPECT_EQ(subs[1], Coalition::Singleton(3));
  EXPECT_EQ(subs[2], Coalition::Of({1, 3}));
}

TEST(AgentSetTest, RejectsOutOfRange) {
  EXPECT_THROW(AgentSet{0}, InvalidInput);
  EXPECT_THROW(AgentSet{kMaxAgents + 1}, InvalidInput);
  EXPECT_NO_THROW(AgentSet{kMaxAgents});
}

TEST(EndowmentMapTest, DefaultsToZeroAndValidates) {
  EndowmentMap m;
  m.Set(Coalition::Of({1, 2}), 10);
  EXPECT_EQ(m.At(Coalition::Of({1, 2})), 10);
  EXPECT_EQ(m.At(Coalition::Of({1, 3})), 0);
  EXPECT_EQ(m.MaxEndowment(), 10);
  EXPECT_THROW(m.Set(Coalition::Of({1}), -1), InvalidInput);
  EXPECT_THROW(m.Set(Coalition::Of({1}), kInfinity), InvalidInput);
  EXPECT_THROW(m.Set(Coalition(), 1), InvalidInput);
  m.Set(Coalition::Of({1, 5}), 1);
  EXPECT_THROW(m.Validate(AgentSet(4)), InvalidInput);
  EXPECT_NO_THROW(m.Validate(AgentSet(5)));
}

TEST(AllocationTest, ValidationClampsRoundoffAndRejectsErrors) {
  Allocation a{Coalition::Of({1, 2}), {5.0, -1e-15}};
  EXPECT_NO_THROW(ValidateAllocation(a, 5.0));
  EXPECT_EQ(a.payoffs[1], 0.0);
  Allocation bad_sum{Coalition::Of({1, 2}), {5.0, 1.0}};
  EXPECT_THROW(ValidateAllocation(bad_sum, 5.0), InvariantBreach);
  Allocation negative{Coalition::Of({1, 2}), {6.0, -1.0}};
  EXPECT_THROW(ValidateAllocation(negative, 5.0), InvariantBreach);
  Allocation short_row{Coalition::Of({1, 2}), {5.0}};
  EXPECT_THROW(ValidateAllocation(short_row, 5.0), InvariantBreach);
}

TEST(PayoffTableTest, MalformedRuleIsAnInvariantBreach) {
  const SharingRule broken("broken", [](Coalition c, double e) {
    return Allocation{c, std::vector<double>(c.size(), e)};
  });
  EndowmentMap m;
  m.Set(Coalition::Of({1, 2}), 4);
  EXPECT_THROW(PayoffTable::Compute(broken, m, AgentSet(2)), InvariantBreach);
}

TEST(PayoffTableTest, ThrowingRuleIsAnInputError) {
  const SharingRule throwing("throwing", [](Coalition, double) -> Allocation {
    throw std::domain_error("no");
  });
  EXPECT_THROW(PayoffTable::Compute(throwing, {}, AgentSet(2)), InvalidInput);
}

TEST(InducedProblemTest, ExactModeSeparatesTinyGaps) {
  const SharingRule rule = oracle::TableRule(
      {{}, {1.0}, {1.0}, {1.0 + 1e-12, 0.0}});
  EndowmentMap m;
  m.Set(Coalition::Of({1}), 1.0);
  m.Set(Coalition::Of({2}), 1.0);
  m.Set(Coalition::Of({1, 2}), 1.0 + 1e-12);
  const InducedProblem loose(PayoffTable::Compute(rule, m, AgentSet(2)));
  const InducedProblem exact(PayoffTable::Compute(rule, m, AgentSet(2)), 0.0);
  EXPECT_EQ(loose.Compare(1, Coalition::Of({1, 2}), Coalition::Of({1})),
            Preference::kIndifferent);
  EXPECT_EQ(exact.Compare(1, Coalition::Of({1, 2}), Coalition::Of({1})),
            Preference::kPrefers);
}

TEST(InducedProblemTest, OrderForGroupsTies) {
  const SharingRule rule = MakeRule(PrioritySatiationSpec{10, 1}, AgentSet(3));
  EndowmentMap m;
  m.Set(Coalition::Of({1, 2}), 10);
  m.Set(Coalition::Of({1, 3}), 12);
  const InducedProblem p = InducePreferences(rule, m, AgentSet(3), 0.0);
  const auto order = p.OrderFor(1);
  ASSERT_EQ(order.size(), 2u);
  EXPECT_EQ(order[0], (std::vector<Coalition>{Coalition::Of({1, 2}),
                                              Coalition::Of({1, 3})}));
  EXPECT_EQ(order[1], (std::vector<Coalition>{Coalition::Of({1}),
                                              Coalition::Of({1, 2, 3})}));
}

// Preferences must be complete and transitive, including chains of payoffs
// that are each within epsilon of their neighbour.
TEST(InducedProblemTest, PreferencesAreTransitiveOnRandomProfiles) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 4;
    std::vector<std::vector<double>> payoffs(std::size_t{1} << n);
    EndowmentMap m;
    std::uniform_int_distribution<int> step(0, 6);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      double total = 0.0;
      for (int k = 0; k < Coalition(mask).size(); ++k) {
        payoffs[mask].push_back(1.0 + step(rng) * 4e-10);
        total += payoffs[mask].back();
      }
      m.Set(Coalition(mask), total);
    }
    const InducedProblem p(
        PayoffTable::Compute(oracle::TableRule(payoffs), m, AgentSet(n)));
    for (int i = 1; i <= n; ++i) {
      std::vector<Coalition> mine;
      for (Coalition c : CanonicalCoalitions(AgentSet(n))) {
        if (c.Contains(i)) mine.push_back(c);
      }
      for (Coalition a : mine) {
        for (Coalition b : mine) {
          ASSERT_TRUE(p.WeaklyPrefers(i, a, b) || p.WeaklyPrefers(i, b, a));
          for (Coalition c : mine) {
            if (p.WeaklyPrefers(i, a, b) && p.WeaklyPrefers(i, b, c)) {
              ASSERT_TRUE(p.WeaklyPrefers(i, a, c));
            }
          }
        }
      }
    }
  }
}

TEST(PartitionTest, ValidatesAndFormats) {
  const AgentSet agents(4);
  const Partition p({Coalition::Singleton(2), Coalition::Of({1, 3, 4})},
                    agents);
  EXPECT_EQ(p.ToString(), "{{134},{2}}");
  EXPECT_EQ(p.BlockOf(4), Coalition::Of({1, 3, 4}));
  EXPECT_THROW(Partition({Coalition::Of({1, 2})}, agents), InvalidInput);
  EXPECT_THROW(Partition({Coalition::Of({1, 2}), Coalition::Of({2, 3, 4})},
                         agents),
               InvalidInput);
  EXPECT_THROW(Partition({Coalition::Of({1, 2, 3, 4}), Coalition()}, agents),
               InvalidInput);
}

TEST(PartitionEnumeratorTest, CountsMatchBellNumbers) {
  const auto bell = oracle::BellNumbers(10);
  for (int n = 1; n <= 10; ++n) {
    PartitionEnumerator e(AgentSet(n), 10);
    std::vector<Coalition> blocks;
    std::uint64_t count = 0;
    while (e.Next(blocks)) ++count;
    EXPECT_EQ(count, bell[n]) << "n=" << n;
  }
}

TEST(PartitionEnumeratorTest, MatchesRecursiveEnumeration) {
  for (int n = 1; n <= 6; ++n) {
    std::set<std::vector<std::uint32_t>> ours;
    for (const Partition& p : EnumeratePartitions(AgentSet(n))) {
      ours.insert(oracle::Masks(p));
    }
    const auto theirs = oracle::AllPartitions(n);
    EXPECT_EQ(ours.size(), theirs.size());
    EXPECT_EQ(ours, std::set<std::vector<std::uint32_t>>(theirs.begin(),
                                                         theirs.end()));
  }
}

TEST(PartitionEnumeratorTest, RefusesAboveCap) {
  EXPECT_THROW(PartitionEnumerator(AgentSet(13), 12), CapExceeded);
  EXPECT_NO_THROW(PartitionEnumerator(AgentSet(12), 12));
}

TEST(FormatTest, NumbersAndAllocations) {
  EXPECT_EQ(FormatNumber(0.0), "0");
  EXPECT_EQ(FormatNumber(-0.0), "0");
  EXPECT_EQ(FormatNumber(4.5), "4.5");
  EXPECT_EQ(FormatNumber(12.6), "12.6");
  EXPECT_EQ(FormatNumber(kInfinity), "inf");
  EXPECT_EQ(FormatAllocation({Coalition::Of({1, 3, 4}), {10, 7, 7}}),
            "(10,7,7)");
}

}  // namespace
}  // namespace coalition
