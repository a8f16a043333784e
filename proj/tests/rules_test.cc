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

#include "coalition/rules.h"

#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "coalition/fuzz.h"
#include "oracles.h"

namespace coalition {
namespace {

using ::testing::TestWithParam;

const std::vector<Interval> kExample3Intervals = {
    {2.0, 9.0}, {9.0, 10.5}, {10.5, kInfinity}};

void ExpectPayoffs(const Allocation& a, const std::vector<double>& expected,
                   double tol = 0.0) {
  ASSERT_EQ(a.payoffs.size(), expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    if (tol == 0.0) {
      EXPECT_EQ(a.payoffs[k], expected[k]) << "position " << k;
    } else {
      EXPECT_NEAR(a.payoffs[k], expected[k], tol) << "position " << k;
    }
  }
}

TEST(RankingTest, ProjectionPutsTopAgentFirst) {
  const Ranking r{{2, 3, 1}};
  const Coalition c = Coalition::Of({1, 2, 3});
  EXPECT_EQ(r.ProjectedPosition(c, 3), 1);
  EXPECT_EQ(r.ProjectedPosition(c, 1), 2);
  EXPECT_EQ(r.ProjectedPosition(c, 2), 3);
  EXPECT_EQ(r.ProjectedPosition(Coalition::Of({1, 2}), 1), 1);
  EXPECT_EQ(r.ProjectedPosition(Coalition::Of({1, 2}), 2), 2);
}

TEST(EqualDivisionTest, Examples) {
  ExpectPayoffs(EqualDivision(Coalition::Of({2, 3}), 6), {3, 3});
  ExpectPayoffs(EqualDivision(Coalition::Of({1}), 7), {7});
  ExpectPayoffs(EqualDivision(Coalition::Of({1, 2, 3, 4}), 0), {0, 0, 0, 0});
}

TEST(PrioritySatiationTest, Examples) {
  ExpectPayoffs(PrioritySatiation(Coalition::Of({1, 2, 4}), 20, 10, 1),
                {10, 5, 5});
  ExpectPayoffs(PrioritySatiation(Coalition::Of({1, 2}), 10, 10, 1), {10, 0});
  ExpectPayoffs(PrioritySatiation(Coalition::Of({2, 3}), 8, 10, 1), {4, 4});
  ExpectPayoffs(PrioritySatiation(Coalition::Of({1, 3}), 4, 10, 1), {4, 0});
}

TEST(PrioritySatiationTest, SingletonPriorityAgentKeepsEverything) {
  ExpectPayoffs(PrioritySatiation(Coalition::Of({1}), 25, 10, 1), {25});
}

TEST(PrioritySatiationTest, ReproducesExampleOneTable) {
  const PublishedInstance ex = Example1Instance();
  const SharingRule rule = MakeRule(ex.rule, AgentSet(ex.agents));
  const std::vector<std::pair<std::vector<int>, std::vector<double>>> rows = {
      {{1, 2}, {10, 0}},        {{1, 3}, {10, 2}},       {{1, 4}, {10, 4}},
      {{1, 2, 3}, {10, 3, 3}},  {{1, 2, 4}, {10, 5, 5}}, {{1, 3, 4}, {10, 7, 7}},
      {{1, 2, 3, 4}, {10, 6, 6, 6}}};
  for (const auto& [members, payoffs] : rows) {
    const Coalition c = Coalition::FromMembers(members);
    ExpectPayoffs(rule(c, ex.endowments.At(c)), payoffs);
  }
}

TEST(GrandCoalitionPriorityTest, Examples) {
  const AgentSet n3(3);
  ExpectPayoffs(GrandCoalitionPriority(Coalition::Of({1, 2, 3}), 15, 6, 1, n3),
                {6, 4.5, 4.5});
  ExpectPayoffs(GrandCoalitionPriority(Coalition::Of({1, 2}), 10, 6, 1, n3),
                {5, 5});
  ExpectPayoffs(GrandCoalitionPriority(Coalition::Of({1, 2, 3}), 0, 6, 1, n3),
                {0, 0, 0});
  ExpectPayoffs(GrandCoalitionPriority(Coalition::Of({1}), 9, 6, 1, AgentSet(1)),
                {9});
}

TEST(IntervalRuleTest, ReproducesExampleThreeTable) {
  const Ranking r = Ranking::Identity(3);
  ExpectPayoffs(IntervalRule(Coalition::Of({1, 2}), 20, r, kExample3Intervals),
                {10.5, 9.5}, 1e-12);
  ExpectPayoffs(IntervalRule(Coalition::Of({1, 3}), 15, r, kExample3Intervals),
                {9, 6}, 1e-12);
  ExpectPayoffs(IntervalRule(Coalition::Of({2, 3}), 14, r, kExample3Intervals),
                {9, 5}, 1e-12);
  ExpectPayoffs(
      IntervalRule(Coalition::Of({1, 2, 3}), 21, r, kExample3Intervals),
      {9, 9, 3}, 1e-12);
}

TEST(IntervalRuleTest, ZeroIntervalsGiveEqualDivision) {
  const std::vector<Interval> zero = {{0.0, 0.0}};
  const Ranking r = Ranking::Identity(4);
  for (double e : {0.0, 1.0, 7.5, 40.0}) {
    const Coalition c = Coalition::Of({1, 3, 4});
    ExpectPayoffs(IntervalRule(c, e, r, zero), {e / 3, e / 3, e / 3}, 1e-12);
  }
}

TEST(IntervalRuleTest, ContinuousAndMonotoneOnAGrid) {
  const Ranking r{{3, 1, 2}};
  const Coalition c = Coalition::Of({1, 2, 3});
  Allocation prev = IntervalRule(c, 0.0, r, kExample3Intervals);
  for (int k = 1; k <= 60000; ++k) {
    const double e = k * 1e-3;
    const Allocation cur = IntervalRule(c, e, r, kExample3Intervals);
    for (std::size_t m = 0; m < 3; ++m) {
      ASSERT_GE(cur.payoffs[m], prev.payoffs[m] - 1e-12) << "E=" << e;
      ASSERT_LE(cur.payoffs[m] - prev.payoffs[m], 1e-3 + 1e-12) << "E=" << e;
    }
    prev = cur;
  }
}

TEST(ProportionalRankingTest, ReproducesExampleThreeTable) {
  const Ranking r = Ranking::Identity(3);
  const std::vector<double> w = {3, 1, 1};
  ExpectPayoffs(ProportionalRanking(Coalition::Of({1, 2}), 20, r, w), {15, 5},
                1e-12);
  ExpectPayoffs(ProportionalRanking(Coalition::Of({2, 3}), 14, r, w),
                {10.5, 3.5}, 1e-12);
  ExpectPayoffs(ProportionalRanking(Coalition::Of({1, 3}), 15, r, w),
                {11.25, 3.75}, 1e-12);
  ExpectPayoffs(ProportionalRanking(Coalition::Of({1, 2, 3}), 21, r, w),
                {12.6, 4.2, 4.2}, 1e-12);
}

TEST(ProportionalRankingTest, EqualWeightsGiveEqualDivision) {
  const Ranking r{{4, 2, 3, 1}};
  ExpectPayoffs(
      ProportionalRanking(Coalition::Of({1, 2, 4}), 9, r, {{2, 2, 2, 2}}),
      {3, 3, 3}, 1e-12);
}

TEST(ClaimsRuleTest, Examples) {
  const Coalition c = Coalition::Of({1, 2});
  ExpectPayoffs(ClaimsRule(c, 3, {{2, 4}}, ClaimsMethod::kProportional), {1, 2},
                1e-12);
  ExpectPayoffs(
      ClaimsRule(c, 6, {{2, 10}}, ClaimsMethod::kConstrainedEqualAwards),
      {2, 4}, 1e-12);
  ExpectPayoffs(ClaimsRule(c, 5, {{5, 5}}, ClaimsMethod::kRandomArrival),
                {2.5, 2.5}, 1e-12);
}

TEST(ClaimsRuleTest, SurplusIsSplitEquallyOnTopOfClaims) {
  const Coalition c = Coalition::Of({1, 2, 3});
  const std::vector<double> claims = {1, 2, 3};
  for (auto method : {ClaimsMethod::kProportional,
                      ClaimsMethod::kConstrainedEqualAwards,
                      ClaimsMethod::kRandomArrival}) {
    ExpectPayoffs(ClaimsRule(c, 9, claims, method), {2, 3, 4}, 1e-12);
  }
}

TEST(ClaimsRuleTest, ZeroClaimsProportionalSplitsEqually) {
  ExpectPayoffs(ClaimsRule(Coalition::Of({1, 2}), 4, {{0, 0}},
                           ClaimsMethod::kProportional),
                {2, 2}, 1e-12);
}

TEST(ClaimsRuleTest, CeaMatchesBisectionOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> claim(0.0, 20.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<double> claims(n);
    for (double& v : claims) v = claim(rng);
    const double total = std::accumulate(claims.begin(), claims.end(), 0.0);
    const double e = std::uniform_real_distribution<double>(0, 1.2 * total)(rng);
    const Coalition all = Coalition::All(AgentSet(n));
    const auto ours =
        ClaimsRule(all, e, claims, ClaimsMethod::kConstrainedEqualAwards);
    ExpectPayoffs(ours, oracle::CeaBisection(claims, e), 1e-9);
  }
}

TEST(ClaimsRuleTest, RandomArrivalMatchesPermutationAverage) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> claim(0.0, 20.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<double> claims(n);
    for (double& v : claims) v = claim(rng);
    if (trial % 5 == 0) claims[0] = 0.0;
    const double total = std::accumulate(claims.begin(), claims.end(), 0.0);
    const double e = std::uniform_real_distribution<double>(0, 1.2 * total)(rng);
    const Coalition all = Coalition::All(AgentSet(n));
    const auto ours = ClaimsRule(all, e, claims, ClaimsMethod::kRandomArrival);
    ExpectPayoffs(ours, oracle::RandomArrivalPermutations(claims, e), 1e-9);
  }
}

TEST(ClaimsRuleTest, RandomArrivalOnSubcoalitionUsesMembersClaims) {
  const std::vector<double> claims = {8, 6, 4, 2};
  const auto ours =
      ClaimsRule(Coalition::Of({2, 4}), 5, claims, ClaimsMethod::kRandomArrival);
  ExpectPayoffs(ours, oracle::RandomArrivalPermutations({6, 2}, 5), 1e-12);
}

TEST(NashProductTest, SymmetricSlopesGiveEqualDivision) {
  ExpectPayoffs(NashProduct(Coalition::Of({1, 2, 3}), 9, {{2, 2, 2}}),
                {3, 3, 3}, 1e-9);
  ExpectPayoffs(NashProduct(Coalition::Of({1, 2}), 2, {{1, 1}}), {1, 1}, 1e-9);
  ExpectPayoffs(NashProduct(Coalition::Of({2}), 5, {{1, 3}}), {5}, 0.0);
}

TEST(NashProductTest, MatchesGridSearchForTwoAgents) {
  const auto [x1, x2] = oracle::NashGrid2(1, 1, 2);
  ExpectPayoffs(NashProduct(Coalition::Of({1, 2}), 2, {{1, 1}}), {x1, x2},
                1e-4);
  for (auto [a1, a2, e] : std::vector<std::tuple<double, double, double>>{
           {0.5, 2.0, 3.0}, {3.0, 0.2, 10.0}, {1.0, 4.0, 0.1}, {0.1, 0.1, 50}}) {
    const auto [g1, g2] = oracle::NashGrid2(a1, a2, e);
    const auto ours = NashProduct(Coalition::Of({1, 2}), e, {{a1, a2}});
    EXPECT_NEAR(ours.payoffs[0], g1, 1e-3 * e) << a1 << " " << a2 << " " << e;
    EXPECT_NEAR(ours.payoffs[1], g2, 1e-3 * e);
  }
}

TEST(NashProductTest, KktResidualIsTiny) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> slope(0.05, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<double> slopes(n);
    for (double& s : slopes) s = slope(rng);
    const double e = std::uniform_real_distribution<double>(0, 60)(rng);
    const auto a = NashProduct(Coalition::All(AgentSet(n)), e, slopes);
    EXPECT_LE(NashKktResidual(a, slopes), 1e-9);
  }
}

TEST(ValidateRuleTest, RejectsMalformedSpecs) {
  const AgentSet n3(3);
  EXPECT_THROW(ValidateRule(PrioritySatiationSpec{-1, 1}, n3), InvalidInput);
  EXPECT_THROW(ValidateRule(PrioritySatiationSpec{10, 4}, n3), InvalidInput);
  EXPECT_THROW(
      ValidateRule(IntervalRankingSpec{Ranking::Identity(3), {{3, 2}}}, n3),
      InvalidInput);
  EXPECT_THROW(ValidateRule(IntervalRankingSpec{Ranking::Identity(3),
                                                {{0, 5}, {4, 6}}},
                            n3),
               InvalidInput);
  EXPECT_THROW(ValidateRule(IntervalRankingSpec{Ranking::Identity(3),
                                                {{0, kInfinity}, {4, 6}}},
                            n3),
               InvalidInput);
  EXPECT_THROW(ValidateRule(IntervalRankingSpec{Ranking{{1, 1, 2}}, {{0, 1}}},
                            n3),
               InvalidInput);
  EXPECT_THROW(ValidateRule(ProportionalRankingSpec{Ranking::Identity(3),
                                                    {1, 3, 1}},
                            n3),
               InvalidInput);
  EXPECT_THROW(
      ValidateRule(ProportionalRankingSpec{Ranking::Identity(3), {0, 0, 0}},
                   n3),
      InvalidInput);
  EXPECT_THROW(ValidateRule(ClaimsSpec{ClaimsMethod::kProportional, {1, 2}},
                            n3),
               InvalidInput);
  EXPECT_THROW(ValidateRule(NashProductSpec{{1, 0, 1}}, n3), InvalidInput);
  EXPECT_NO_THROW(ValidateRule(Example3IntervalInstance().rule, n3));
}

TEST(FamilyTagTest, TagsAreStableAndKnown) {
  const auto& known = KnownFamilyTags();
  EXPECT_EQ(known.size(), 9u);
  for (const std::string& family : known) {
    std::mt19937_64 rng(1);
    EXPECT_EQ(FamilyTag(SampleRule(family, 4, rng)), family);
  }
}

TEST(RuleBreakpointsTest, IncludeSatiationAndIntervalEnds) {
  const auto bp = RuleBreakpoints(Example1Instance().rule, AgentSet(4));
  EXPECT_NE(std::find(bp.begin(), bp.end(), 10.0), bp.end());
  const auto ip = RuleBreakpoints(Example3IntervalInstance().rule, AgentSet(3));
  EXPECT_NE(std::find(ip.begin(), ip.end(), 21.0), ip.end());
  for (double v : ip) EXPECT_TRUE(std::isfinite(v));
}

// Efficiency and nonnegativity for 10^4 random (C, E) in every family.
class RuleFamilyTest : public TestWithParam<std::string> {};

TEST_P(RuleFamilyTest, EfficientAndNonnegative) {
  std::mt19937_64 rng(std::hash<std::string>{}(GetParam()));
  for (int k = 0; k < 10000; ++k) {
    const int n = 1 + k % 6;
    const AgentSet agents(n);
    const SharingRuleSpec spec = SampleRule(GetParam(), n, rng);
    const SharingRule rule = MakeRule(spec, agents);
    const std::uint32_t mask =
        std::uniform_int_distribution<std::uint32_t>(1, (1u << n) - 1)(rng);
    const double e = k % 17 == 0
                         ? 0.0
                         : std::uniform_real_distribution<double>(0, 120)(rng);
    Allocation a = rule(Coalition(mask), e);
    ASSERT_EQ(a.coalition, Coalition(mask));
    ASSERT_NO_THROW(ValidateAllocation(a, e)) << FamilyTag(spec) << " E=" << e;
    for (double x : a.payoffs) ASSERT_GE(x, 0.0);
  }
}

INSTANTIATE_TEST_SUITE_P(AllFamilies, RuleFamilyTest,
                         ::testing::ValuesIn(KnownFamilyTags()),
                         [](const auto& info) {
                           std::string name = info.param;
                           std::replace(name.begin(), name.end(), '-', '_');
                           return name;
                         });

Ranking RandomRanking(int n, std::mt19937_64& rng) {
  Ranking r = Ranking::Identity(n);
  std::shuffle(r.positions.begin(), r.positions.end(), rng);
  return r;
}

TEST(RankingRulesTest, OrderPreserving) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 5000; ++k) {
    const int n = 2 + k % 5;
    const AgentSet agents(n);
    SharingRuleSpec spec = SampleRule(
        k % 2 == 0 ? "interval-ranking" : "proportional-ranking", n, rng);
    const Ranking r = RandomRanking(n, rng);
    std::visit(
        [&](auto& s) {
          if constexpr (requires { s.ranking; }) s.ranking = r;
        },
        spec);
    const SharingRule rule = MakeRule(spec, agents);
    const std::uint32_t mask =
        std::uniform_int_distribution<std::uint32_t>(1, (1u << n) - 1)(rng);
    const Coalition c(mask);
    const double e = std::uniform_real_distribution<double>(0, 80)(rng);
    const Allocation a = rule(c, e);
    for (int i : c.Members()) {
      for (int j : c.Members()) {
        if (r.PositionOf(i) < r.PositionOf(j)) {
          ASSERT_GE(a.PayoffOf(i), a.PayoffOf(j) - SumTolerance(e))
              << FamilyTag(spec) << " C={" << c.ToString() << "} E=" << e;
        }
      }
    }
  }
}

TEST(RankingRulesTest, AnonymousUpToRanking) {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 3000; ++k) {
    const int n = 2 + k % 5;
    const AgentSet agents(n);
    SharingRuleSpec spec = SampleRule(
        k % 2 == 0 ? "interval-ranking" : "proportional-ranking", n, rng);
    const Ranking r = RandomRanking(n, rng);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    Ranking moved = r;
    for (int i = 1; i <= n; ++i) moved.positions[perm[i - 1] - 1] = r.PositionOf(i);
    SharingRuleSpec moved_spec = spec;
    std::visit([&](auto& s) { if constexpr (requires { s.ranking; }) s.ranking = r; },
               spec);
    std::visit(
        [&](auto& s) { if constexpr (requires { s.ranking; }) s.ranking = moved; },
        moved_spec);
    const std::uint32_t mask =
        std::uniform_int_distribution<std::uint32_t>(1, (1u << n) - 1)(rng);
    const Coalition c(mask);
    std::vector<int> image;
    for (int i : c.Members()) image.push_back(perm[i - 1]);
    const Coalition c_moved = Coalition::FromMembers(image);
    const double e = std::uniform_real_distribution<double>(0, 80)(rng);
    const Allocation a = MakeRule(spec, agents)(c, e);
    const Allocation b = MakeRule(moved_spec, agents)(c_moved, e);
    for (int i : c.Members()) {
      ASSERT_NEAR(a.PayoffOf(i), b.PayoffOf(perm[i - 1]), 1e-9);
    }
  }
}

}  // namespace
}  // namespace coalition
