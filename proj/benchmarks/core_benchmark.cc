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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "coalition/fuzz.h"
#include "coalition/rules.h"
#include "coalition/stability.h"
#include "coalition/structure.h"

namespace coalition {
namespace {

EndowmentMap Dense(const AgentSet& agents, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  EndowmentSampler sampler;
  sampler.sparsity = 0.0;
  return sampler.Draw(agents, rng);
}

void BM_ComputeCore(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const AgentSet agents(n);
  const InducedProblem problem = InducePreferences(
      MakeRule(EqualDivisionSpec{}, agents), Dense(agents, n), agents);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeCore(problem));
  }
}
BENCHMARK(BM_ComputeCore)->DenseRange(6, 8)->Unit(benchmark::kMillisecond);

void BM_ComputeCoreWithCertificates(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const AgentSet agents(n);
  std::vector<double> weights(n, 1.0);
  weights[0] = 3.0;
  const InducedProblem problem = InducePreferences(
      MakeRule(ProportionalRankingSpec{Ranking::Identity(n), weights}, agents),
      Dense(agents, n), agents);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeCore(problem, {kDefaultEnumerationCap, true}));
  }
}
BENCHMARK(BM_ComputeCoreWithCertificates)
    ->DenseRange(6, 8)
    ->Unit(benchmark::kMillisecond);

void BM_EnumeratePartitions(benchmark::State& state) {
  const AgentSet agents(static_cast<int>(state.range(0)));
  std::vector<Coalition> blocks;
  for (auto _ : state) {
    PartitionEnumerator it(agents);
    std::size_t count = 0;
    while (it.Next(blocks)) ++count;
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_EnumeratePartitions)->DenseRange(6, 10, 2);

void BM_InducePreferences(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const AgentSet agents(n);
  const SharingRule rule =
      MakeRule(ClaimsSpec{ClaimsMethod::kConstrainedEqualAwards,
                          std::vector<double>(n, 5.0)},
               agents);
  const EndowmentMap endowments = Dense(agents, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(InducePreferences(rule, endowments, agents));
  }
}
BENCHMARK(BM_InducePreferences)->DenseRange(4, 8, 2);

void BM_RuleEvaluation(benchmark::State& state) {
  const std::vector<SharingRuleSpec> specs = {
      EqualDivisionSpec{},
      PrioritySatiationSpec{10.0, 1},
      ProportionalRankingSpec{Ranking::Identity(6), {3, 1, 1, 1, 1, 1}},
      ClaimsSpec{ClaimsMethod::kRandomArrival, {8, 6, 4, 2, 1, 1}},
      NashProductSpec{{1, 2, 0.5, 1, 3, 1}},
  };
  const AgentSet agents(6);
  const SharingRule rule = MakeRule(specs[state.range(0)], agents);
  const Coalition grand = Coalition::Of({1, 2, 3, 4, 5, 6});
  double e = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rule(grand, e));
    e = e < 50.0 ? e + 0.37 : 0.0;
  }
  state.SetLabel(FamilyTag(specs[state.range(0)]));
}
BENCHMARK(BM_RuleEvaluation)->DenseRange(0, 4);

void BM_NonCircularity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const AgentSet agents(n);
  const InducedProblem problem = InducePreferences(
      MakeRule(PrioritySatiationSpec{5.0, 1}, agents), Dense(agents, 9), agents);
  for (auto _ : state) {
    benchmark::DoNotOptimize(CheckNonCircular(problem));
  }
}
BENCHMARK(BM_NonCircularity)->DenseRange(4, 7);

}  // namespace
}  // namespace coalition

BENCHMARK_MAIN();
