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

#include "goldens.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "coalition/axioms.h"
#include "coalition/rules.h"
#include "coalition/stability.h"
#include "coalition/structure.h"

namespace coalition::cli {

GoldenCase Example1Golden() {
  GoldenCase g;
  g.name = "example1";
  g.instance = Example1Instance();
  g.endowments = {{"12", 10, {}},  {"13", 12, {}},  {"14", 14, {}},
                  {"123", 16, {}}, {"124", 20, {}}, {"134", 24, {}},
                  {"1234", 28, {}}};
  g.rows = {{"12", 10, {10, 0}},        {"13", 12, {10, 2}},
            {"14", 14, {10, 4}},        {"123", 16, {10, 3, 3}},
            {"124", 20, {10, 5, 5}},    {"134", 24, {10, 7, 7}},
            {"1234", 28, {10, 6, 6, 6}}};
  g.orders = {
      {1, {"12~13~14~123~124~134~1234", "1"}},
      {2, {"1234", "124", "123", "12", "2~23~24~234"}},
      {3, {"134", "1234", "123", "13", "3~23~34~234"}},
      {4, {"134", "1234", "124", "14", "4~24~34~234"}},
  };
  g.errata = {{2, 3,
               "agent 2 receives 0 in {12} and in {2}; the published table "
               "lists {12} strictly above {2}"}};
  g.ring = std::nullopt;
  g.non_circular = true;
  g.stable_includes = {"{{134},{2}}", "{{1234}}"};
  return g;
}

GoldenCase Example2Golden() {
  GoldenCase g;
  g.name = "example2";
  g.instance = Example2Instance();
  g.endowments = {{"12", 10, {}}, {"13", 8, {}}, {"23", 6, {}}, {"123", 15, {}}};
  g.rows = {{"12", 10, {5, 5}},
            {"13", 8, {4, 4}},
            {"23", 6, {3, 3}},
            {"123", 15, {6, 4.5, 4.5}}};
  g.orders = {
      {1, {"123", "12", "13", "1"}},
      {2, {"12", "123", "23", "2"}},
      {3, {"123", "13", "23", "3"}},
  };
  g.wpa_violation = GoldenViolation{"123", "12", 1, 2};
  g.ring = std::nullopt;
  g.non_circular = false;
  g.stable_includes = {"{{12},{3}}", "{{123}}"};
  g.consistency = GoldenConsistency{"123", "12", 15, 10.5, {6, 4.5}, {5.25, 5.25}};
  return g;
}

namespace {

std::vector<GoldenRow> Example3Endowments() {
  return {{"12", 20, {}}, {"23", 14, {}}, {"13", 15, {}}, {"123", 21, {}}};
}

}  // namespace

GoldenCase Example3IntervalGolden() {
  GoldenCase g;
  g.name = "example3-interval";
  g.instance = Example3IntervalInstance();
  g.tolerance = 1e-9;
  g.epsilon = 1e-9;
  g.endowments = Example3Endowments();
  g.rows = {{"12", 20, {10.5, 9.5}},
            {"13", 15, {9, 6}},
            {"23", 14, {9, 5}},
            {"123", 21, {9, 9, 3}}};
  g.orders = {
      {1, {"12", "13~123", "1"}},
      {2, {"12", "23~123", "2"}},
      {3, {"13", "23", "123", "3"}},
  };
  g.ring = std::nullopt;
  g.stable_includes = {"{{12},{3}}"};
  return g;
}

GoldenCase Example3ProportionalGolden() {
  GoldenCase g;
  g.name = "example3-proportional";
  g.instance = Example3ProportionalInstance();
  g.tolerance = 1e-9;
  g.epsilon = 1e-9;
  g.endowments = Example3Endowments();
  g.rows = {{"12", 20, {15, 5}},
            {"23", 14, {10.5, 3.5}},
            {"13", 15, {11.25, 3.75}},
            {"123", 21, {12.6, 4.2, 4.2}}};
  g.orders = {
      {1, {"12", "123", "13", "1"}},
      {2, {"23", "12", "123", "2"}},
      {3, {"123", "13", "23", "3"}},
  };
  g.wpa_violation = GoldenViolation{"23", "123", 2, 3};
  g.ring = std::vector<std::string>{"12", "23", "13"};
  g.non_circular = false;
  g.core_empty = true;
  return g;
}

std::vector<GoldenCase> GoldensFor(const std::string& which) {
  if (which == "example1") return {Example1Golden()};
  if (which == "example2") return {Example2Golden()};
  if (which == "example3") {
    return {Example3IntervalGolden(), Example3ProportionalGolden()};
  }
  return {};
}

namespace {

class Comparator {
 public:
  explicit Comparator(ReproResult& result, double tolerance)
      : result_(result), tolerance_(tolerance) {}

  void Number(const std::string& what, double expected, double actual) {
    ++result_.checks;
    const bool ok = tolerance_ == 0.0
                        ? expected == actual
                        : std::abs(expected - actual) <= tolerance_;
    if (!ok) {
      Mismatch(what + ": expected " + FormatNumber(expected) + ", got " +
               FormatNumber(actual));
    }
  }

  void Text(const std::string& what, const std::string& expected,
            const std::string& actual) {
    ++result_.checks;
    if (expected != actual) {
      Mismatch(what + ": expected " + expected + ", got " + actual);
    }
  }

  void Flag(const std::string& what, bool expected, bool actual) {
    Text(what, expected ? "true" : "false", actual ? "true" : "false");
  }

  void Mismatch(const std::string& line) { result_.mismatches.push_back(line); }

 private:
  ReproResult& result_;
  double tolerance_;
};

std::string CanonicalTier(const std::string& tier) {
  std::vector<Coalition> cs;
  std::stringstream in(tier);
  std::string part;
  while (std::getline(in, part, '~')) cs.push_back(Coalition::Parse(part));
  std::sort(cs.begin(), cs.end(), CanonicalLess);
  std::string out;
  for (Coalition c : cs) out += (out.empty() ? "" : "~") + c.ToString();
  return out;
}

std::string JoinTier(const std::vector<Coalition>& tier) {
  std::vector<Coalition> cs = tier;
  std::sort(cs.begin(), cs.end(), CanonicalLess);
  std::string out;
  for (Coalition c : cs) out += (out.empty() ? "" : "~") + c.ToString();
  return out;
}

std::vector<std::string> ApplyErrata(const GoldenCase& g, const GoldenOrder& o,
                                     std::vector<std::string>& notes) {
  std::vector<std::string> tiers = o.tiers;
  std::vector<GoldenErratum> mine;
  for (const auto& e : g.errata) {
    if (e.agent == o.agent) mine.push_back(e);
  }
  std::sort(mine.begin(), mine.end(),
            [](const auto& a, const auto& b) { return a.tier > b.tier; });
  for (const auto& e : mine) {
    if (e.tier < 0 || e.tier + 1 >= static_cast<int>(tiers.size())) continue;
    tiers[e.tier] += "~" + tiers[e.tier + 1];
    tiers.erase(tiers.begin() + e.tier + 1);
    notes.push_back("erratum applied: " + e.note);
  }
  for (auto& t : tiers) t = CanonicalTier(t);
  return tiers;
}

std::string ViolationText(const std::string& a, const std::string& b, int i,
                          int j) {
  return "({" + a + "},{" + b + "}," + std::to_string(i) + "," +
         std::to_string(j) + ")";
}

}  // namespace

ReproResult CompareGolden(const GoldenCase& g) {
  const auto start = std::chrono::steady_clock::now();
  ReproResult result;
  result.name = g.name;
  Comparator cmp(result, g.tolerance);
  const AgentSet agents(g.instance.agents);

  EndowmentMap endowments;
  for (const GoldenRow& row : g.endowments) {
    const Coalition c = Coalition::Parse(row.coalition);
    endowments.Set(c, row.endowment);
    cmp.Number("endowment {" + row.coalition + "}", row.endowment,
               g.instance.endowments.At(c));
  }
  for (const auto& [c, e] : g.instance.endowments.entries()) {
    if (e != 0.0 && !endowments.Has(c)) {
      cmp.Number("endowment {" + c.ToString() + "}", 0.0, e);
    }
  }

  const SharingRule rule = MakeRule(g.instance.rule, agents);
  const InducedProblem problem =
      InducePreferences(rule, endowments, agents, g.epsilon);

  for (const GoldenRow& row : g.rows) {
    const Coalition c = Coalition::Parse(row.coalition);
    const Allocation& a = problem.table().At(c);
    cmp.Number("row {" + row.coalition + "} endowment", row.endowment,
               problem.table().Endowment(c));
    if (a.payoffs.size() != row.payoffs.size()) {
      cmp.Mismatch("row {" + row.coalition + "}: expected " +
                   std::to_string(row.payoffs.size()) + " payoffs");
      continue;
    }
    for (std::size_t k = 0; k < row.payoffs.size(); ++k) {
      cmp.Number("row {" + row.coalition + "} agent " +
                     std::to_string(c.Members()[k]),
                 row.payoffs[k], a.payoffs[k]);
    }
  }

  for (const GoldenOrder& o : g.orders) {
    const auto expected = ApplyErrata(g, o, result.notes);
    const auto computed = problem.OrderFor(o.agent);
    const std::string who = "agent " + std::to_string(o.agent) + " tier ";
    const std::size_t m = std::max(expected.size(), computed.size());
    for (std::size_t t = 0; t < m; ++t) {
      cmp.Text(who + std::to_string(t + 1),
               t < expected.size() ? expected[t] : "(none)",
               t < computed.size() ? JoinTier(computed[t]) : "(none)");
    }
  }

  const auto wpa = CheckWeakPairwiseAlignment(problem);
  cmp.Text("weak pairwise alignment",
           g.wpa_violation ? ViolationText(g.wpa_violation->preferred,
                                           g.wpa_violation->other,
                                           g.wpa_violation->agent,
                                           g.wpa_violation->other_agent)
                           : "holds",
           wpa ? ViolationText(wpa->preferred.ToString(),
                               wpa->other.ToString(), wpa->agent,
                               wpa->other_agent)
               : "holds");

  const auto ring = DetectRing(problem);
  auto ring_text = [](const std::vector<std::string>& cs) {
    std::string s;
    for (const auto& c : cs) s += (s.empty() ? "(" : ",") + ("{" + c + "}");
    return s + ")";
  };
  std::vector<std::string> computed_ring;
  if (ring) {
    for (Coalition c : ring->coalitions) computed_ring.push_back(c.ToString());
    if (!IsValidRing(problem, *ring)) cmp.Mismatch("ring certificate invalid");
  }
  cmp.Text("ring", g.ring ? ring_text(*g.ring) : "none",
           ring ? ring_text(computed_ring) : "none");

  if (g.non_circular) {
    cmp.Flag("non-circular", *g.non_circular,
             CheckNonCircular(problem).non_circular);
  }

  const CoreReport core = ComputeCore(problem);
  std::set<std::string> stable;
  for (const Partition& p : core.stable) stable.insert(p.ToString());
  for (const std::string& p : g.stable_includes) {
    cmp.Flag("core contains " + p, true, stable.count(p) != 0);
  }
  cmp.Flag("core empty", g.core_empty, core.empty());

  if (g.consistency) {
    const GoldenConsistency& gc = *g.consistency;
    const Coalition c = Coalition::Parse(gc.coalition);
    const Coalition sub = Coalition::Parse(gc.subcoalition);
    const Allocation full = rule(c, gc.endowment);
    double total = 0.0;
    std::vector<double> restricted;
    for (int i : sub.Members()) {
      restricted.push_back(full.PayoffOf(i));
      total += full.PayoffOf(i);
    }
    cmp.Number("consistency restricted total", gc.restricted_total, total);
    const Allocation again = rule(sub, total);
    for (std::size_t k = 0; k < gc.restricted_payoffs.size(); ++k) {
      const std::string agent = std::to_string(sub.Members().at(k));
      cmp.Number("consistency F({" + gc.coalition + "}) agent " + agent,
                 gc.restricted_payoffs[k], restricted.at(k));
      cmp.Number("consistency F({" + gc.subcoalition + "}) agent " + agent,
                 gc.resolved_payoffs[k], again.payoffs.at(k));
    }
    const SamplingPlan plan = SamplingPlan::ForScenario(
        endowments, RuleBreakpoints(g.instance.rule, agents));
    const AxiomVerdict v = CheckConsistency(rule, agents, plan);
    cmp.Flag("consistency verdict fails", true, !v.passed);
    if (v.witness) {
      cmp.Text("consistency witness C", gc.coalition, v.witness->coalition.ToString());
      cmp.Text("consistency witness C'", gc.subcoalition, v.witness->other.ToString());
      cmp.Number("consistency witness E", gc.endowment, v.witness->endowment);
      cmp.Number("consistency witness E'", gc.restricted_total,
                 v.witness->other_endowment);
    }
  }

  result.elapsed_seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
  return result;
}

}  // namespace coalition::cli
