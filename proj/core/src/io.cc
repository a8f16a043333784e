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

#include "coalition/io.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace coalition {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void Fail(const std::string& path, const std::string& message) {
  throw ScenarioError("scenario field '" + path + "': " + message);
}

const json& Require(const json& obj, const std::string& key,
                    const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) Fail(path + key, "missing");
  return obj.at(key);
}

double Number(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity") return kInfinity;
  }
  Fail(path, "expected a number");
}

int Integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) Fail(path, "expected an integer");
  return j.get<int>();
}

std::vector<double> Numbers(const json& j, const std::string& path) {
  if (!j.is_array()) Fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(Number(j[k], path + "[" + std::to_string(k) + "]"));
  }
  return out;
}

Ranking RankingFrom(const json& rule, const AgentSet& agents,
                    const std::string& path) {
  if (!rule.contains("ranking")) return Ranking::Identity(agents.size());
  const json& r = rule.at("ranking");
  if (!r.is_array()) Fail(path + "ranking", "expected an array of positions");
  Ranking out;
  for (std::size_t k = 0; k < r.size(); ++k) {
    out.positions.push_back(
        Integer(r[k], path + "ranking[" + std::to_string(k) + "]"));
  }
  return out;
}

json NumberJson(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

ordered_json CoalitionJson(Coalition c) { return c.ToString(); }

ordered_json ViolationJson(const AlignmentViolation& v) {
  return ordered_json{{"preferred", CoalitionJson(v.preferred)},
                      {"other", CoalitionJson(v.other)},
                      {"agent", v.agent},
                      {"other_agent", v.other_agent}};
}

ordered_json RingJson(const RingCertificate& ring) {
  ordered_json cs = ordered_json::array();
  for (Coalition c : ring.coalitions) cs.push_back(CoalitionJson(c));
  return ordered_json{{"coalitions", cs}, {"witnesses", ring.witnesses}};
}

ordered_json ScenarioHeader(const Scenario& s, std::string_view kind) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["kind"] = kind;
  j["agents"] = s.agents.size();
  j["rule"] = FamilyTag(s.rule);
  if (std::holds_alternative<ClaimsSpec>(s.rule)) {
    j["claims_surplus_policy"] = "equal-top-up";
  }
  return j;
}

ordered_json WitnessJson(const AxiomWitness& w) {
  ordered_json j;
  j["coalition"] = CoalitionJson(w.coalition);
  j["other"] = CoalitionJson(w.other);
  j["endowment"] = w.endowment;
  j["other_endowment"] = w.other_endowment;
  j["agent"] = w.agent;
  if (w.other_agent != 0) j["other_agent"] = w.other_agent;
  j["payoffs"] = w.first.payoffs;
  j["other_payoffs"] = w.second.payoffs;
  return j;
}

ordered_json VerdictJson(const AxiomVerdict& v) {
  ordered_json j;
  j["axiom"] = AxiomTag(v.axiom);
  j["verdict"] = v.passed ? "pass-sampled" : "fail";
  j["samples"] = v.samples;
  j["seed"] = v.seed;
  if (v.witness) j["witness"] = WitnessJson(*v.witness);
  return j;
}

ordered_json RuleJson(const SharingRuleSpec& rule) {
  ordered_json j;
  j["family"] = FamilyTag(rule);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PrioritySatiationSpec> ||
                      std::is_same_v<T, GrandCoalitionPrioritySpec>) {
          j["satiation"] = s.satiation;
          j["priority_agent"] = s.priority_agent;
        } else if constexpr (std::is_same_v<T, IntervalRankingSpec>) {
          j["ranking"] = s.ranking.positions;
          ordered_json ivs = ordered_json::array();
          for (const Interval& iv : s.intervals) {
            ivs.push_back({NumberJson(iv.lower), NumberJson(iv.upper)});
          }
          j["intervals"] = ivs;
        } else if constexpr (std::is_same_v<T, ProportionalRankingSpec>) {
          j["ranking"] = s.ranking.positions;
          j["weights"] = s.weights;
        } else if constexpr (std::is_same_v<T, ClaimsSpec>) {
          j["claims"] = s.claims;
        } else if constexpr (std::is_same_v<T, NashProductSpec>) {
          j["slopes"] = s.slopes;
        }
      },
      rule);
  return j;
}

SharingRuleSpec RuleFromJson(const json& j, const AgentSet& agents) {
  const std::string path = "rule.";
  if (!j.is_object()) Fail("rule", "expected an object");
  const json& fam = Require(j, "family", path);
  if (!fam.is_string()) Fail(path + "family", "expected a string");
  const std::string family = fam.get<std::string>();
  SharingRuleSpec spec;
  if (family == "equal-division") {
    spec = EqualDivisionSpec{};
  } else if (family == "priority-satiation" ||
             family == "grand-coalition-priority") {
    const double k = Number(Require(j, "satiation", path), path + "satiation");
    const int p = j.contains("priority_agent")
                      ? Integer(j.at("priority_agent"), path + "priority_agent")
                      : 1;
    if (family == "priority-satiation") {
      spec = PrioritySatiationSpec{k, p};
    } else {
      spec = GrandCoalitionPrioritySpec{k, p};
    }
  } else if (family == "interval-ranking") {
    IntervalRankingSpec s{RankingFrom(j, agents, path), {}};
    const json& ivs = Require(j, "intervals", path);
    if (!ivs.is_array()) Fail(path + "intervals", "expected an array");
    for (std::size_t k = 0; k < ivs.size(); ++k) {
      const std::string at = path + "intervals[" + std::to_string(k) + "]";
      if (!ivs[k].is_array() || ivs[k].size() != 2) {
        Fail(at, "expected [lower, upper]");
      }
      s.intervals.push_back({Number(ivs[k][0], at + "[0]"),
                             Number(ivs[k][1], at + "[1]")});
    }
    spec = s;
  } else if (family == "proportional-ranking") {
    spec = ProportionalRankingSpec{
        RankingFrom(j, agents, path),
        Numbers(Require(j, "weights", path), path + "weights")};
  } else if (family == "claims-proportional" || family == "claims-cea" ||
             family == "claims-random-arrival") {
    const ClaimsMethod m = family == "claims-proportional"
                               ? ClaimsMethod::kProportional
                           : family == "claims-cea"
                               ? ClaimsMethod::kConstrainedEqualAwards
                               : ClaimsMethod::kRandomArrival;
    spec = ClaimsSpec{m, Numbers(Require(j, "claims", path), path + "claims")};
  } else if (family == "nash-product") {
    spec = NashProductSpec{Numbers(Require(j, "slopes", path), path + "slopes")};
  } else {
    std::string known;
    for (const auto& t : KnownFamilyTags()) known += (known.empty() ? "" : ", ") + t;
    Fail(path + "family", "unknown family '" + family + "'; known: " + known);
  }
  try {
    ValidateRule(spec, agents);
  } catch (const InvalidInput& e) {
    Fail("rule", e.what());
  }
  return spec;
}

}  // namespace

Scenario ParseScenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ScenarioError("scenario syntax error at line " + std::to_string(line) +
                        ", column " + std::to_string(column) + ": " + e.what());
  }
  if (!doc.is_object()) Fail("(root)", "expected an object");
  const json& schema = Require(doc, "schema", "");
  if (!schema.is_string() || schema.get<std::string>() != kScenarioSchema) {
    Fail("schema", "expected \"" + std::string(kScenarioSchema) + "\"");
  }
  const int n = Integer(Require(doc, "agents", ""), "agents");
  if (n < 1 || n > kMaxAgents) {
    Fail("agents", "must be in 1.." + std::to_string(kMaxAgents));
  }
  Scenario s;
  s.agents = AgentSet(n);
  s.rule = RuleFromJson(Require(doc, "rule", ""), s.agents);
  if (doc.contains("endowments")) {
    const json& list = doc.at("endowments");
    if (!list.is_array()) Fail("endowments", "expected an array");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string at = "endowments[" + std::to_string(k) + "]";
      const json& members = Require(list[k], "coalition", at + ".");
      Coalition c;
      try {
        if (members.is_string()) {
          c = Coalition::Parse(members.get<std::string>());
        } else if (members.is_array()) {
          std::vector<int> ids;
          for (const json& m : members) ids.push_back(Integer(m, at + ".coalition"));
          c = Coalition::FromMembers(ids);
        } else {
          Fail(at + ".coalition", "expected a member list");
        }
      } catch (const ScenarioError&) {
        throw;
      } catch (const InvalidInput& e) {
        Fail(at + ".coalition", e.what());
      }
      if (c.empty()) Fail(at + ".coalition", "empty coalition");
      if (!c.IsSubsetOf(Coalition::All(s.agents))) {
        Fail(at + ".coalition", "agent outside 1.." + std::to_string(n));
      }
      if (s.endowments.Has(c)) Fail(at + ".coalition", "listed twice");
      const double e =
          Number(Require(list[k], "endowment", at + "."), at + ".endowment");
      if (!std::isfinite(e) || e < 0.0) {
        Fail(at + ".endowment", "must be finite and nonnegative");
      }
      s.endowments.Set(c, e);
    }
  }
  if (doc.contains("options")) {
    const json& o = doc.at("options");
    if (!o.is_object()) Fail("options", "expected an object");
    if (o.contains("epsilon")) {
      s.options.epsilon = Number(o.at("epsilon"), "options.epsilon");
      if (!(s.options.epsilon >= 0.0) || std::isinf(s.options.epsilon)) {
        Fail("options.epsilon", "must be finite and nonnegative");
      }
    }
    if (o.contains("cap")) s.options.cap = Integer(o.at("cap"), "options.cap");
    if (o.contains("seed")) {
      if (!o.at("seed").is_number_unsigned()) {
        Fail("options.seed", "expected a nonnegative integer");
      }
      s.options.seed = o.at("seed").get<std::uint64_t>();
    }
    if (o.contains("samples")) {
      s.options.samples = Integer(o.at("samples"), "options.samples");
      if (s.options.samples < 1) Fail("options.samples", "must be >= 1");
    }
  }
  return s;
}

Scenario LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return ParseScenario(buf.str());
  } catch (const ScenarioError& e) {
    throw ScenarioError(path + ": " + e.what());
  }
}

std::string SerializeScenario(const Scenario& s) {
  ordered_json j;
  j["schema"] = kScenarioSchema;
  j["agents"] = s.agents.size();
  j["rule"] = RuleJson(s.rule);
  std::vector<std::pair<Coalition, double>> entries(s.endowments.entries().begin(),
                                                    s.endowments.entries().end());
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return CanonicalLess(a.first, b.first);
  });
  ordered_json list = ordered_json::array();
  for (const auto& [c, e] : entries) {
    list.push_back({{"coalition", c.Members()}, {"endowment", e}});
  }
  j["endowments"] = list;
  j["options"] = {{"epsilon", s.options.epsilon},
                  {"cap", s.options.cap},
                  {"seed", s.options.seed},
                  {"samples", s.options.samples}};
  return j.dump(2) + "\n";
}

std::string PayoffTableReport(const Scenario& scenario,
                              const PayoffTable& table) {
  ordered_json j = ScenarioHeader(scenario, "payoff-table");
  ordered_json rows = ordered_json::array();
  for (Coalition c : CanonicalCoalitions(table.agents())) {
    rows.push_back({{"coalition", CoalitionJson(c)},
                    {"endowment", table.Endowment(c)},
                    {"payoffs", table.At(c).payoffs}});
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::string StructureReport(const Scenario& scenario,
                            const StructureAnalysis& a) {
  ordered_json j = ScenarioHeader(scenario, "structure");
  j["pairwise_alignment"] = a.pairwise_violation
                                ? ordered_json{{"holds", false},
                                               {"violation",
                                                ViolationJson(*a.pairwise_violation)}}
                                : ordered_json{{"holds", true}};
  j["weak_pairwise_alignment"] =
      a.weak_pairwise_violation
          ? ordered_json{{"holds", false},
                         {"violation", ViolationJson(*a.weak_pairwise_violation)}}
          : ordered_json{{"holds", true}};
  ordered_json cr{{"holds", a.common_ranking.holds}};
  if (a.common_ranking.holds) {
    ordered_json ranks = ordered_json::array();
    for (const auto& [c, r] : a.common_ranking.ranking) {
      ranks.push_back({{"coalition", CoalitionJson(c)}, {"rank", r}});
    }
    cr["ranking"] = ranks;
  } else {
    ordered_json cyc = ordered_json::array();
    for (Coalition c : a.common_ranking.cycle) cyc.push_back(CoalitionJson(c));
    cr["cycle"] = cyc;
  }
  j["common_ranking"] = cr;
  j["ring"] = a.ring ? RingJson(*a.ring) : ordered_json(nullptr);
  j["non_circular"] = a.non_circular;
  j["top_coalition_of_all"] =
      a.top_of_all ? ordered_json(CoalitionJson(*a.top_of_all)) : ordered_json(nullptr);
  j["top_coalition_property"] = a.top_coalition_property;
  return j.dump(2) + "\n";
}

std::string CoreReportText(const Scenario& scenario, const CoreReport& report,
                           bool with_certificates) {
  ordered_json j = ScenarioHeader(scenario, "core");
  ordered_json stable = ordered_json::array();
  for (const Partition& p : report.stable) stable.push_back(p.ToString());
  j["stable"] = stable;
  j["core_empty"] = report.empty();
  j["partitions_examined"] = report.examined;
  j["elapsed_seconds"] = report.elapsed_seconds;
  if (with_certificates) {
    ordered_json blocked = ordered_json::array();
    for (const auto& b : report.blocked) {
      blocked.push_back({{"partition", b.partition.ToString()},
                         {"blocking_coalition", CoalitionJson(b.blocker)}});
    }
    j["blocked"] = blocked;
  }
  return j.dump(2) + "\n";
}

std::string AxiomReport(const Scenario& scenario, const SamplingPlan& plan,
                        const std::vector<AxiomVerdict>& verdicts,
                        const Lemma1Report& lemma1) {
  ordered_json j = ScenarioHeader(scenario, "axioms");
  j["plan"] = {{"max_endowment", plan.max_endowment},
               {"samples", plan.samples},
               {"seed", plan.seed},
               {"epsilon", plan.epsilon},
               {"continuity_tolerance", plan.continuity_tolerance},
               {"breakpoints", plan.breakpoints}};
  ordered_json vs = ordered_json::array();
  for (const auto& v : verdicts) vs.push_back(VerdictJson(v));
  j["verdicts"] = vs;
  j["equivalence_check"] = {{"solidarity", lemma1.solidarity.passed},
                 {"monotonicity", lemma1.monotonicity.passed},
                 {"consistency", lemma1.consistency.passed},
                 {"concordant", lemma1.concordant},
                 {"note", lemma1.note}};
  return j.dump(2) + "\n";
}

std::string CampaignReport(const FuzzCampaign& campaign,
                           const CampaignSummary& summary) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["kind"] = "solidarity-campaign";
  j["seed"] = campaign.seed;
  j["instances"] = campaign.instances;
  j["agents"] = {campaign.min_agents, campaign.max_agents};
  j["families"] = campaign.families;
  j["cells"] = {
      {"solidarity_pass_non_circular", summary.cells[1][1]},
      {"solidarity_pass_circular", summary.cells[1][0]},
      {"solidarity_fail_non_circular", summary.cells[0][1]},
      {"solidarity_fail_circular", summary.cells[0][0]}};
  j["anomalies"] = summary.anomalies;
  j["empty_cores"] = summary.empty_cores;
  j["counterexamples_confirmed"] = summary.counterexamples_confirmed;
  j["counterexamples_failed"] = summary.counterexamples_failed;
  ordered_json dump = ordered_json::array();
  for (const auto& r : summary.records) {
    if (!r.anomaly) continue;
    ordered_json a;
    a["index"] = r.index;
    a["family"] = r.family;
    a["agents"] = r.agents;
    a["rule"] = RuleJson(r.rule);
    ordered_json es = ordered_json::array();
    for (const auto& [c, e] : r.endowments.entries()) {
      es.push_back({{"coalition", c.Members()}, {"endowment", e}});
    }
    a["endowments"] = es;
    if (r.wpa_violation) a["wpa_violation"] = ViolationJson(*r.wpa_violation);
    if (r.ring) a["ring"] = RingJson(*r.ring);
    dump.push_back(a);
  }
  j["anomaly_records"] = dump;
  return j.dump(2) + "\n";
}

}  // namespace coalition
