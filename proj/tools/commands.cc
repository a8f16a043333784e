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

#include "commands.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "goldens.h"

namespace coalition::cli {
namespace {

std::string Pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string Braced(Coalition c) { return "{" + c.ToString() + "}"; }

InducedProblem Induce(const Scenario& s) {
  return InducePreferences(MakeRule(s.rule, s.agents), s.endowments, s.agents,
                           s.options.epsilon);
}

void CheckCap(const Scenario& s) {
  if (s.agents.size() > s.options.cap) {
    throw CapExceeded("scenario has " + std::to_string(s.agents.size()) +
                      " agents; enumeration cap is " +
                      std::to_string(s.options.cap) + " (raise with --cap, at most " +
                      std::to_string(kMaxAgents) + ")");
  }
}

}  // namespace

Scenario WithOverrides(Scenario s, const CommandOptions& o) {
  if (o.epsilon) {
    if (!(*o.epsilon >= 0.0)) throw InvalidInput("--epsilon must be >= 0");
    s.options.epsilon = *o.epsilon;
  }
  if (o.seed) s.options.seed = *o.seed;
  if (o.samples) {
    if (*o.samples < 1) throw InvalidInput("--samples must be >= 1");
    s.options.samples = *o.samples;
  }
  if (o.cap) {
    if (*o.cap < 1 || *o.cap > kMaxAgents) {
      throw InvalidInput("--cap must be in 1.." + std::to_string(kMaxAgents));
    }
    s.options.cap = *o.cap;
  }
  return s;
}

int CmdEval(const Scenario& s, const CommandOptions& o, std::ostream& out) {
  const PayoffTable table = PayoffTable::Compute(MakeRule(s.rule, s.agents),
                                                 s.endowments, s.agents);
  if (o.format == Format::kStructured) {
    out << PayoffTableReport(s, table);
    return kExitOk;
  }
  out << "rule " << FamilyTag(s.rule) << ", " << s.agents.size()
      << " agents\n";
  out << Pad("C", 14) << Pad("E_C", 14) << "F(C, E_C)\n";
  for (Coalition c : CanonicalCoalitions(s.agents)) {
    out << Pad(Braced(c), 14) << Pad(FormatNumber(table.Endowment(c)), 14)
        << FormatAllocation(table.At(c)) << "\n";
  }
  return kExitOk;
}

int CmdAnalyze(const Scenario& s, const CommandOptions& o, std::ostream& out) {
  const InducedProblem problem = Induce(s);
  const StructureAnalysis a = AnalyzeStructure(problem);
  if (!o.dot_path.empty()) {
    std::ofstream dot(o.dot_path);
    if (!dot) throw InvalidInput("cannot write DOT file '" + o.dot_path + "'");
    PreferenceDigraph(problem).WriteDot(dot);
  }
  if (o.format == Format::kStructured) {
    out << StructureReport(s, a);
    return kExitOk;
  }
  out << "preferences (best first, ~ marks indifference)\n";
  for (int i = 1; i <= s.agents.size(); ++i) {
    out << "  agent " << i << ":";
    bool first = true;
    for (const auto& tier : problem.OrderFor(i)) {
      out << (first ? " " : " > ");
      first = false;
      for (std::size_t k = 0; k < tier.size(); ++k) {
        out << (k ? "~" : "") << tier[k].ToString();
      }
    }
    out << "\n";
  }
  auto verdict = [&](const char* name,
                     const std::optional<AlignmentViolation>& v) {
    out << name << ": "
        << (v ? "violated " + v->Describe() : std::string("holds")) << "\n";
  };
  verdict("pairwise alignment", a.pairwise_violation);
  verdict("weak pairwise alignment", a.weak_pairwise_violation);
  out << "common ranking: ";
  if (a.common_ranking.holds) {
    out << "holds\n";
  } else {
    out << "fails, cycle";
    for (Coalition c : a.common_ranking.cycle) out << " " << Braced(c);
    out << "\n";
  }
  out << "ring: " << (a.ring ? a.ring->Describe() : "none") << "\n";
  out << "non-circular: " << (a.non_circular ? "true" : "false") << "\n";
  out << "top coalition of N: "
      << (a.top_of_all ? Braced(*a.top_of_all) : "none") << "\n";
  out << "top-coalition property: "
      << (a.top_coalition_property ? "true" : "false") << "\n";
  return kExitOk;
}

int CmdCore(const Scenario& s, const CommandOptions& o, std::ostream& out) {
  CheckCap(s);
  const CoreReport report =
      ComputeCore(Induce(s), {s.options.cap, o.certificates});
  if (o.format == Format::kStructured) {
    out << CoreReportText(s, report, o.certificates);
  } else {
    if (report.empty()) {
      out << "core is empty\n";
    } else {
      out << "stable partitions (" << report.stable.size() << "):\n";
      for (const Partition& p : report.stable) out << "  " << p.ToString() << "\n";
    }
    if (o.certificates) {
      out << "blocked partitions (" << report.blocked.size() << "):\n";
      for (const auto& b : report.blocked) {
        out << "  " << b.partition.ToString() << " blocked by "
            << Braced(b.blocker) << "\n";
      }
    }
    char line[96];
    std::snprintf(line, sizeof(line), "%zu partitions examined in %.3f s\n",
                  report.examined, report.elapsed_seconds);
    out << line;
  }
  return o.expect_nonempty && report.empty() ? kExitPathology : kExitOk;
}

int CmdAxioms(const Scenario& s, const CommandOptions& o, std::ostream& out) {
  const SharingRule rule = MakeRule(s.rule, s.agents);
  SamplingPlan plan = SamplingPlan::ForScenario(
      s.endowments, RuleBreakpoints(s.rule, s.agents), s.options.seed,
      s.options.samples);
  if (s.options.epsilon > 0.0) plan.epsilon = s.options.epsilon;
  const Lemma1Report lemma1 = CheckLemma1Equivalence(rule, s.agents, plan);
  const std::vector<AxiomVerdict> verdicts = {
      lemma1.monotonicity, lemma1.consistency, lemma1.solidarity,
      CheckEndowmentContinuity(rule, s.agents, plan)};
  if (o.format == Format::kStructured) {
    out << AxiomReport(s, plan, verdicts, lemma1);
    return kExitOk;
  }
  for (const AxiomVerdict& v : verdicts) {
    out << Pad(AxiomTag(v.axiom) + ":", 24)
        << (v.passed ? "pass-sampled" : "fail") << " (" << v.samples
        << " samples, seed " << v.seed << ")\n";
    if (v.witness) out << "  witness " << v.witness->Describe() << "\n";
  }
  out << "solidarity vs monotonicity+consistency: " << (lemma1.concordant ? "concordant" : "DISCORDANT");
  if (!lemma1.note.empty()) out << " (" << lemma1.note << ")";
  out << "\n";
  return kExitOk;
}

int CmdRepro(const std::string& which, const CommandOptions&,
             std::ostream& out) {
  std::vector<GoldenCase> cases;
  for (const char* name : {"example1", "example2", "example3"}) {
    if (which == "all" || which == name) {
      for (auto& g : GoldensFor(name)) cases.push_back(std::move(g));
    }
  }
  if (cases.empty()) {
    throw InvalidInput("unknown example '" + which +
                       "'; expected example1, example2, example3 or all");
  }
  bool ok = true;
  for (const GoldenCase& g : cases) {
    const ReproResult r = CompareGolden(g);
    char line[160];
    std::snprintf(line, sizeof(line), "%s: %s (%d checks, %.3f s)\n",
                  r.name.c_str(), r.passed() ? "PASS" : "FAIL", r.checks,
                  r.elapsed_seconds);
    out << line;
    for (const auto& n : r.notes) out << "  note: " << n << "\n";
    for (const auto& m : r.mismatches) out << "  - " << m << "\n";
    ok = ok && r.passed();
  }
  return ok ? kExitOk : kExitPathology;
}

int CmdFuzz(const FuzzCampaign& campaign, const CommandOptions& o,
            std::ostream& out) {
  const CampaignSummary summary = RunTheorem1Campaign(campaign);
  if (o.format == Format::kStructured) {
    out << CampaignReport(campaign, summary);
  } else {
    out << campaign.instances << " instances, seed " << campaign.seed << "\n";
    out << "                    non-circular  circular\n";
    out << "solidarity pass     " << Pad(std::to_string(summary.cells[1][1]), 14)
        << summary.cells[1][0] << "\n";
    out << "solidarity fail     " << Pad(std::to_string(summary.cells[0][1]), 14)
        << summary.cells[0][0] << "\n";
    out << "anomalies: " << summary.anomalies << "\n";
    out << "empty cores: " << summary.empty_cores << "\n";
    out << "counterexamples confirmed: " << summary.counterexamples_confirmed
        << ", failed: " << summary.counterexamples_failed << "\n";
    for (const auto& r : summary.records) {
      if (!r.anomaly) continue;
      out << "  anomaly #" << r.index << " " << r.family << " n=" << r.agents;
      if (r.wpa_violation) out << " wpa " << r.wpa_violation->Describe();
      if (r.ring) out << " ring " << r.ring->Describe();
      out << "\n";
    }
  }
  return summary.anomalies == 0 && summary.counterexamples_failed == 0
             ? kExitOk
             : kExitPathology;
}

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Coalition formation analysis for sharing rules"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "coalition 1.0.0");

  CommandOptions opts;
  std::string scenario_path;
  std::string format = "table";
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  int samples = 0;
  int cap = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_scenario) {
    auto* sc = cmd->add_option("--scenario", scenario_path, "Scenario JSON file")
                   ->check(CLI::ExistingFile);
    if (needs_scenario) sc->required();
    cmd->add_option("--epsilon", epsilon, "Indifference tolerance (0 = exact)");
    cmd->add_option("--seed", seed, "Random seed");
    cmd->add_option("--samples", samples, "Axiom samples per check");
    cmd->add_option("--cap", cap, "Partition enumeration cap");
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"table", "structured"}));
  };

  auto* eval = app.add_subcommand("eval", "Print the payoff table");
  add_common(eval, true);
  auto* analyze = app.add_subcommand("analyze", "Alignment, rings, rankings");
  add_common(analyze, true);
  analyze->add_option("--dot", opts.dot_path, "Write the preference digraph");
  auto* core = app.add_subcommand("core", "Enumerate stable partitions");
  add_common(core, true);
  core->add_flag("--expect-nonempty", opts.expect_nonempty,
                 "Exit 1 when the core is empty");
  core->add_flag("--certificates", opts.certificates,
                 "List a blocking coalition for every unstable partition");
  auto* axioms = app.add_subcommand("axioms", "Sample the four axioms");
  add_common(axioms, true);
  auto* repro = app.add_subcommand("repro", "Reproduce the worked examples");
  std::string which = "all";
  repro->add_option("which", which, "example1, example2, example3 or all");

  FuzzCampaign campaign;
  campaign.families = {"equal-division",     "priority-satiation",
                       "interval-ranking",   "claims-proportional",
                       "claims-cea",         "nash-product"};
  auto* fuzz = app.add_subcommand("fuzz", "Run a solidarity/non-circularity campaign");
  add_common(fuzz, false);
  fuzz->add_option("--instances", campaign.instances, "Number of instances");
  fuzz->add_option("--min-agents", campaign.min_agents, "Smallest n");
  fuzz->add_option("--max-agents", campaign.max_agents, "Largest n");
  fuzz->add_option("--families", campaign.families, "Rule families")
      ->delimiter(',');
  fuzz->add_option("--solidarity-samples", campaign.solidarity_samples,
                   "Solidarity samples per instance");
  fuzz->add_flag("--lattice", campaign.analyze_lattice,
                 "Also check common ranking and top coalitions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  auto sub_has = [](CLI::App* cmd, const char* name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  CLI::App* active = app.get_subcommands().front();
  if (sub_has(active, "--epsilon")) opts.epsilon = epsilon;
  if (sub_has(active, "--seed")) opts.seed = seed;
  if (sub_has(active, "--samples")) opts.samples = samples;
  if (sub_has(active, "--cap")) opts.cap = cap;
  opts.format = format == "structured" ? Format::kStructured : Format::kTable;

  try {
    if (active == repro) return CmdRepro(which, opts, out);
    if (active == fuzz) {
      if (opts.seed) campaign.seed = *opts.seed;
      if (opts.epsilon) campaign.epsilon = *opts.epsilon;
      if (opts.cap) campaign.cap = *opts.cap;
      return CmdFuzz(campaign, opts, out);
    }
    const Scenario scenario =
        WithOverrides(LoadScenario(scenario_path), opts);
    if (active == eval) return CmdEval(scenario, opts, out);
    if (active == analyze) return CmdAnalyze(scenario, opts, out);
    if (active == core) return CmdCore(scenario, opts, out);
    return CmdAxioms(scenario, opts, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InvariantBreach& e) {
    err << "internal invariant breach: " << e.what() << "\n";
    return kExitInvariantBreach;
  }
}

}  // namespace coalition::cli
