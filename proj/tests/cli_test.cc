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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "goldens.h"
#include "json.hpp"

namespace coalition::cli {
namespace {

std::string ScenarioPath(const std::string& name) {
  return std::string(COALITION_SCENARIO_DIR) + "/" + name;
}

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "coalition");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome r;
  r.code = Main(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

bool Contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

TEST(CliTest, EvalPrintsExampleOneRows) {
  const Outcome r = Invoke({"eval", "--scenario", ScenarioPath("example1.json")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(Contains(r.out, "134")) << r.out;
  const Outcome s = Invoke({"eval", "--scenario", ScenarioPath("example1.json"),
                        "--format", "structured"});
  EXPECT_EQ(s.code, kExitOk);
  const auto doc = nlohmann::json::parse(s.out);
  EXPECT_EQ(doc["kind"], "payoff-table");
}

TEST(CliTest, AnalyzeReportsPublishedVerdicts) {
  const Outcome r1 = Invoke({"analyze", "--scenario", ScenarioPath("example1.json")});
  EXPECT_EQ(r1.code, kExitOk);
  EXPECT_TRUE(Contains(r1.out, "non-circular: true")) << r1.out;
  const Outcome r2 = Invoke({"analyze", "--scenario", ScenarioPath("example2.json")});
  EXPECT_TRUE(Contains(r2.out, "({123},{12}) agent 1 vs 2")) << r2.out;
  const Outcome r3 = Invoke(
      {"analyze", "--scenario", ScenarioPath("example3_proportional.json")});
  EXPECT_TRUE(Contains(r3.out, "{12}")) << r3.out;
  EXPECT_TRUE(Contains(r3.out, "non-circular: false")) << r3.out;
}

TEST(CliTest, AnalyzeWritesDot) {
  const std::string dot =
      (std::filesystem::temp_directory_path() / "coalition_cli_test.dot")
          .string();
  std::remove(dot.c_str());
  const Outcome r = Invoke({"analyze", "--scenario", ScenarioPath("example2.json"),
                        "--dot", dot});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(dot);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_TRUE(Contains(text.str(), "digraph")) << text.str();
  std::remove(dot.c_str());
}

TEST(CliTest, CoreListsStablePartitions) {
  const Outcome r = Invoke({"core", "--scenario", ScenarioPath("example1.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(Contains(r.out, "{{134},{2}}")) << r.out;
  EXPECT_TRUE(Contains(r.out, "{{1234}}")) << r.out;
  const Outcome c = Invoke({"core", "--scenario", ScenarioPath("example1.json"),
                        "--certificates"});
  EXPECT_EQ(c.code, kExitOk);
  EXPECT_GT(c.out.size(), r.out.size());
}

TEST(CliTest, EmptyCoreIsPathologyOnlyWhenRequested) {
  const std::string path = ScenarioPath("example3_proportional.json");
  const Outcome plain = Invoke({"core", "--scenario", path});
  EXPECT_EQ(plain.code, kExitOk);
  EXPECT_TRUE(Contains(plain.out, "core is empty")) << plain.out;
  EXPECT_EQ(Invoke({"core", "--scenario", path, "--expect-nonempty"}).code,
            kExitPathology);
  EXPECT_EQ(Invoke({"core", "--scenario", ScenarioPath("example1.json"),
                    "--expect-nonempty"})
                .code,
            kExitOk);
}

TEST(CliTest, CapRefusalIsInputError) {
  const Outcome r = Invoke(
      {"core", "--scenario", ScenarioPath("example1.json"), "--cap", "3"});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_FALSE(r.err.empty());
}

TEST(CliTest, AxiomsReportsVerdicts) {
  const Outcome r = Invoke({"axioms", "--scenario", ScenarioPath("example2.json"),
                        "--samples", "200", "--format", "structured"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  bool consistency_failed = false;
  for (const auto& v : doc["verdicts"]) {
    if (v["axiom"] == "consistency" && v["verdict"] == "fail") {
      consistency_failed = true;
    }
  }
  EXPECT_TRUE(consistency_failed) << r.out;
}

TEST(CliTest, ReproPassesAll) {
  for (const char* which : {"example1", "example2", "example3", "all"}) {
    const Outcome r = Invoke({"repro", which});
    EXPECT_EQ(r.code, kExitOk) << which << "\n" << r.out;
    EXPECT_FALSE(Contains(r.out, "FAIL")) << r.out;
  }
}

TEST(CliTest, InputErrors) {
  EXPECT_EQ(Invoke({"eval"}).code, kExitInputError);
  EXPECT_EQ(Invoke({"eval", "--scenario", "/nonexistent.json"}).code,
            kExitInputError);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kExitInputError);
  EXPECT_EQ(Invoke({"repro", "example9"}).code, kExitInputError);

  const std::string bad =
      (std::filesystem::temp_directory_path() / "coalition_bad.json").string();
  {
    std::ofstream out(bad);
    out << R"({"schema": "coalition-scenario/1", "agents": 3,
               "rule": {"family": "lottery"}, "endowments": []})";
  }
  const Outcome r = Invoke({"eval", "--scenario", bad});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_TRUE(Contains(r.err, "rule.family")) << r.err;
  std::remove(bad.c_str());
}

TEST(CliTest, FuzzIsDeterministic) {
  const std::vector<std::string> args = {
      "fuzz", "--instances", "24", "--max-agents", "4", "--seed", "5",
      "--solidarity-samples", "60", "--format", "structured"};
  const Outcome a = Invoke(args);
  const Outcome b = Invoke(args);
  EXPECT_EQ(a.code, kExitOk) << a.out;
  EXPECT_EQ(a.out, b.out);
}

TEST(CliTest, FuzzFlagsNonSolidaryFamilies) {
  const Outcome r = Invoke({"fuzz", "--instances", "6", "--max-agents", "3",
                        "--families", "proportional-ranking",
                        "--solidarity-samples", "200"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
}

TEST(GoldenTest, PerturbedCellIsCaught) {
  for (const GoldenCase& g : GoldensFor("all")) {
    ASSERT_TRUE(CompareGolden(g).passed()) << g.name;
    for (std::size_t row = 0; row < g.rows.size(); ++row) {
      for (std::size_t k = 0; k < g.rows[row].payoffs.size(); ++k) {
        GoldenCase bad = g;
        bad.rows[row].payoffs[k] += 0.25;
        EXPECT_FALSE(CompareGolden(bad).passed())
            << g.name << " row " << row << " cell " << k;
      }
    }
    for (std::size_t row = 0; row < g.endowments.size(); ++row) {
      GoldenCase bad = g;
      bad.endowments[row].endowment += 1;
      EXPECT_FALSE(CompareGolden(bad).passed()) << g.name << " endowment";
    }
  }
}

TEST(GoldenTest, PerturbedVerdictsAreCaught) {
  GoldenCase g1 = Example1Golden();
  g1.stable_includes.push_back("{{1},{2},{3},{4}}");
  EXPECT_FALSE(CompareGolden(g1).passed());

  GoldenCase g2 = Example2Golden();
  ASSERT_TRUE(g2.wpa_violation.has_value());
  std::swap(g2.wpa_violation->agent, g2.wpa_violation->other_agent);
  EXPECT_FALSE(CompareGolden(g2).passed());

  GoldenCase g3 = Example3ProportionalGolden();
  g3.core_empty = false;
  EXPECT_FALSE(CompareGolden(g3).passed());

  GoldenCase g4 = Example1Golden();
  ASSERT_FALSE(g4.orders.empty());
  std::swap(g4.orders[0].tiers.front(), g4.orders[0].tiers.back());
  EXPECT_FALSE(CompareGolden(g4).passed());
}

}  // namespace
}  // namespace coalition::cli
