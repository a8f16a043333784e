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

// Published tables of the three worked examples, stored as plain data and
// compared cell by cell against freshly computed results.

#ifndef COALITION_TOOLS_GOLDENS_H_
#define COALITION_TOOLS_GOLDENS_H_

#include <optional>
#include <string>
#include <vector>

#include "coalition/fuzz.h"

namespace coalition::cli {

struct GoldenRow {
  std::string coalition;  // "134"
  double endowment = 0.0;
  std::vector<double> payoffs;
};

// One column of a published preference table: tiers best first, each tier
// written "12~13~14".
struct GoldenOrder {
  int agent = 0;
  std::vector<std::string> tiers;
};

// A published tier that should have been merged with the tier below it.
struct GoldenErratum {
  int agent = 0;
  int tier = 0;  // 0-based index of the upper tier
  std::string note;
};

struct GoldenViolation {
  std::string preferred;
  std::string other;
  int agent = 0;
  int other_agent = 0;
};

struct GoldenConsistency {
  std::string coalition;
  std::string subcoalition;
  double endowment = 0.0;
  double restricted_total = 0.0;
  std::vector<double> restricted_payoffs;  // F restricted to the subcoalition
  std::vector<double> resolved_payoffs;    // F on the subcoalition
};

struct GoldenCase {
  std::string name;
  PublishedInstance instance;
  // 0 means bit-exact comparison.
  double tolerance = 0.0;
  // Preference epsilon used when inducing the problem.
  double epsilon = 0.0;

  std::vector<GoldenRow> endowments;  // endowment table, zero rows omitted
  std::vector<GoldenRow> rows;        // allocation table
  std::vector<GoldenOrder> orders;
  std::vector<GoldenErratum> errata;

  std::optional<GoldenViolation> wpa_violation;  // nullopt: WPA holds
  std::optional<std::vector<std::string>> ring;  // nullopt: no ring
  std::optional<bool> non_circular;
  std::vector<std::string> stable_includes;
  bool core_empty = false;
  std::optional<GoldenConsistency> consistency;
};

GoldenCase Example1Golden();
GoldenCase Example2Golden();
GoldenCase Example3IntervalGolden();
GoldenCase Example3ProportionalGolden();

// "example1", "example2", "example3" (two cases); empty when unknown.
std::vector<GoldenCase> GoldensFor(const std::string& which);

struct ReproResult {
  std::string name;
  int checks = 0;
  std::vector<std::string> mismatches;
  std::vector<std::string> notes;
  double elapsed_seconds = 0.0;

  bool passed() const { return mismatches.empty(); }
};

ReproResult CompareGolden(const GoldenCase& golden);

}  // namespace coalition::cli

#endif  // COALITION_TOOLS_GOLDENS_H_
