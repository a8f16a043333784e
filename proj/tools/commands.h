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

#ifndef COALITION_TOOLS_COMMANDS_H_
#define COALITION_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "coalition/io.h"

namespace coalition::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitPathology = 1,
  kExitInputError = 2,
  kExitInvariantBreach = 3,
};

enum class Format { kTable, kStructured };

// Flags shared by the scenario commands. Unset values fall back to the
// scenario's own options.
struct CommandOptions {
  std::optional<double> epsilon;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<int> cap;
  std::string dot_path;
  Format format = Format::kTable;
  bool expect_nonempty = false;
  bool certificates = false;
};

// Applies flag overrides to the scenario options.
Scenario WithOverrides(Scenario scenario, const CommandOptions& options);

int CmdEval(const Scenario& scenario, const CommandOptions& options,
            std::ostream& out);
int CmdAnalyze(const Scenario& scenario, const CommandOptions& options,
               std::ostream& out);
int CmdCore(const Scenario& scenario, const CommandOptions& options,
            std::ostream& out);
int CmdAxioms(const Scenario& scenario, const CommandOptions& options,
              std::ostream& out);
// `which` is example1, example2, example3 or all.
int CmdRepro(const std::string& which, const CommandOptions& options,
             std::ostream& out);
int CmdFuzz(const FuzzCampaign& campaign, const CommandOptions& options,
            std::ostream& out);

// Full command line entry point; maps exceptions to exit codes.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace coalition::cli

#endif  // COALITION_TOOLS_COMMANDS_H_
