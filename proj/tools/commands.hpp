// Copyright 2026 The QuBan Authors. All Rights Reserved.
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "quban/metrics.hpp"
#include "quban/sim.hpp"

namespace quban::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitValidation = 3;

struct RunOptions {
  std::optional<std::filesystem::path> config_path;
  std::optional<std::string> preset;
  std::optional<std::filesystem::path> out_dir;
  std::optional<int> runs;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> horizon;
  std::optional<std::string> policy;  // ucb | eps_greedy for finite presets
  std::vector<std::string> variants;  // empty = whole suite
  int threads = 0;
};

struct ExperimentPlan {
  std::vector<RunConfig> configs;
  std::filesystem::path out_dir = "quban_out";
};

// "%.17g"; round-trips every double.
std::string FormatDouble(double v);

// Builds the variant list from a JSON experiment document. Throws
// Error(kConfigError) on unknown keys or bad values.
ExperimentPlan PlanFromJson(const nlohmann::json& doc);
// Resolves config file / preset and command-line overrides.
ExperimentPlan MakePlan(const RunOptions& options);

void WriteRunCsv(std::ostream& os, const RunMetrics& metrics);
void WriteAggregateCsv(std::ostream& os, const AggregateCurves& curves);
RunMetrics ReadRunCsv(std::istream& is, const std::string& config_key);
nlohmann::json Summarize(const ExperimentResult& result);

int CmdRun(const RunOptions& options, std::ostream& out, std::ostream& err);
int CmdValidate(bool quick, std::ostream& out, std::ostream& err);
int CmdPlotdata(const std::filesystem::path& in_dir,
                const std::optional<std::filesystem::path>& out_dir,
                std::ostream& out, std::ostream& err);

}  // namespace quban::cli
