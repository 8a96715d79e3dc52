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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "quban/error.hpp"

namespace quban::cli {
namespace {

namespace fs = std::filesystem;

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("quban_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

RunOptions SmallRun(const fs::path& out) {
  RunOptions o;
  o.preset = "setup1";
  o.out_dir = out;
  o.runs = 3;
  o.seed = 42;
  o.horizon = 300;
  o.variants = {"none", "quban_avg_arm_pt"};
  return o;
}

TEST(CliTest, RunWritesDeterministicOutputs) {
  const fs::path a = TempDir("run_a"), b = TempDir("run_b");
  std::ostringstream out, err;
  ASSERT_EQ(CmdRun(SmallRun(a), out, err), kExitOk) << err.str();
  ASSERT_EQ(CmdRun(SmallRun(b), out, err), kExitOk) << err.str();
  for (const char* v : {"none", "quban_avg_arm_pt"}) {
    for (const char* f : {"run_000.csv", "run_001.csv", "run_002.csv", "aggregate.csv"}) {
      const fs::path rel = fs::path(v) / f;
      ASSERT_TRUE(fs::exists(a / rel)) << rel;
      EXPECT_EQ(Slurp(a / rel), Slurp(b / rel)) << rel;
    }
  }
  EXPECT_EQ(Slurp(a / "summary.json"), Slurp(b / "summary.json"));
  EXPECT_EQ(Slurp(a / "none/run_000.csv").substr(0, 71),
            "t,action,reward,reward_hat,bits,cum_bits,regret_realized,regret_pseudo\n");
}

TEST(CliTest, SummaryBitsMatchAggregate) {
  const fs::path dir = TempDir("summary");
  std::ostringstream out, err;
  ASSERT_EQ(CmdRun(SmallRun(dir), out, err), kExitOk);
  const auto summary = nlohmann::json::parse(Slurp(dir / "summary.json"));
  for (const auto& v : summary["variants"]) {
    std::ifstream agg(dir / v["name"].get<std::string>() / "aggregate.csv");
    std::string line, last;
    std::getline(agg, line);
    EXPECT_EQ(line, "t,regret_mean,regret_std,bits_mean,avg_bits_mean");
    while (std::getline(agg, line)) last = line;
    const std::string avg = last.substr(last.rfind(',') + 1);
    EXPECT_EQ(std::stod(avg), v["avg_bits"].get<double>());
    std::stringstream ss(last);
    std::string t, rm, rs, bm;
    std::getline(ss, t, ',');
    std::getline(ss, rm, ',');
    std::getline(ss, rs, ',');
    std::getline(ss, bm, ',');
    EXPECT_EQ(std::stod(bm) / std::stod(t), v["avg_bits"].get<double>());
  }
}

TEST(CliTest, ConfigErrors) {
  std::ostringstream out, err;
  RunOptions missing;
  missing.config_path = "/nonexistent/quban.json";
  EXPECT_EQ(CmdRun(missing, out, err), kExitConfig);
  EXPECT_NE(err.str().find("cannot read"), std::string::npos);

  RunOptions bad_preset;
  bad_preset.preset = "setup7";
  EXPECT_EQ(CmdRun(bad_preset, out, err), kExitConfig);

  EXPECT_THROW(PlanFromJson({{"preset", "setup1"}, {"colour", "red"}}), Error);
  EXPECT_THROW(PlanFromJson({{"preset", "setup1"}, {"overrides", {{"env", {{"kk", 3}}}}}}),
               Error);
  EXPECT_THROW(PlanFromJson({{"overrides", {}}}), Error);
}

TEST(CliTest, JsonOverrides) {
  const auto plan = PlanFromJson({{"preset", "setup2"},
                                  {"output_dir", "x"},
                                  {"overrides",
                                   {{"horizon", 50},
                                    {"runs", 2},
                                    {"seed", 9},
                                    {"env", {{"k", 10}}},
                                    {"policy", {{"kind", "eps_greedy"}}}}}});
  ASSERT_EQ(plan.configs.size(), 6u);
  EXPECT_EQ(plan.out_dir, "x");
  for (const auto& c : plan.configs) {
    EXPECT_EQ(c.horizon, 50);
    EXPECT_EQ(c.num_runs, 2);
    EXPECT_EQ(c.seed, 9u);
    EXPECT_EQ(c.env.k, 10u);
    EXPECT_EQ(c.policy.kind, PolicyKind::kEpsGreedy);
  }
  EXPECT_DOUBLE_EQ(plan.configs[3].policy.sigma_q, 200.0);  // sq1 keeps its sigma_q

  const auto custom = PlanFromJson(
      {{"preset", "setup3"}, {"overrides", {{"quantizer", {{"kind", "quban"}, {"epsilon", 0.5}}}}}});
  ASSERT_EQ(custom.configs.size(), 1u);
  EXPECT_EQ(custom.configs[0].quantizer.estimator, EstimatorKind::kContextual);
  EXPECT_EQ(custom.configs[0].quantizer.epsilon, 0.5);

  const auto appg = PlanFromJson({{"preset", "appG"}});
  EXPECT_EQ(*appg.configs[0].env.clip, 1.0);
  EXPECT_EQ(*appg.configs[2].env.clip, 100.0);
}

TEST(CliTest, PlotdataMatchesAggregate) {
  const fs::path dir = TempDir("plot");
  std::ostringstream out, err;
  ASSERT_EQ(CmdRun(SmallRun(dir), out, err), kExitOk);
  ASSERT_EQ(CmdPlotdata(dir, std::nullopt, out, err), kExitOk) << err.str();
  const fs::path pd = dir / "plotdata";
  std::ifstream per_iter(pd / "quban_avg_arm_pt_regret_per_iter_vs_bits.csv");
  std::string header;
  std::getline(per_iter, header);
  EXPECT_EQ(header, "cum_bits,regret_per_iter");

  // regret-vs-t must agree with the aggregate written by `run`.
  std::ifstream agg(dir / "none/aggregate.csv"), reg(pd / "none_regret_vs_t.csv");
  std::string a, r;
  std::getline(agg, a);
  std::getline(reg, r);
  EXPECT_EQ(r, "t,regret_mean,regret_std");
  int rows = 0;
  while (std::getline(agg, a) && std::getline(reg, r)) {
    const auto cut = [](const std::string& s, int fields) {
      std::size_t pos = 0;
      for (int i = 0; i < fields; ++i) pos = s.find(',', pos) + 1;
      return s.substr(0, pos - 1);
    };
    EXPECT_EQ(cut(a, 3), r);
    ++rows;
  }
  EXPECT_EQ(rows, 300);
  EXPECT_TRUE(fs::exists(pd / "none_avg_bits_vs_t.csv"));
}

TEST(CliTest, PlotdataNeedsInput) {
  std::ostringstream out, err;
  EXPECT_EQ(CmdPlotdata(TempDir("empty"), std::nullopt, out, err), kExitIo);
  EXPECT_EQ(CmdPlotdata("/nonexistent/quban", std::nullopt, out, err), kExitIo);
}

TEST(CliTest, ValidateQuick) {
  std::ostringstream out, err;
  EXPECT_EQ(CmdValidate(true, out, err), kExitOk) << out.str();
  std::istringstream lines(out.str());
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    std::istringstream ls(line);
    std::string name, status;
    double stat, tol;
    ls >> name >> status >> stat >> tol;
    EXPECT_FALSE(ls.fail()) << line;
    EXPECT_EQ(status, "PASS");
    ++n;
  }
  EXPECT_EQ(n, 8);
}

}  // namespace
}  // namespace quban::cli
