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

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace quban::cli;
  CLI::App app{"QuBan reward quantization for bandits: simulations and checks"};
  app.require_subcommand(1);

  RunOptions run;
  std::string config, preset, out;
  std::string variants;
  auto* cmd_run = app.add_subcommand("run", "Run a preset or config file");
  auto* config_opt = cmd_run->add_option("--config", config, "JSON experiment file");
  auto* preset_opt =
      cmd_run->add_option("--preset", preset, "setup1 | setup2 | setup3 | appG");
  config_opt->excludes(preset_opt);
  auto* out_opt = cmd_run->add_option("--out", out, "Output directory");
  cmd_run->add_option("--runs", run.runs, "Number of runs");
  cmd_run->add_option("--seed", run.seed, "Master seed");
  cmd_run->add_option("--horizon", run.horizon, "Steps per run (default 10000)");
  cmd_run->add_option("--policy", run.policy, "ucb | eps_greedy (finite-armed presets)");
  cmd_run->add_option("--variants", variants, "Comma-separated subset of the suite");
  cmd_run->add_option("--threads", run.threads, "Worker threads (default QUBAN_THREADS)");

  bool quick = false;
  auto* cmd_validate = app.add_subcommand("validate", "Run the codec property battery");
  cmd_validate->add_flag("--quick", quick, "Monte-Carlo with N = 1e4");

  std::string in_dir, plot_out;
  auto* cmd_plot = app.add_subcommand("plotdata", "Emit plot datasets from run output");
  cmd_plot->add_option("--in", in_dir, "Directory written by `run`")->required();
  auto* plot_out_opt = cmd_plot->add_option("--out", plot_out, "Destination directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (cmd_run->parsed()) {
    if (*config_opt) run.config_path = config;
    if (*preset_opt) run.preset = preset;
    if (*out_opt) run.out_dir = out;
    std::stringstream ss(variants);
    for (std::string v; std::getline(ss, v, ',');) {
      if (!v.empty()) run.variants.push_back(v);
    }
    return CmdRun(run, std::cout, std::cerr);
  }
  if (cmd_validate->parsed()) return CmdValidate(quick, std::cout, std::cerr);
  std::optional<std::filesystem::path> dest;
  if (*plot_out_opt) dest = plot_out;
  return CmdPlotdata(in_dir, dest, std::cout, std::cerr);
}
