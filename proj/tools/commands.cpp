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

#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "quban/analysis.hpp"
#include "quban/error.hpp"
#include "quban/presets.hpp"

namespace quban::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void ConfigFail(const std::string& msg) {
  throw Error(ErrorCode::kConfigError, msg);
}

[[noreturn]] void IoFail(const std::string& msg) {
  throw Error(ErrorCode::kIoError, msg);
}

void RejectUnknown(const json& obj, const std::set<std::string>& allowed,
                   const std::string& where) {
  if (!obj.is_object()) ConfigFail(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) ConfigFail("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void Take(const json& obj, const char* key, T& dst) {
  if (!obj.contains(key)) return;
  try {
    dst = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    ConfigFail(std::string("bad value for '") + key + "': " + e.what());
  }
}

template <typename T>
void Take(const json& obj, const char* key, std::optional<T>& dst) {
  if (!obj.contains(key)) return;
  if (obj.at(key).is_null()) {
    dst.reset();
    return;
  }
  T v{};
  Take(obj, key, v);
  dst = v;
}

void ApplyEnv(const json& obj, EnvSpec& env) {
  RejectUnknown(obj,
                {"k", "mean_mean", "mean_stddev", "reward_variance", "clip", "dim",
                 "actions_per_step", "action_radius", "theta_norm"},
                "overrides.env");
  Take(obj, "k", env.k);
  Take(obj, "mean_mean", env.mean_mean);
  Take(obj, "mean_stddev", env.mean_stddev);
  Take(obj, "reward_variance", env.reward_variance);
  Take(obj, "clip", env.clip);
  Take(obj, "dim", env.dim);
  Take(obj, "actions_per_step", env.actions_per_step);
  Take(obj, "action_radius", env.action_radius);
  Take(obj, "theta_norm", env.theta_norm);
}

void ApplyPolicy(const json& obj, PolicySpec& policy) {
  RejectUnknown(obj, {"kind", "sigma_q", "eps_c", "delta_min", "ridge_lambda"},
                "overrides.policy");
  if (obj.contains("kind")) {
    std::string kind;
    Take(obj, "kind", kind);
    policy.kind = ParsePolicyKind(kind);
  }
  Take(obj, "sigma_q", policy.sigma_q);
  Take(obj, "eps_c", policy.eps_c);
  Take(obj, "delta_min", policy.delta_min);
  Take(obj, "ridge_lambda", policy.ridge_lambda);
}

// A quantizer override replaces the preset's suite by a single variant.
RunConfig CustomQuantizer(const json& obj, const EnvSpec& env, PolicyKind policy) {
  RejectUnknown(obj,
                {"kind", "sq_bits", "sq_lo", "sq_hi", "epsilon", "sigma",
                 "estimator", "guard", "guard_bound"},
                "overrides.quantizer");
  std::string kind = "quban";
  Take(obj, "kind", kind);
  RunConfig config;
  switch (ParseQuantizerKind(kind)) {
    case QuantizerKind::kNone:
      config = UnquantizedVariant(env, policy);
      break;
    case QuantizerKind::kSq: {
      int bits = 1;
      double lo = env.kind == EnvKind::kLinear ? -10.0 : -100.0;
      double hi = -lo;
      Take(obj, "sq_bits", bits);
      Take(obj, "sq_lo", lo);
      Take(obj, "sq_hi", hi);
      if (bits < 1 || bits > 24 || !(lo < hi)) ConfigFail("bad sq parameters");
      config = SqVariant(env, policy, bits, lo, hi);
      break;
    }
    case QuantizerKind::kQuban: {
      std::string estimator =
          env.kind == EnvKind::kLinear ? "contextual" : "avg_arm_pt";
      Take(obj, "estimator", estimator);
      config = QubanVariant(env, policy, ParseEstimatorKind(estimator));
      Take(obj, "epsilon", config.quantizer.epsilon);
      Take(obj, "sigma", config.quantizer.sigma);
      Take(obj, "guard", config.quantizer.guard);
      Take(obj, "guard_bound", config.quantizer.guard_bound);
      break;
    }
  }
  return config;
}

PolicyKind FinitePolicy(const std::optional<std::string>& name) {
  return name ? ParsePolicyKind(*name) : PolicyKind::kUcb;
}

void WriteFile(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) IoFail("cannot open " + path.string() + " for writing");
  os << content;
  if (!os) IoFail("write failed: " + path.string());
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

const char* kRunHeader =
    "t,action,reward,reward_hat,bits,cum_bits,regret_realized,regret_pseudo";

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ExperimentPlan PlanFromJson(const json& doc) {
  RejectUnknown(doc, {"preset", "overrides", "output_dir"}, "config");
  if (!doc.contains("preset")) ConfigFail("config needs a 'preset'");
  std::string preset;
  Take(doc, "preset", preset);
  ExperimentPlan plan;
  if (doc.contains("output_dir")) {
    std::string dir;
    Take(doc, "output_dir", dir);
    plan.out_dir = dir;
  }
  const json overrides = doc.value("overrides", json::object());
  RejectUnknown(overrides,
                {"env", "policy", "quantizer", "horizon", "runs", "seed"},
                "overrides");

  EnvSpec env = PresetEnvSpec(preset);
  if (overrides.contains("env")) ApplyEnv(overrides.at("env"), env);

  PolicySpec policy;
  policy.kind = env.kind == EnvKind::kLinear ? PolicyKind::kLinUcb : PolicyKind::kUcb;
  const json policy_obj = overrides.value("policy", json::object());
  ApplyPolicy(policy_obj, policy);

  if (overrides.contains("quantizer")) {
    plan.configs.push_back(CustomQuantizer(overrides.at("quantizer"), env, policy.kind));
    plan.configs.back().name = "custom";
  } else {
    plan.configs = PresetSuite(preset, policy.kind);
  }
  for (auto& config : plan.configs) {
    // appG varies the clip per variant; keep that unless overridden.
    const auto clip = config.env.clip;
    config.env = env;
    if (!(overrides.contains("env") && overrides.at("env").contains("clip")) &&
        preset == "appG" && !overrides.contains("quantizer")) {
      config.env.clip = clip;
    }
    const double suite_sigma = config.policy.sigma_q;
    ApplyPolicy(policy_obj, config.policy);
    if (!policy_obj.contains("sigma_q")) config.policy.sigma_q = suite_sigma;
    Take(overrides, "horizon", config.horizon);
    Take(overrides, "runs", config.num_runs);
    Take(overrides, "seed", config.seed);
  }
  return plan;
}

ExperimentPlan MakePlan(const RunOptions& options) {
  ExperimentPlan plan;
  if (options.config_path) {
    std::ifstream is(*options.config_path);
    if (!is) ConfigFail("cannot read config file " + options.config_path->string());
    json doc;
    try {
      doc = json::parse(is);
    } catch (const json::exception& e) {
      ConfigFail(std::string("invalid JSON: ") + e.what());
    }
    plan = PlanFromJson(doc);
  } else if (options.preset) {
    json doc = {{"preset", *options.preset}};
    if (options.policy) doc["overrides"]["policy"]["kind"] = *options.policy;
    plan = PlanFromJson(doc);
  } else {
    ConfigFail("need --config or --preset");
  }
  if (options.config_path && options.policy) {
    const PolicyKind kind = FinitePolicy(options.policy);
    for (auto& c : plan.configs) c.policy.kind = kind;
  }
  if (options.out_dir) plan.out_dir = *options.out_dir;
  for (auto& config : plan.configs) {
    if (options.runs) config.num_runs = *options.runs;
    if (options.seed) config.seed = *options.seed;
    if (options.horizon) config.horizon = *options.horizon;
  }
  if (!options.variants.empty()) {
    std::vector<RunConfig> kept;
    for (const auto& name : options.variants) {
      auto it = std::find_if(plan.configs.begin(), plan.configs.end(),
                             [&](const RunConfig& c) { return c.name == name; });
      if (it == plan.configs.end()) ConfigFail("no variant named " + name);
      kept.push_back(*it);
    }
    plan.configs = std::move(kept);
  }
  for (const auto& config : plan.configs) config.Validate();
  return plan;
}

void WriteRunCsv(std::ostream& os, const RunMetrics& metrics) {
  os << kRunHeader << '\n';
  for (const StepRecord& s : metrics.steps()) {
    os << s.t << ',' << s.action << ',' << FormatDouble(s.reward) << ','
       << FormatDouble(s.reward_hat) << ',' << s.bits << ',' << s.cum_bits << ','
       << FormatDouble(s.regret_realized) << ',' << FormatDouble(s.regret_pseudo)
       << '\n';
  }
}

void WriteAggregateCsv(std::ostream& os, const AggregateCurves& curves) {
  os << "t,regret_mean,regret_std,bits_mean,avg_bits_mean\n";
  for (std::size_t i = 0; i < curves.t.size(); ++i) {
    os << curves.t[i] << ',' << FormatDouble(curves.regret_mean[i]) << ','
       << FormatDouble(curves.regret_std[i]) << ',' << FormatDouble(curves.bits_mean[i])
       << ',' << FormatDouble(curves.avg_bits_mean[i]) << '\n';
  }
}

RunMetrics ReadRunCsv(std::istream& is, const std::string& config_key) {
  std::string line;
  if (!std::getline(is, line) || line != kRunHeader) IoFail("bad run CSV header");
  RunMetrics metrics(config_key);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = SplitCsvLine(line);
    if (f.size() != 8) IoFail("bad run CSV row: " + line);
    try {
      StepRecord s;
      s.t = std::stoll(f[0]);
      s.action = static_cast<std::size_t>(std::stoull(f[1]));
      s.reward = std::stod(f[2]);
      s.reward_hat = std::stod(f[3]);
      s.bits = std::stoi(f[4]);
      s.cum_bits = std::stoll(f[5]);
      s.regret_realized = std::stod(f[6]);
      s.regret_pseudo = std::stod(f[7]);
      metrics.Append(s);
    } catch (const std::logic_error&) {
      IoFail("bad run CSV row: " + line);
    }
  }
  if (metrics.horizon() == 0) IoFail("run CSV has no rows");
  return metrics;
}

json Summarize(const ExperimentResult& result) {
  const auto& agg = result.aggregate;
  const auto& c = result.config;
  const double steps = static_cast<double>(agg.t.size()) * static_cast<double>(agg.num_runs);
  json j = {
      {"name", c.name},
      {"preset", c.env.preset},
      {"policy", PolicyName(c.policy.kind)},
      {"quantizer", QuantizerName(c.quantizer.kind)},
      {"horizon", c.horizon},
      {"runs", c.num_runs},
      {"seed", c.seed},
      {"sigma_q", c.policy.sigma_q},
      {"final_regret_mean", agg.final_regret_mean()},
      {"final_regret_std", agg.final_regret_std()},
      {"final_pseudo_regret_mean", agg.pseudo_regret_mean.back()},
      {"avg_bits", agg.final_avg_bits()},
      {"guard_activations", result.guard_activations},
      {"guard_fraction", static_cast<double>(result.guard_activations) / steps},
  };
  if (c.quantizer.kind == QuantizerKind::kSq) {
    j["sq_bits"] = c.quantizer.sq_bits;
    j["sq_range"] = {c.quantizer.sq_lo, c.quantizer.sq_hi};
  }
  if (c.quantizer.kind == QuantizerKind::kQuban) {
    j["estimator"] = EstimatorName(c.quantizer.estimator);
    j["epsilon"] = c.quantizer.epsilon;
  }
  if (c.env.clip) j["clip"] = *c.env.clip;
  return j;
}

int CmdRun(const RunOptions& options, std::ostream& out, std::ostream& err) {
  ExperimentPlan plan;
  try {
    plan = MakePlan(options);
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    std::error_code ec;
    fs::create_directories(plan.out_dir, ec);
    if (ec) IoFail("cannot create " + plan.out_dir.string() + ": " + ec.message());
    json summary = {{"variants", json::array()}};
    for (const RunConfig& config : plan.configs) {
      const ExperimentResult result = RunExperiment(config, options.threads);
      const fs::path dir = plan.out_dir / config.name;
      fs::create_directories(dir, ec);
      if (ec) IoFail("cannot create " + dir.string() + ": " + ec.message());
      for (std::size_t i = 0; i < result.runs.size(); ++i) {
        std::ostringstream os;
        WriteRunCsv(os, result.runs[i].metrics);
        char name[32];
        std::snprintf(name, sizeof name, "run_%03zu.csv", i);
        WriteFile(dir / name, os.str());
      }
      std::ostringstream agg;
      WriteAggregateCsv(agg, result.aggregate);
      WriteFile(dir / "aggregate.csv", agg.str());
      json s = Summarize(result);
      summary["variants"].push_back(s);
      out << config.name << ": final regret " << FormatDouble(s["final_regret_mean"])
          << " +- " << FormatDouble(s["final_regret_std"]) << ", avg bits "
          << FormatDouble(s["avg_bits"]) << '\n';
    }
    WriteFile(plan.out_dir / "summary.json", summary.dump(2) + "\n");
  } catch (const Error& e) {
    err << (e.code() == ErrorCode::kIoError ? "I/O error: " : "error: ") << e.what()
        << '\n';
    return e.code() == ErrorCode::kIoError ? kExitIo : kExitConfig;
  } catch (const fs::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

int CmdValidate(bool quick, std::ostream& out, std::ostream& /*err*/) {
  const ValidationOptions opt = quick ? ValidationOptions::Quick() : ValidationOptions{};
  const ValidationReport report = CodecValidationSuite(opt);
  for (const CheckResult& c : report.checks) {
    out << c.name << ' ' << (c.passed ? "PASS" : "FAIL") << ' '
        << FormatDouble(c.statistic) << ' ' << FormatDouble(c.tolerance);
    if (!c.detail.empty()) out << "  # " << c.detail;
    out << '\n';
  }
  return report.all_passed() ? kExitOk : kExitValidation;
}

int CmdPlotdata(const fs::path& in_dir, const std::optional<fs::path>& out_dir,
                std::ostream& out, std::ostream& err) {
  try {
    if (!fs::is_directory(in_dir)) IoFail("no such directory: " + in_dir.string());
    // Variant directories are those holding run_*.csv; the input may itself
    // be one.
    std::vector<fs::path> variants;
    auto has_runs = [](const fs::path& dir) {
      for (const auto& e : fs::directory_iterator(dir)) {
        const auto name = e.path().filename().string();
        if (name.starts_with("run_") && name.ends_with(".csv")) return true;
      }
      return false;
    };
    if (has_runs(in_dir)) {
      variants.push_back(in_dir);
    } else {
      for (const auto& e : fs::directory_iterator(in_dir)) {
        if (e.is_directory() && has_runs(e.path())) variants.push_back(e.path());
      }
    }
    if (variants.empty()) IoFail("no run CSVs under " + in_dir.string());
    std::sort(variants.begin(), variants.end());

    const fs::path dest = out_dir.value_or(in_dir / "plotdata");
    fs::create_directories(dest);
    for (const fs::path& dir : variants) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(dir)) {
        const auto name = e.path().filename().string();
        if (name.starts_with("run_") && name.ends_with(".csv")) files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      const std::string variant = dir.filename().string();
      std::vector<RunMetrics> runs;
      for (const auto& f : files) {
        std::ifstream is(f);
        if (!is) IoFail("cannot read " + f.string());
        runs.push_back(ReadRunCsv(is, variant));
      }
      const AggregateCurves curves = MergeMetrics(runs);
      std::ostringstream regret, per_iter, bits;
      regret << "t,regret_mean,regret_std\n";
      per_iter << "cum_bits,regret_per_iter\n";
      bits << "t,avg_bits_mean\n";
      for (std::size_t i = 0; i < curves.t.size(); ++i) {
        const double t = static_cast<double>(curves.t[i]);
        regret << curves.t[i] << ',' << FormatDouble(curves.regret_mean[i]) << ','
               << FormatDouble(curves.regret_std[i]) << '\n';
        per_iter << FormatDouble(curves.bits_mean[i]) << ','
                 << FormatDouble(curves.regret_mean[i] / t) << '\n';
        bits << curves.t[i] << ',' << FormatDouble(curves.avg_bits_mean[i]) << '\n';
      }
      WriteFile(dest / (variant + "_regret_vs_t.csv"), regret.str());
      WriteFile(dest / (variant + "_regret_per_iter_vs_bits.csv"), per_iter.str());
      WriteFile(dest / (variant + "_avg_bits_vs_t.csv"), bits.str());
      out << variant << ": " << runs.size() << " runs -> " << dest.string() << '\n';
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kIoError ? kExitIo : kExitConfig;
  } catch (const fs::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace quban::cli
