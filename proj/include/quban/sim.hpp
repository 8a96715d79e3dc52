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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quban/bandits.hpp"
#include "quban/bitstring.hpp"
#include "quban/envs.hpp"
#include "quban/estimators.hpp"
#include "quban/metrics.hpp"

namespace quban {

enum class QuantizerKind { kNone, kSq, kQuban };

QuantizerKind ParseQuantizerKind(std::string_view name);
std::string_view QuantizerName(QuantizerKind kind);

// Bits charged for an unquantized reward.
inline constexpr int kUnquantizedBits = 32;

struct QuantizerSpec {
  QuantizerKind kind = QuantizerKind::kNone;
  // r-bit SQ baseline: 2^bits levels on [lo, hi]; rewards are clipped into
  // the range before encoding.
  int sq_bits = 1;
  double sq_lo = -100.0;
  double sq_hi = 100.0;
  // QuBan
  double epsilon = 1.0;
  std::optional<double> sigma;  // defaults to the environment's reward stddev
  EstimatorKind estimator = EstimatorKind::kAvgArmPt;
  // Replace frames longer than the instantaneous bound by one random bit.
  bool guard = false;
  std::optional<int> guard_bound;  // overrides InstantaneousBound(n)
};

struct RunConfig {
  std::string name = "run";
  EnvSpec env = PresetEnvSpec("setup1");
  PolicySpec policy;
  QuantizerSpec quantizer;
  std::int64_t horizon = 10000;
  int num_runs = 10;
  std::uint64_t seed = 0;
  bool record_transcript = false;

  // Throws kConfigError.
  void Validate() const;
  // Fingerprint of everything except seed and run count.
  std::string Key() const;
};

// What crossed the uplink at one step, and what the agent was given.
struct TranscriptEntry {
  std::int64_t t = 0;
  std::size_t action = 0;
  double reward = 0.0;
  double mu_hat = 0.0;
  double m = 0.0;
  BitString frame;
  double reward_hat = 0.0;
  int bits = 0;
  bool guarded = false;
};

struct RunResult {
  std::uint64_t seed = 0;
  RunMetrics metrics;
  std::vector<TranscriptEntry> transcript;
  std::int64_t guard_activations = 0;
  int max_bits = 0;
};

struct ExperimentResult {
  RunConfig config;
  std::vector<RunResult> runs;
  AggregateCurves aggregate;
  std::int64_t guard_activations = 0;
};

// Seed of run `index` of an experiment with master seed `master`.
std::uint64_t RunSeed(std::uint64_t master, std::uint64_t index);

// One learner/agent interaction of `config.horizon` steps. The environment
// instance, its reward noise, the policy, the codec and X_t each use their
// own substream of `seed`.
RunResult RunOnce(const RunConfig& config, std::uint64_t seed);

// `config.num_runs` independent runs, merged. threads <= 0 picks
// QUBAN_THREADS or the hardware concurrency.
ExperimentResult RunExperiment(const RunConfig& config, int threads = 0);

int DefaultThreadCount();

}  // namespace quban
