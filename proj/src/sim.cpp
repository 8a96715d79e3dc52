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

#include "quban/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "quban/codec.hpp"
#include "quban/error.hpp"
#include "quban/sq.hpp"

namespace quban {

namespace {

enum Substream : std::uint64_t {
  kEnvInstance = 0,
  kEnvNoise = 1,
  kPolicy = 2,
  kCodec = 3,
  kXDraw = 4,
  kGuard = 5,
};

std::unique_ptr<Policy> MakePolicy(const RunConfig& config,
                                   const Environment& env) {
  const PolicySpec& p = config.policy;
  switch (p.kind) {
    case PolicyKind::kUcb:
      return std::make_unique<UcbPolicy>(config.env.k, p.sigma_q);
    case PolicyKind::kEpsGreedy: {
      const auto gap = p.delta_min ? p.delta_min : env.MinGap();
      if (!gap) {
        throw Error(ErrorCode::kConfigError,
                    "eps_greedy needs delta_min (environment has no gap)");
      }
      return std::make_unique<EpsGreedyPolicy>(config.env.k, p.sigma_q,
                                               p.eps_c, *gap);
    }
    case PolicyKind::kLinUcb: {
      LinUcbParams params;
      params.sigma_q = p.sigma_q;
      params.ridge_lambda = p.ridge_lambda;
      params.action_norm_bound = config.env.action_radius;
      params.horizon = config.horizon;
      return std::make_unique<LinUcbPolicy>(config.env.dim, params);
    }
  }
  throw Error(ErrorCode::kConfigError, "unknown policy");
}

}  // namespace

QuantizerKind ParseQuantizerKind(std::string_view name) {
  if (name == "none") return QuantizerKind::kNone;
  if (name == "sq") return QuantizerKind::kSq;
  if (name == "quban") return QuantizerKind::kQuban;
  throw Error(ErrorCode::kConfigError,
              "unknown quantizer '" + std::string(name) + "'");
}

std::string_view QuantizerName(QuantizerKind kind) {
  switch (kind) {
    case QuantizerKind::kNone: return "none";
    case QuantizerKind::kSq: return "sq";
    case QuantizerKind::kQuban: return "quban";
  }
  return "unknown";
}

void RunConfig::Validate() const {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kConfigError, msg);
  };
  if (horizon < 1) fail("horizon must be >= 1");
  if (num_runs < 1) fail("runs must be >= 1");
  if (quantizer.kind == QuantizerKind::kSq) {
    if (quantizer.sq_bits < 1 || quantizer.sq_bits > 24) {
      fail("sq bits must be in [1, 24]");
    }
    if (!(quantizer.sq_lo < quantizer.sq_hi)) fail("sq range needs lo < hi");
  }
  if (quantizer.kind == QuantizerKind::kQuban) {
    if (!(quantizer.epsilon > 0.0)) fail("epsilon must be > 0");
    if (quantizer.sigma && !(*quantizer.sigma > 0.0)) fail("sigma must be > 0");
    if (quantizer.guard_bound && *quantizer.guard_bound < 1) {
      fail("guard bound must be >= 1");
    }
    const bool linear = env.kind == EnvKind::kLinear;
    if (linear && quantizer.estimator != EstimatorKind::kContextual) {
      fail("linear environments need the contextual estimator");
    }
    if (!linear && quantizer.estimator == EstimatorKind::kContextual) {
      fail("the contextual estimator needs a linear environment");
    }
  }
  const bool linear_policy = policy.kind == PolicyKind::kLinUcb;
  if (linear_policy != (env.kind == EnvKind::kLinear)) {
    fail("linucb runs on linear environments only, and only linucb does");
  }
  if (!(policy.sigma_q > 0.0)) fail("sigma_q must be > 0");
}

std::string RunConfig::Key() const {
  std::ostringstream os;
  os.precision(17);
  os << name << '|' << env.preset << '|' << static_cast<int>(env.kind) << '|'
     << env.k << '|' << env.mean_mean << '|' << env.mean_stddev << '|'
     << env.reward_variance << '|' << env.clip.value_or(-1.0) << '|' << env.dim
     << '|' << env.actions_per_step << '|' << env.action_radius << '|'
     << PolicyName(policy.kind) << '|' << policy.sigma_q << '|' << policy.eps_c
     << '|' << policy.delta_min.value_or(-1.0) << '|' << policy.ridge_lambda
     << '|' << QuantizerName(quantizer.kind) << '|' << quantizer.sq_bits << '|'
     << quantizer.sq_lo << '|' << quantizer.sq_hi << '|' << quantizer.epsilon
     << '|' << quantizer.sigma.value_or(-1.0) << '|'
     << EstimatorName(quantizer.estimator) << '|' << quantizer.guard << '|'
     << quantizer.guard_bound.value_or(-1) << '|' << horizon;
  return os.str();
}

std::uint64_t RunSeed(std::uint64_t master, std::uint64_t index) {
  return DeriveSeed(master, index);
}

RunResult RunOnce(const RunConfig& config, std::uint64_t seed) {
  config.Validate();
  auto env = SampleEnv(config.env, seed);
  auto policy = MakePolicy(config, *env);

  RngStream env_rng(seed, kEnvNoise);
  RngStream policy_rng(seed, kPolicy);
  RngStream codec_rng(seed, kCodec);
  RngStream x_rng(seed, kXDraw);
  RngStream guard_rng(seed, kGuard);

  const QuantizerSpec& q = config.quantizer;
  std::optional<LevelGrid> grid;
  if (q.kind == QuantizerKind::kSq) grid = MakeUniformGrid(q.sq_lo, q.sq_hi, q.sq_bits);

  QuantizerConfig qcfg;
  std::optional<MeanEstimator> estimator;
  int guard_bound = 0;
  if (q.kind == QuantizerKind::kQuban) {
    qcfg.epsilon = q.epsilon;
    qcfg.sigma = q.sigma.value_or(env->reward_stddev());
    qcfg.Validate();
    estimator.emplace(q.estimator, config.env.k);
    guard_bound = q.guard_bound.value_or(
        InstantaneousBound(std::max<std::int64_t>(config.horizon, 2)));
  }

  RunResult result;
  result.seed = seed;
  result.metrics = RunMetrics(config.Key());
  if (config.record_transcript) {
    result.transcript.reserve(static_cast<std::size_t>(config.horizon));
  }

  BitString wire;
  for (std::int64_t t = 1; t <= config.horizon; ++t) {
    const ActionSet actions = env->Offer(env_rng);
    const std::size_t chosen = policy->Select(t, actions, policy_rng);
    const double reward = env->Pull(actions, chosen, env_rng);

    double reward_hat = reward;
    int bits = kUnquantizedBits;
    double mu_hat = 0.0;
    double m = 0.0;
    bool guarded = false;
    wire.Clear();

    switch (q.kind) {
      case QuantizerKind::kNone:
        break;
      case QuantizerKind::kSq: {
        const double clipped = std::clamp(reward, grid->lo(), grid->hi());
        const std::size_t index = SqEncode(clipped, *grid, codec_rng);
        wire.AppendFixed(index, grid->index_width());
        BitReader in(wire);
        reward_hat = SqDecode(in.ReadFixed(grid->index_width()), *grid);
        bits = grid->index_width();
        break;
      }
      case QuantizerKind::kQuban: {
        const Action action = actions.at(chosen);
        mu_hat = estimator->MuHat(action, policy->Theta());
        m = qcfg.DrawM(x_rng);
        const QubanFrame frame = QubanEncode(reward, mu_hat, m, codec_rng);
        if (q.guard && frame.bit_count() > guard_bound) {
          guarded = true;
          ++result.guard_activations;
          const bool bit = guard_rng.Bernoulli(0.5);
          wire.Append(bit);
          reward_hat = (std::floor(mu_hat / m) + (bit ? 1.0 : 0.0)) * m;
          bits = 1;
        } else {
          frame.WriteTo(wire);
          BitReader in(wire);
          const QubanFrame received = QubanFrame::ReadFrom(in);
          if (in.remaining() != 0) {
            throw Error(ErrorCode::kMalformedFrame,
                        "decoder did not consume the whole frame");
          }
          reward_hat = QubanDecode(received, mu_hat, m);
          bits = static_cast<int>(wire.size());
        }
        estimator->Update(action, reward_hat);
        break;
      }
    }

    policy->Update(actions, chosen, reward_hat);
    result.metrics.Record(chosen, reward, reward_hat, bits,
                          env->BestMean(actions), env->Mean(actions, chosen));
    result.max_bits = std::max(result.max_bits, bits);
    if (config.record_transcript) {
      result.transcript.push_back(TranscriptEntry{
          t, chosen, reward, mu_hat, m, wire, reward_hat, bits, guarded});
    }
  }
  return result;
}

int DefaultThreadCount() {
  if (const char* env = std::getenv("QUBAN_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentResult RunExperiment(const RunConfig& config, int threads) {
  config.Validate();
  ExperimentResult out;
  out.config = config;
  out.runs.resize(static_cast<std::size_t>(config.num_runs));
  const int workers =
      std::min(threads > 0 ? threads : DefaultThreadCount(), config.num_runs);

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (int i = next++; i < config.num_runs; i = next++) {
      try {
        out.runs[static_cast<std::size_t>(i)] =
            RunOnce(config, RunSeed(config.seed, static_cast<std::uint64_t>(i)));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<RunMetrics> metrics;
  metrics.reserve(out.runs.size());
  for (const auto& run : out.runs) {
    metrics.push_back(run.metrics);
    out.guard_activations += run.guard_activations;
  }
  out.aggregate = MergeMetrics(metrics);
  return out;
}

}  // namespace quban
