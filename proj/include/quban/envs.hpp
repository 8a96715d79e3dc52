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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quban/action.hpp"
#include "quban/rng.hpp"

namespace quban {

class Environment {
 public:
  virtual ~Environment() = default;

  // Action set for the next step. Fixed-arm environments consume no
  // randomness here.
  virtual ActionSet Offer(RngStream& rng) = 0;
  virtual double Mean(const ActionSet& actions, std::size_t i) const = 0;
  // One reward draw for action i. Each call consumes the same amount of
  // randomness whatever i is, so runs that differ only in their choices
  // see the same noise sequence.
  virtual double Pull(const ActionSet& actions, std::size_t i,
                      RngStream& rng) = 0;
  virtual double reward_stddev() const = 0;

  double BestMean(const ActionSet& actions) const;
  // Smallest positive gap, if the arm set is fixed.
  virtual std::optional<double> MinGap() const { return std::nullopt; }
};

// k Gaussian arms, optionally clipped to [-clip, clip]. Regret accounting
// uses the pre-clip means.
class KArmedEnv final : public Environment {
 public:
  KArmedEnv(std::vector<double> means, double reward_stddev,
            std::optional<double> clip = std::nullopt);

  ActionSet Offer(RngStream& rng) override;
  double Mean(const ActionSet& actions, std::size_t i) const override;
  double Pull(const ActionSet& actions, std::size_t i, RngStream& rng) override;
  double reward_stddev() const override { return stddev_; }
  std::optional<double> MinGap() const override;

  std::size_t k() const noexcept { return means_.size(); }
  const std::vector<double>& means() const noexcept { return means_; }
  std::optional<double> clip() const noexcept { return clip_; }
  double best_mean() const noexcept { return best_; }

 private:
  std::vector<double> means_;
  double stddev_;
  std::optional<double> clip_;
  double best_;
};

// r_t = <theta*, A_t> + eta_t, with a fresh set of actions drawn uniformly
// on the sphere of radius `action_radius` at every step.
class LinearEnv final : public Environment {
 public:
  LinearEnv(std::vector<double> theta, double noise_stddev,
            std::size_t actions_per_step, double action_radius);

  ActionSet Offer(RngStream& rng) override;
  double Mean(const ActionSet& actions, std::size_t i) const override;
  double Pull(const ActionSet& actions, std::size_t i, RngStream& rng) override;
  double reward_stddev() const override { return stddev_; }

  std::size_t dim() const noexcept { return theta_.size(); }
  const std::vector<double>& theta() const noexcept { return theta_; }
  double action_radius() const noexcept { return radius_; }

 private:
  std::vector<double> theta_;
  double stddev_;
  std::size_t per_step_;
  double radius_;
};

// Uniform point on the sphere of the given radius (normalized Gaussian).
std::vector<double> SampleSphere(std::size_t dim, double radius, RngStream& rng);

enum class EnvKind { kKArmed, kLinear };

// Parameters an environment instance is drawn from. Presets fill these;
// config overrides may change any field.
struct EnvSpec {
  std::string preset;
  EnvKind kind = EnvKind::kKArmed;
  std::size_t k = 100;
  double mean_mean = 0.0;
  double mean_stddev = 10.0;
  double reward_variance = 0.1;
  std::optional<double> clip;
  std::size_t dim = 20;
  std::size_t actions_per_step = 5;
  double action_radius = 0.5;
  double theta_norm = 1.0;
};

// "setup1", "setup2", "setup3" or "appG". Throws kUnknownPreset.
EnvSpec PresetEnvSpec(std::string_view preset);

std::unique_ptr<Environment> SampleEnv(const EnvSpec& spec, std::uint64_t seed);
std::unique_ptr<Environment> SampleEnv(std::string_view preset,
                                       std::uint64_t seed);

}  // namespace quban
