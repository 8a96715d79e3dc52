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

#include "quban/envs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quban/error.hpp"

namespace quban {

double Environment::BestMean(const ActionSet& actions) const {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < actions.size(); ++i) {
    best = std::max(best, Mean(actions, i));
  }
  return best;
}

KArmedEnv::KArmedEnv(std::vector<double> means, double reward_stddev,
                     std::optional<double> clip)
    : means_(std::move(means)), stddev_(reward_stddev), clip_(clip) {
  if (means_.empty()) throw Error(ErrorCode::kConfigError, "k must be >= 1");
  if (!(stddev_ >= 0.0)) {
    throw Error(ErrorCode::kConfigError, "reward stddev must be >= 0");
  }
  if (clip_ && !(*clip_ > 0.0)) {
    throw Error(ErrorCode::kConfigError, "clip range must be > 0");
  }
  best_ = *std::max_element(means_.begin(), means_.end());
}

ActionSet KArmedEnv::Offer(RngStream& /*rng*/) { return ActionSet::Arms(k()); }

double KArmedEnv::Mean(const ActionSet& /*actions*/, std::size_t i) const {
  if (i >= means_.size()) throw Error(ErrorCode::kBadAction, "arm out of range");
  return means_[i];
}

double KArmedEnv::Pull(const ActionSet& /*actions*/, std::size_t i,
                       RngStream& rng) {
  if (i >= means_.size()) throw Error(ErrorCode::kBadAction, "arm out of range");
  const double r = means_[i] + stddev_ * rng.Normal();
  return clip_ ? std::clamp(r, -*clip_, *clip_) : r;
}

std::optional<double> KArmedEnv::MinGap() const {
  std::optional<double> gap;
  for (double mu : means_) {
    const double d = best_ - mu;
    if (d > 0.0 && (!gap || d < *gap)) gap = d;
  }
  return gap;
}

LinearEnv::LinearEnv(std::vector<double> theta, double noise_stddev,
                     std::size_t actions_per_step, double action_radius)
    : theta_(std::move(theta)),
      stddev_(noise_stddev),
      per_step_(actions_per_step),
      radius_(action_radius) {
  if (theta_.empty()) throw Error(ErrorCode::kConfigError, "d must be >= 1");
  if (per_step_ == 0) {
    throw Error(ErrorCode::kConfigError, "need at least one action per step");
  }
  if (!(stddev_ >= 0.0) || !(radius_ > 0.0)) {
    throw Error(ErrorCode::kConfigError, "bad noise or action radius");
  }
}

ActionSet LinearEnv::Offer(RngStream& rng) {
  std::vector<std::vector<double>> actions;
  actions.reserve(per_step_);
  for (std::size_t i = 0; i < per_step_; ++i) {
    actions.push_back(SampleSphere(theta_.size(), radius_, rng));
  }
  return ActionSet::Vectors(std::move(actions));
}

double LinearEnv::Mean(const ActionSet& actions, std::size_t i) const {
  if (i >= actions.size() || actions.features[i].size() != theta_.size()) {
    throw Error(ErrorCode::kBadAction, "action not valid for this environment");
  }
  double dot = 0.0;
  for (std::size_t j = 0; j < theta_.size(); ++j) {
    dot += theta_[j] * actions.features[i][j];
  }
  return dot;
}

double LinearEnv::Pull(const ActionSet& actions, std::size_t i, RngStream& rng) {
  return Mean(actions, i) + stddev_ * rng.Normal();
}

std::vector<double> SampleSphere(std::size_t dim, double radius, RngStream& rng) {
  std::vector<double> v(dim);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& x : v) {
      x = rng.Normal();
      norm2 += x * x;
    }
  } while (norm2 == 0.0);
  const double scale = radius / std::sqrt(norm2);
  for (auto& x : v) x *= scale;
  return v;
}

EnvSpec PresetEnvSpec(std::string_view preset) {
  EnvSpec spec;
  spec.preset = std::string(preset);
  if (preset == "setup1") {
    spec.mean_mean = 0.0;
    spec.mean_stddev = 10.0;
  } else if (preset == "setup2") {
    spec.mean_mean = 95.0;
    spec.mean_stddev = 1.0;
  } else if (preset == "setup3") {
    spec.kind = EnvKind::kLinear;
  } else if (preset == "appG") {
    spec.mean_mean = 0.0;
    spec.mean_stddev = 1.0;
    spec.clip = 100.0;
  } else {
    throw Error(ErrorCode::kUnknownPreset,
                "unknown preset '" + std::string(preset) + "'");
  }
  return spec;
}

std::unique_ptr<Environment> SampleEnv(const EnvSpec& spec, std::uint64_t seed) {
  RngStream rng(seed, 0);
  if (!(spec.reward_variance >= 0.0)) {
    throw Error(ErrorCode::kConfigError, "reward variance must be >= 0");
  }
  const double stddev = std::sqrt(spec.reward_variance);
  if (spec.kind == EnvKind::kLinear) {
    auto theta = SampleSphere(spec.dim, spec.theta_norm, rng);
    return std::make_unique<LinearEnv>(std::move(theta), stddev,
                                       spec.actions_per_step, spec.action_radius);
  }
  std::vector<double> means(spec.k);
  for (auto& mu : means) mu = spec.mean_mean + spec.mean_stddev * rng.Normal();
  return std::make_unique<KArmedEnv>(std::move(means), stddev, spec.clip);
}

std::unique_ptr<Environment> SampleEnv(std::string_view preset,
                                       std::uint64_t seed) {
  return SampleEnv(PresetEnvSpec(preset), seed);
}

}  // namespace quban
