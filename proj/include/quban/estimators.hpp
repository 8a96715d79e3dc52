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
#include <span>
#include <string_view>
#include <vector>

#include "quban/action.hpp"

namespace quban {

// Incremental mean, stable over long horizons.
class RunningMean {
 public:
  void Add(double x) {
    ++count_;
    mean_ += (x - mean_) / static_cast<double>(count_);
  }
  std::int64_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
};

enum class EstimatorKind { kAvgArmPt, kAvgPt, kContextual };

EstimatorKind ParseEstimatorKind(std::string_view name);
std::string_view EstimatorName(EstimatorKind kind);

// Learner-side quantization center mu_hat(t).
//   avg_arm_pt: running mean of decoded rewards of the chosen arm (0 if unpulled)
//   avg_pt:     running mean of all decoded rewards (0 before the first)
//   contextual: <theta_t, A_t>, with theta_t owned by the policy
class MeanEstimator {
 public:
  MeanEstimator(EstimatorKind kind, std::size_t num_arms);

  EstimatorKind kind() const noexcept { return kind_; }

  // `theta` is consulted only by the contextual variant.
  double MuHat(const Action& action, std::span<const double> theta = {}) const;
  void Update(const Action& action, double r_hat);

 private:
  EstimatorKind kind_;
  std::vector<RunningMean> per_arm_;
  RunningMean global_;
};

}  // namespace quban
