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

#include "quban/estimators.hpp"

#include <string>

#include "quban/error.hpp"

namespace quban {

EstimatorKind ParseEstimatorKind(std::string_view name) {
  if (name == "avg_arm_pt") return EstimatorKind::kAvgArmPt;
  if (name == "avg_pt") return EstimatorKind::kAvgPt;
  if (name == "contextual") return EstimatorKind::kContextual;
  throw Error(ErrorCode::kConfigError,
              "unknown estimator '" + std::string(name) + "'");
}

std::string_view EstimatorName(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::kAvgArmPt: return "avg_arm_pt";
    case EstimatorKind::kAvgPt: return "avg_pt";
    case EstimatorKind::kContextual: return "contextual";
  }
  return "unknown";
}

MeanEstimator::MeanEstimator(EstimatorKind kind, std::size_t num_arms)
    : kind_(kind) {
  if (kind_ == EstimatorKind::kAvgArmPt) per_arm_.resize(num_arms);
}

double MeanEstimator::MuHat(const Action& action,
                            std::span<const double> theta) const {
  switch (kind_) {
    case EstimatorKind::kAvgArmPt: {
      const std::size_t arm = action.arm();
      if (arm >= per_arm_.size()) {
        throw Error(ErrorCode::kBadAction, "arm outside estimator state");
      }
      return per_arm_[arm].mean();
    }
    case EstimatorKind::kAvgPt:
      return global_.mean();
    case EstimatorKind::kContextual: {
      if (theta.empty()) return 0.0;
      const auto a = action.features();
      if (a.size() != theta.size()) {
        throw Error(ErrorCode::kBadAction, "theta/action dimension mismatch");
      }
      double dot = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) dot += theta[i] * a[i];
      return dot;
    }
  }
  return 0.0;
}

void MeanEstimator::Update(const Action& action, double r_hat) {
  switch (kind_) {
    case EstimatorKind::kAvgArmPt:
      per_arm_.at(action.arm()).Add(r_hat);
      break;
    case EstimatorKind::kAvgPt:
      global_.Add(r_hat);
      break;
    case EstimatorKind::kContextual:
      break;
  }
}

}  // namespace quban
