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

#include "quban/action.hpp"

#include <cmath>
#include <string>

#include "quban/error.hpp"

namespace quban {

Action Action::Features(std::vector<double> features) {
  for (double x : features) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::kNonFinite, "feature vector has a non-finite entry");
    }
  }
  return Action(std::move(features));
}

std::size_t Action::arm() const {
  if (!is_arm()) throw Error(ErrorCode::kBadAction, "action is not an arm");
  return std::get<std::size_t>(v_);
}

std::span<const double> Action::features() const {
  if (is_arm()) throw Error(ErrorCode::kBadAction, "action has no features");
  return std::get<std::vector<double>>(v_);
}

Action ActionSet::at(std::size_t i) const {
  if (i >= num_arms) {
    throw Error(ErrorCode::kBadAction,
                "action " + std::to_string(i) + " not in a set of " +
                    std::to_string(num_arms));
  }
  return is_linear() ? Action::Features(features[i]) : Action::Arm(i);
}

}  // namespace quban
