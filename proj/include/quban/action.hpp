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
#include <span>
#include <variant>
#include <vector>

namespace quban {

// A learner's choice: an arm of a finite bandit or a feature vector of a
// linear bandit. Exactly one is populated.
class Action {
 public:
  static Action Arm(std::size_t index) { return Action(index); }
  static Action Features(std::vector<double> features);

  bool is_arm() const noexcept { return std::holds_alternative<std::size_t>(v_); }
  std::size_t arm() const;
  std::span<const double> features() const;

 private:
  explicit Action(std::size_t index) : v_(index) {}
  explicit Action(std::vector<double> f) : v_(std::move(f)) {}

  std::variant<std::size_t, std::vector<double>> v_;
};

// Actions offered at one step: either k fixed arms, or a list of feature
// vectors (linear bandits).
struct ActionSet {
  std::size_t num_arms = 0;
  std::vector<std::vector<double>> features;

  static ActionSet Arms(std::size_t k) { return ActionSet{k, {}}; }
  static ActionSet Vectors(std::vector<std::vector<double>> f) {
    const std::size_t n = f.size();
    return ActionSet{n, std::move(f)};
  }

  std::size_t size() const noexcept { return num_arms; }
  bool is_linear() const noexcept { return !features.empty(); }
  Action at(std::size_t i) const;
};

}  // namespace quban
