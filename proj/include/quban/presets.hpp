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

#include <string_view>
#include <vector>

#include "quban/bandits.hpp"
#include "quban/envs.hpp"
#include "quban/sim.hpp"

namespace quban {

// Exploration constant used with unquantized rewards on the Gaussian presets.
inline constexpr double kDefaultSigmaQ = 0.1;

RunConfig UnquantizedVariant(const EnvSpec& env, PolicyKind policy,
                             double sigma_q = kDefaultSigmaQ);
RunConfig QubanVariant(const EnvSpec& env, PolicyKind policy,
                       EstimatorKind estimator);
// r-bit SQ on [lo, hi]; the exploration constant is the level spacing
// (hi - lo) / (2^r - 1).
RunConfig SqVariant(const EnvSpec& env, PolicyKind policy, int bits, double lo,
                    double hi);

// The comparison a preset stands for, one RunConfig per curve. `policy`
// applies to the finite-armed presets; setup3 always runs LinUCB.
//   setup1, setup2: none, quban_avg_arm_pt, quban_avg_pt, sq1, sq3, sq5
//   setup3:         none, quban, sq3, sq1 (SQ on [-10, 10])
//   appG:           none and sq1 for clip 1 and clip 100
std::vector<RunConfig> PresetSuite(std::string_view preset,
                                   PolicyKind policy = PolicyKind::kUcb);

}  // namespace quban
