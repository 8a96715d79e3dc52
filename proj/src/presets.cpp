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

#include "quban/presets.hpp"

#include <cmath>
#include <string>

#include "quban/error.hpp"

namespace quban {

namespace {

RunConfig Base(const EnvSpec& env, PolicyKind policy, std::string name) {
  RunConfig config;
  config.name = std::move(name);
  config.env = env;
  config.policy.kind = policy;
  return config;
}

std::string Suffix(int bits) { return "sq" + std::to_string(bits); }

}  // namespace

RunConfig UnquantizedVariant(const EnvSpec& env, PolicyKind policy,
                             double sigma_q) {
  RunConfig config = Base(env, policy, "none");
  config.quantizer.kind = QuantizerKind::kNone;
  config.policy.sigma_q = sigma_q;
  return config;
}

RunConfig QubanVariant(const EnvSpec& env, PolicyKind policy,
                       EstimatorKind estimator) {
  RunConfig config = Base(env, policy, "quban");
  if (estimator != EstimatorKind::kContextual) {
    config.name += "_" + std::string(EstimatorName(estimator));
  }
  config.quantizer.kind = QuantizerKind::kQuban;
  config.quantizer.estimator = estimator;
  config.quantizer.epsilon = 1.0;
  config.policy.sigma_q = kDefaultSigmaQ;
  return config;
}

RunConfig SqVariant(const EnvSpec& env, PolicyKind policy, int bits, double lo,
                    double hi) {
  RunConfig config = Base(env, policy, Suffix(bits));
  config.quantizer.kind = QuantizerKind::kSq;
  config.quantizer.sq_bits = bits;
  config.quantizer.sq_lo = lo;
  config.quantizer.sq_hi = hi;
  config.policy.sigma_q = (hi - lo) / (std::ldexp(1.0, bits) - 1.0);
  return config;
}

std::vector<RunConfig> PresetSuite(std::string_view preset, PolicyKind policy) {
  const EnvSpec env = PresetEnvSpec(preset);
  std::vector<RunConfig> suite;
  if (preset == "setup1" || preset == "setup2") {
    if (policy == PolicyKind::kLinUcb) {
      throw Error(ErrorCode::kConfigError, "linucb needs a linear preset");
    }
    suite.push_back(UnquantizedVariant(env, policy));
    suite.push_back(QubanVariant(env, policy, EstimatorKind::kAvgArmPt));
    suite.push_back(QubanVariant(env, policy, EstimatorKind::kAvgPt));
    for (int bits : {1, 3, 5}) suite.push_back(SqVariant(env, policy, bits, -100.0, 100.0));
  } else if (preset == "setup3") {
    suite.push_back(UnquantizedVariant(env, PolicyKind::kLinUcb));
    suite.push_back(QubanVariant(env, PolicyKind::kLinUcb, EstimatorKind::kContextual));
    suite.push_back(SqVariant(env, PolicyKind::kLinUcb, 3, -10.0, 10.0));
    suite.push_back(SqVariant(env, PolicyKind::kLinUcb, 1, -10.0, 10.0));
  } else if (preset == "appG") {
    if (policy == PolicyKind::kLinUcb) {
      throw Error(ErrorCode::kConfigError, "linucb needs a linear preset");
    }
    for (double lambda : {1.0, 100.0}) {
      EnvSpec clipped = env;
      clipped.clip = lambda;
      const std::string tag = lambda == 1.0 ? "_lambda1" : "_lambda100";
      RunConfig none =
          UnquantizedVariant(clipped, policy, lambda == 1.0 ? 2.0 : kDefaultSigmaQ);
      none.name += tag;
      RunConfig sq = SqVariant(clipped, policy, 1, -lambda, lambda);
      sq.name += tag;
      suite.push_back(std::move(none));
      suite.push_back(std::move(sq));
    }
  } else {
    throw Error(ErrorCode::kUnknownPreset, "unknown preset: " + std::string(preset));
  }
  return suite;
}

}  // namespace quban
