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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "quban/envs.hpp"
#include "quban/error.hpp"

namespace quban {
namespace {

TEST(EnvTest, Setup1Preset) {
  const EnvSpec spec = PresetEnvSpec("setup1");
  EXPECT_EQ(spec.k, 100u);
  EXPECT_EQ(spec.reward_variance, 0.1);
  auto env = SampleEnv(spec, 1);
  EXPECT_NEAR(env->reward_stddev(), std::sqrt(0.1), 1e-15);
  auto* karmed = dynamic_cast<KArmedEnv*>(env.get());
  ASSERT_NE(karmed, nullptr);
  EXPECT_EQ(karmed->k(), 100u);
}

TEST(EnvTest, Setup2MeanSpread) {
  auto env = SampleEnv("setup2", 3);
  const auto& means = dynamic_cast<KArmedEnv&>(*env).means();
  const double mean = std::accumulate(means.begin(), means.end(), 0.0) / means.size();
  double ss = 0;
  for (double m : means) ss += (m - mean) * (m - mean);
  const double sd = std::sqrt(ss / (means.size() - 1));
  EXPECT_GE(sd, 0.7);
  EXPECT_LE(sd, 1.3);
  EXPECT_NEAR(mean, 95.0, 0.5);
}

TEST(EnvTest, Setup3ActionsOnSphere) {
  auto env = SampleEnv("setup3", 4);
  RngStream rng(4, 1);
  for (int t = 0; t < 200; ++t) {
    const ActionSet actions = env->Offer(rng);
    ASSERT_EQ(actions.size(), 5u);
    for (std::size_t i = 0; i < actions.size(); ++i) {
      const Action act = actions.at(i);
      const auto a = act.features();
      ASSERT_EQ(a.size(), 20u);
      double n2 = 0;
      for (double x : a) n2 += x * x;
      EXPECT_NEAR(std::sqrt(n2), 0.5, 1e-12);
    }
  }
  const auto& theta = dynamic_cast<LinearEnv&>(*env).theta();
  double n2 = 0;
  for (double x : theta) n2 += x * x;
  EXPECT_NEAR(std::sqrt(n2), 1.0, 1e-12);
}

TEST(EnvTest, UnknownPreset) {
  try {
    PresetEnvSpec("setup9");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownPreset);
  }
}

TEST(EnvTest, PullMeanMatches) {
  KArmedEnv env({1.5, -2.0}, std::sqrt(0.1));
  RngStream rng(5, 0);
  const ActionSet arms = ActionSet::Arms(2);
  const int n = 1000000;
  double sum = 0;
  for (int i = 0; i < n; ++i) sum += env.Pull(arms, 1, rng);
  EXPECT_NEAR(sum / n, -2.0, 5 * std::sqrt(0.1) / 1e3);
  EXPECT_EQ(env.BestMean(arms), 1.5);
  EXPECT_EQ(*env.MinGap(), 3.5);
}

TEST(EnvTest, ClipBoundsRewards) {
  KArmedEnv env({0.9, -0.9}, 1.0, 1.0);
  RngStream rng(6, 0);
  const ActionSet arms = ActionSet::Arms(2);
  for (int i = 0; i < 100000; ++i) {
    const double r = env.Pull(arms, i % 2, rng);
    ASSERT_GE(r, -1.0);
    ASSERT_LE(r, 1.0);
  }
}

TEST(EnvTest, NoiselessLinearReward) {
  LinearEnv env({0.6, 0.8}, 0.0, 3, 0.5);
  RngStream rng(7, 0);
  const ActionSet actions = env.Offer(rng);
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const Action act = actions.at(i);
    const auto a = act.features();
    const double expected = 0.6 * a[0] + 0.8 * a[1];
    EXPECT_DOUBLE_EQ(env.Pull(actions, i, rng), expected);
    EXPECT_DOUBLE_EQ(env.Mean(actions, i), expected);
  }
}

TEST(EnvTest, BadAction) {
  KArmedEnv env({0.0, 1.0}, 1.0);
  RngStream rng(8, 0);
  EXPECT_THROW(env.Pull(ActionSet::Arms(2), 5, rng), Error);
}

TEST(EnvTest, SamplingIsDeterministic) {
  auto a = SampleEnv("setup1", 77);
  auto b = SampleEnv("setup1", 77);
  EXPECT_EQ(dynamic_cast<KArmedEnv&>(*a).means(), dynamic_cast<KArmedEnv&>(*b).means());
}

}  // namespace
}  // namespace quban
