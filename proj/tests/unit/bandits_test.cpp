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
#include <vector>

#include "quban/bandits.hpp"
#include "quban/error.hpp"
#include "quban/estimators.hpp"

namespace quban {
namespace {

TEST(EstimatorTest, AvgPtIsGlobalMean) {
  MeanEstimator est(EstimatorKind::kAvgPt, 3);
  est.Update(Action::Arm(0), 1.0);
  est.Update(Action::Arm(2), 3.0);
  EXPECT_DOUBLE_EQ(est.MuHat(Action::Arm(1)), 2.0);

  MeanEstimator two(EstimatorKind::kAvgPt, 1);
  two.Update(Action::Arm(0), 2.0);
  two.Update(Action::Arm(0), 4.0);
  EXPECT_DOUBLE_EQ(two.MuHat(Action::Arm(0)), 3.0);
}

TEST(EstimatorTest, AvgArmPtIsPerArm) {
  MeanEstimator est(EstimatorKind::kAvgArmPt, 3);
  EXPECT_EQ(est.MuHat(Action::Arm(1)), 0.0);  // never pulled
  est.Update(Action::Arm(1), 5.0);
  EXPECT_EQ(est.MuHat(Action::Arm(1)), 5.0);
  EXPECT_EQ(est.MuHat(Action::Arm(2)), 0.0);
  est.Update(Action::Arm(2), -1.0);
  EXPECT_EQ(est.MuHat(Action::Arm(1)), 5.0);
}

TEST(EstimatorTest, ConstantSequence) {
  for (auto kind : {EstimatorKind::kAvgPt, EstimatorKind::kAvgArmPt}) {
    MeanEstimator est(kind, 2);
    for (int i = 0; i < 1000; ++i) est.Update(Action::Arm(0), 0.1);
    EXPECT_NEAR(est.MuHat(Action::Arm(0)), 0.1, 1e-15);
  }
}

TEST(EstimatorTest, ContextualIsInnerProduct) {
  MeanEstimator est(EstimatorKind::kContextual, 0);
  std::vector<double> theta(20, 0.0);
  theta[0] = 1.0;
  std::vector<double> a(20, 0.0);
  a[0] = 0.5;
  EXPECT_DOUBLE_EQ(est.MuHat(Action::Features(a), theta), 0.5);
  est.Update(Action::Features(a), 100.0);  // no-op
  EXPECT_DOUBLE_EQ(est.MuHat(Action::Features(a), theta), 0.5);
  EXPECT_EQ(est.MuHat(Action::Features(a), {}), 0.0);
}

TEST(EstimatorTest, Names) {
  for (auto kind : {EstimatorKind::kAvgArmPt, EstimatorKind::kAvgPt, EstimatorKind::kContextual}) {
    EXPECT_EQ(ParseEstimatorKind(EstimatorName(kind)), kind);
  }
  EXPECT_THROW(ParseEstimatorKind("median"), Error);
}

TEST(UcbTest, ForcedExplorationFirst) {
  UcbPolicy ucb(2, 0.1);
  RngStream rng(1, 0);
  const ActionSet arms = ActionSet::Arms(2);
  EXPECT_EQ(ucb.Select(1, arms, rng), 0u);
  ucb.Update(arms, 0, 10.0);
  EXPECT_EQ(ucb.Select(2, arms, rng), 1u);
}

TEST(UcbTest, MeanAndCount) {
  UcbPolicy ucb(3, 1.0);
  const ActionSet arms = ActionSet::Arms(3);
  ucb.Update(arms, 1, 1.0);
  ucb.Update(arms, 1, 3.0);
  EXPECT_EQ(ucb.stats().mean(1), 2.0);
  EXPECT_EQ(ucb.stats().count(1), 2);
  EXPECT_EQ(ucb.stats().count(0), 0);
  EXPECT_EQ(ucb.stats().mean(2), 0.0);
}

TEST(UcbTest, IndexFormula) {
  UcbPolicy ucb(2, 0.5);
  const ActionSet arms = ActionSet::Arms(2);
  ucb.Update(arms, 0, 1.0);
  ucb.Update(arms, 0, 2.0);
  ucb.Update(arms, 1, 0.0);
  const double t = 10;
  const double f = 1 + t * std::log(t) * std::log(t);
  EXPECT_NEAR(ucb.Index(0, 10), 1.5 + 0.5 * std::sqrt(2 * std::log(f) / 2), 1e-12);
  EXPECT_NEAR(ucb.Index(1, 10), 0.0 + 0.5 * std::sqrt(2 * std::log(f) / 1), 1e-12);
}

TEST(UcbTest, TiesGoToLowestIndex) {
  UcbPolicy ucb(3, 0.1);
  RngStream rng(2, 0);
  const ActionSet arms = ActionSet::Arms(3);
  for (std::size_t i = 0; i < 3; ++i) ucb.Update(arms, i, 1.0);
  EXPECT_EQ(ucb.Select(4, arms, rng), 0u);
}

TEST(UcbTest, EmptyActionSet) {
  UcbPolicy ucb(2, 0.1);
  RngStream rng(3, 0);
  EXPECT_THROW(ucb.Select(1, ActionSet::Arms(0), rng), Error);
}

TEST(EpsGreedyTest, EpsilonSchedule) {
  EpsGreedyPolicy eg(10, 0.5, 10, 2.0);
  EXPECT_EQ(eg.Epsilon(1), 1.0);
  EXPECT_DOUBLE_EQ(eg.Epsilon(1000), 10 * 0.5 * 10 / (1000 * 4.0));
}

TEST(EpsGreedyTest, EpsilonOneIsUniform) {
  const std::size_t k = 10;
  EpsGreedyPolicy eg(k, 1.0, 1e9, 1.0);  // epsilon_t = 1 throughout
  RngStream rng(4, 0);
  const ActionSet arms = ActionSet::Arms(k);
  for (std::size_t i = 0; i < k; ++i) eg.Update(arms, i, i == 3 ? 100.0 : 0.0);
  std::vector<int> counts(k, 0);
  const int n = 100000;
  for (int t = 1; t <= n; ++t) ++counts[eg.Select(t, arms, rng)];
  double chi2 = 0;
  const double expected = static_cast<double>(n) / k;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 27.88);  // chi-square(9) 0.999 quantile
}

TEST(EpsGreedyTest, GreedyBranchPicksBestMean) {
  EpsGreedyPolicy eg(3, 1e-9, 1e-9, 1.0);  // epsilon_t ~ 0
  RngStream rng(5, 0);
  const ActionSet arms = ActionSet::Arms(3);
  for (std::size_t i = 0; i < 3; ++i) eg.Update(arms, i, i == 2 ? 5.0 : 1.0);
  for (int t = 4; t < 100; ++t) EXPECT_EQ(eg.Select(t, arms, rng), 2u);
}

TEST(LinUcbTest, BonusPrefersLongerAction) {
  LinUcbParams p;
  p.fixed_beta = 1.0;
  LinUcbPolicy lin(2, p);
  RngStream rng(6, 0);
  const ActionSet actions = ActionSet::Vectors({{0.5, 0.0}, {0.0, 0.4}});
  EXPECT_EQ(lin.Select(1, actions, rng), 0u);
  const std::vector<double> a{0.5, 0.0};
  EXPECT_NEAR(lin.Index(a, 1), 0.5, 1e-12);
}

TEST(LinUcbTest, ScalarRidge) {
  LinUcbParams p;
  p.ridge_lambda = 1.0;
  LinUcbPolicy lin(1, p);
  const ActionSet actions = ActionSet::Vectors({{1.0}});
  lin.Update(actions, 0, 2.0);
  lin.Update(actions, 0, 2.0);
  ASSERT_EQ(lin.Theta().size(), 1u);
  EXPECT_NEAR(lin.Theta()[0], 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(lin.gram()(0, 0), 3.0, 1e-12);
}

TEST(LinUcbTest, RidgeMatchesNormalEquations) {
  LinUcbParams p;
  p.ridge_lambda = 0.7;
  const std::size_t d = 4;
  LinUcbPolicy lin(d, p);
  RngStream rng(7, 0);
  Eigen::MatrixXd v = 0.7 * Eigen::MatrixXd::Identity(d, d);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> a(d);
    Eigen::VectorXd av(d);
    for (std::size_t j = 0; j < d; ++j) av(j) = a[j] = rng.Uniform() - 0.5;
    const double r = rng.Normal();
    lin.Update(ActionSet::Vectors({a}), 0, r);
    v += av * av.transpose();
    b += r * av;
  }
  const Eigen::VectorXd theta = v.fullPivLu().solve(b);
  for (std::size_t j = 0; j < d; ++j) EXPECT_NEAR(lin.Theta()[j], theta(j), 1e-10);
}

TEST(LinUcbTest, BetaGrowsAndRejectsLongActions) {
  LinUcbParams p;
  p.sigma_q = 0.1;
  p.action_norm_bound = 0.5;
  p.horizon = 10000;
  LinUcbPolicy lin(3, p);
  EXPECT_LT(lin.Beta(1), lin.Beta(100));
  RngStream rng(8, 0);
  EXPECT_THROW(lin.Select(1, ActionSet::Vectors({{1.0, 0.0, 0.0}}), rng), Error);
  EXPECT_THROW(lin.Select(1, ActionSet::Vectors({}), rng), Error);
}

TEST(PolicyTest, Names) {
  for (auto k : {PolicyKind::kUcb, PolicyKind::kEpsGreedy, PolicyKind::kLinUcb}) {
    EXPECT_EQ(ParsePolicyKind(PolicyName(k)), k);
  }
  EXPECT_THROW(ParsePolicyKind("thompson"), Error);
}

}  // namespace
}  // namespace quban
