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

#include "quban/bandits.hpp"

#include <cmath>
#include <limits>

#include "quban/error.hpp"

namespace quban {

namespace {

void CheckArms(const ActionSet& actions, std::size_t k) {
  if (actions.size() == 0) {
    throw Error(ErrorCode::kEmptyActionSet, "no actions offered");
  }
  if (actions.is_linear() || actions.size() != k) {
    throw Error(ErrorCode::kBadAction,
                "policy expects " + std::to_string(k) + " fixed arms");
  }
}

}  // namespace

void ArmStatistics::Add(std::size_t arm, double r_hat) {
  auto& n = counts_.at(arm);
  ++n;
  ++total_;
  means_[arm] += (r_hat - means_[arm]) / static_cast<double>(n);
}

std::optional<std::size_t> ArmStatistics::FirstUnpulled() const {
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] == 0) return i;
  }
  return std::nullopt;
}

std::size_t ArmStatistics::BestMean() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < means_.size(); ++i) {
    if (means_[i] > means_[best]) best = i;
  }
  return best;
}

UcbPolicy::UcbPolicy(std::size_t k, double sigma_q)
    : stats_(k), sigma_q_(sigma_q) {
  if (k == 0) throw Error(ErrorCode::kEmptyActionSet, "UCB needs k >= 1");
  if (!(sigma_q > 0.0)) throw Error(ErrorCode::kConfigError, "sigma_q must be > 0");
}

double UcbPolicy::Index(std::size_t arm, std::int64_t t) const {
  const auto pulls = stats_.count(arm);
  if (pulls == 0) return std::numeric_limits<double>::infinity();
  const double td = static_cast<double>(t);
  const double log_t = std::log(td);
  const double f = 1.0 + td * log_t * log_t;
  return stats_.mean(arm) +
         sigma_q_ * std::sqrt(2.0 * std::log(f) / static_cast<double>(pulls));
}

std::size_t UcbPolicy::Select(std::int64_t t, const ActionSet& actions,
                              RngStream& /*rng*/) {
  CheckArms(actions, stats_.size());
  if (auto unpulled = stats_.FirstUnpulled()) return *unpulled;
  std::size_t best = 0;
  double best_index = Index(0, t);
  for (std::size_t i = 1; i < stats_.size(); ++i) {
    const double idx = Index(i, t);
    if (idx > best_index) {
      best = i;
      best_index = idx;
    }
  }
  return best;
}

void UcbPolicy::Update(const ActionSet& /*actions*/, std::size_t chosen,
                       double r_hat) {
  stats_.Add(chosen, r_hat);
}

EpsGreedyPolicy::EpsGreedyPolicy(std::size_t k, double sigma_q, double c,
                                 double delta_min)
    : stats_(k), sigma_q_(sigma_q), c_(c), delta_min_(delta_min) {
  if (k == 0) throw Error(ErrorCode::kEmptyActionSet, "eps-greedy needs k >= 1");
  if (!(sigma_q > 0.0) || !(c > 0.0) || !(delta_min > 0.0)) {
    throw Error(ErrorCode::kConfigError,
                "eps-greedy needs sigma_q, C and delta_min > 0");
  }
}

double EpsGreedyPolicy::Epsilon(std::int64_t t) const {
  const double k = static_cast<double>(stats_.size());
  const double eps =
      c_ * sigma_q_ * k / (static_cast<double>(t) * delta_min_ * delta_min_);
  return std::min(1.0, eps);
}

std::size_t EpsGreedyPolicy::Select(std::int64_t t, const ActionSet& actions,
                                    RngStream& rng) {
  CheckArms(actions, stats_.size());
  // One coin per step keeps the stream consumption independent of outcomes.
  const bool explore = rng.Uniform() < Epsilon(t);
  if (explore) return static_cast<std::size_t>(rng.UniformIndex(stats_.size()));
  if (auto unpulled = stats_.FirstUnpulled()) return *unpulled;
  return stats_.BestMean();
}

void EpsGreedyPolicy::Update(const ActionSet& /*actions*/, std::size_t chosen,
                             double r_hat) {
  stats_.Add(chosen, r_hat);
}

LinUcbPolicy::LinUcbPolicy(std::size_t dim, LinUcbParams params)
    : dim_(dim), params_(params) {
  if (dim == 0) throw Error(ErrorCode::kConfigError, "LinUCB needs d >= 1");
  if (!(params_.ridge_lambda > 0.0) || !(params_.sigma_q > 0.0) ||
      !(params_.action_norm_bound > 0.0) || params_.horizon < 1) {
    throw Error(ErrorCode::kConfigError,
                "LinUCB needs lambda, sigma_q, L > 0 and n >= 1");
  }
  const auto d = static_cast<Eigen::Index>(dim);
  gram_ = params_.ridge_lambda * Eigen::MatrixXd::Identity(d, d);
  response_ = Eigen::VectorXd::Zero(d);
  theta_ = Eigen::VectorXd::Zero(d);
  factor_.compute(gram_);
}

double LinUcbPolicy::Beta(std::int64_t t) const {
  if (params_.fixed_beta) return *params_.fixed_beta;
  const double l = params_.action_norm_bound;
  const double volume = (1.0 + static_cast<double>(t) * l * l) *
                        static_cast<double>(params_.horizon);
  return params_.sigma_q *
             std::sqrt(static_cast<double>(dim_) * std::log(volume)) +
         1.0;
}

double LinUcbPolicy::Index(std::span<const double> a, std::int64_t t) const {
  const Eigen::Map<const Eigen::VectorXd> av(a.data(),
                                             static_cast<Eigen::Index>(a.size()));
  const double width = std::sqrt(std::max(0.0, av.dot(factor_.solve(av))));
  return theta_.dot(av) + Beta(t) * width;
}

std::size_t LinUcbPolicy::Select(std::int64_t t, const ActionSet& actions,
                                 RngStream& /*rng*/) {
  if (actions.size() == 0) {
    throw Error(ErrorCode::kEmptyActionSet, "no actions offered");
  }
  if (!actions.is_linear()) {
    throw Error(ErrorCode::kBadAction, "LinUCB needs feature vectors");
  }
  std::size_t best = 0;
  double best_index = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const auto& a = actions.features[i];
    if (a.size() != dim_) {
      throw Error(ErrorCode::kBadAction, "action dimension mismatch");
    }
    double norm2 = 0.0;
    for (double x : a) norm2 += x * x;
    if (std::sqrt(norm2) > params_.action_norm_bound * (1.0 + 1e-9)) {
      throw Error(ErrorCode::kBadAction, "action exceeds the norm bound L");
    }
    const double idx = Index(a, t);
    if (idx > best_index) {
      best = i;
      best_index = idx;
    }
  }
  return best;
}

void LinUcbPolicy::Update(const ActionSet& actions, std::size_t chosen,
                          double r_hat) {
  const auto& a = actions.features.at(chosen);
  const Eigen::Map<const Eigen::VectorXd> av(a.data(),
                                             static_cast<Eigen::Index>(a.size()));
  gram_.noalias() += av * av.transpose();
  response_ += r_hat * av;
  factor_.compute(gram_);
  theta_ = factor_.solve(response_);
}

PolicyKind ParsePolicyKind(std::string_view name) {
  if (name == "ucb") return PolicyKind::kUcb;
  if (name == "eps_greedy") return PolicyKind::kEpsGreedy;
  if (name == "linucb") return PolicyKind::kLinUcb;
  throw Error(ErrorCode::kConfigError,
              "unknown policy '" + std::string(name) + "'");
}

std::string_view PolicyName(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kUcb: return "ucb";
    case PolicyKind::kEpsGreedy: return "eps_greedy";
    case PolicyKind::kLinUcb: return "linucb";
  }
  return "unknown";
}

}  // namespace quban
