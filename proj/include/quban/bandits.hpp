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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "quban/action.hpp"
#include "quban/rng.hpp"

namespace quban {

// A bandit algorithm fed with decoded rewards. Ties in every argmax go to
// the lowest index.
class Policy {
 public:
  virtual ~Policy() = default;

  // t is 1-based.
  virtual std::size_t Select(std::int64_t t, const ActionSet& actions,
                             RngStream& rng) = 0;
  virtual void Update(const ActionSet& actions, std::size_t chosen,
                      double r_hat) = 0;
  // Current parameter estimate; empty for finite-armed policies.
  virtual std::span<const double> Theta() const { return {}; }
  virtual std::string_view name() const = 0;
};

// Per-arm counts and running means of decoded rewards.
class ArmStatistics {
 public:
  explicit ArmStatistics(std::size_t k) : counts_(k, 0), means_(k, 0.0) {}

  void Add(std::size_t arm, double r_hat);
  std::size_t size() const noexcept { return counts_.size(); }
  std::int64_t count(std::size_t arm) const { return counts_.at(arm); }
  double mean(std::size_t arm) const { return means_.at(arm); }
  std::int64_t total() const noexcept { return total_; }
  // Lowest-index unpulled arm, if any.
  std::optional<std::size_t> FirstUnpulled() const;
  // Argmax of empirical means (lowest index on ties).
  std::size_t BestMean() const;

 private:
  std::vector<std::int64_t> counts_;
  std::vector<double> means_;
  std::int64_t total_ = 0;
};

// UCB with index mean_i + sigma_q * sqrt(2 log f(t) / T_i),
// f(t) = 1 + t log^2(t). Unpulled arms are played first.
class UcbPolicy final : public Policy {
 public:
  UcbPolicy(std::size_t k, double sigma_q);

  std::size_t Select(std::int64_t t, const ActionSet& actions,
                     RngStream& rng) override;
  void Update(const ActionSet& actions, std::size_t chosen,
              double r_hat) override;
  std::string_view name() const override { return "ucb"; }

  double Index(std::size_t arm, std::int64_t t) const;
  const ArmStatistics& stats() const noexcept { return stats_; }

 private:
  ArmStatistics stats_;
  double sigma_q_;
};

// epsilon-greedy with eps_t = min{1, C sigma_q k / (t delta_min^2)}.
// The greedy branch plays unpulled arms first, then the best mean.
class EpsGreedyPolicy final : public Policy {
 public:
  EpsGreedyPolicy(std::size_t k, double sigma_q, double c, double delta_min);

  std::size_t Select(std::int64_t t, const ActionSet& actions,
                     RngStream& rng) override;
  void Update(const ActionSet& actions, std::size_t chosen,
              double r_hat) override;
  std::string_view name() const override { return "eps_greedy"; }

  double Epsilon(std::int64_t t) const;
  const ArmStatistics& stats() const noexcept { return stats_; }

 private:
  ArmStatistics stats_;
  double sigma_q_;
  double c_;
  double delta_min_;
};

struct LinUcbParams {
  double sigma_q = 1.0;
  double ridge_lambda = 1.0;
  double action_norm_bound = 1.0;  // L
  std::int64_t horizon = 1;        // n; the confidence level is 1/n
  // Overrides the beta_t schedule (tests).
  std::optional<double> fixed_beta;
};

// LinUCB over a ridge estimate theta_t = V_t^{-1} b_t with
// V_t = lambda I + sum a a^T and
// beta_t = sigma_q sqrt(d log((1 + t L^2) n)) + 1.
class LinUcbPolicy final : public Policy {
 public:
  LinUcbPolicy(std::size_t dim, LinUcbParams params);

  std::size_t Select(std::int64_t t, const ActionSet& actions,
                     RngStream& rng) override;
  void Update(const ActionSet& actions, std::size_t chosen,
              double r_hat) override;
  std::span<const double> Theta() const override {
    return {theta_.data(), static_cast<std::size_t>(theta_.size())};
  }
  std::string_view name() const override { return "linucb"; }

  double Beta(std::int64_t t) const;
  // <theta, a> + beta_t ||a||_{V^{-1}}
  double Index(std::span<const double> a, std::int64_t t) const;
  const Eigen::MatrixXd& gram() const noexcept { return gram_; }

 private:
  std::size_t dim_;
  LinUcbParams params_;
  Eigen::MatrixXd gram_;
  Eigen::VectorXd response_;
  Eigen::VectorXd theta_;
  Eigen::LLT<Eigen::MatrixXd> factor_;
};

enum class PolicyKind { kUcb, kEpsGreedy, kLinUcb };

PolicyKind ParsePolicyKind(std::string_view name);
std::string_view PolicyName(PolicyKind kind);

struct PolicySpec {
  PolicyKind kind = PolicyKind::kUcb;
  double sigma_q = 1.0;
  double eps_c = 10.0;
  std::optional<double> delta_min;  // taken from the environment if unset
  double ridge_lambda = 1.0;
};

}  // namespace quban
