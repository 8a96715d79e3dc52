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
#include <string>
#include <vector>

namespace quban {

struct StepRecord {
  std::int64_t t = 0;
  std::size_t action = 0;  // arm index, or index within the offered set
  double reward = 0.0;
  double reward_hat = 0.0;
  int bits = 0;
  std::int64_t cum_bits = 0;
  double regret_realized = 0.0;  // running sum of (best mean - reward)
  double regret_pseudo = 0.0;    // running sum of (best mean - chosen mean)
};

// Per-run trace and running totals. `config_key` identifies the run
// configuration; only runs with equal keys may be merged.
class RunMetrics {
 public:
  RunMetrics() = default;
  explicit RunMetrics(std::string config_key) : config_key_(std::move(config_key)) {}

  void Record(std::size_t action, double reward, double reward_hat, int bits,
              double best_mean, double chosen_mean);
  // Appends a fully formed record (used when reading runs back from CSV).
  void Append(const StepRecord& record);

  const std::string& config_key() const noexcept { return config_key_; }
  const std::vector<StepRecord>& steps() const noexcept { return steps_; }
  std::size_t horizon() const noexcept { return steps_.size(); }
  std::int64_t cum_bits() const noexcept { return cum_bits_; }
  double realized_regret() const noexcept { return realized_; }
  double pseudo_regret() const noexcept { return pseudo_; }
  double average_bits() const noexcept {
    return steps_.empty() ? 0.0
                          : static_cast<double>(cum_bits_) /
                                static_cast<double>(steps_.size());
  }

 private:
  std::string config_key_;
  std::vector<StepRecord> steps_;
  std::int64_t cum_bits_ = 0;
  double realized_ = 0.0;
  double pseudo_ = 0.0;
};

// Mean and sample standard deviation across runs, per step.
struct AggregateCurves {
  std::size_t num_runs = 0;
  std::vector<std::int64_t> t;
  std::vector<double> regret_mean;
  std::vector<double> regret_std;
  std::vector<double> pseudo_regret_mean;
  std::vector<double> bits_mean;      // mean cumulative bits
  std::vector<double> avg_bits_mean;  // mean of cum_bits / t

  double final_regret_mean() const { return regret_mean.back(); }
  double final_regret_std() const { return regret_std.back(); }
  double final_avg_bits() const { return avg_bits_mean.back(); }
};

// Throws kConfigMismatch when runs differ in configuration or horizon.
AggregateCurves MergeMetrics(std::span<const RunMetrics> runs);
AggregateCurves MergeMetrics(const RunMetrics& a, const RunMetrics& b);

}  // namespace quban
