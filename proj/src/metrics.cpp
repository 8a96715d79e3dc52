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

#include "quban/metrics.hpp"

#include <cmath>

#include "quban/error.hpp"

namespace quban {

void RunMetrics::Record(std::size_t action, double reward, double reward_hat,
                        int bits, double best_mean, double chosen_mean) {
  cum_bits_ += bits;
  realized_ += best_mean - reward;
  pseudo_ += best_mean - chosen_mean;
  steps_.push_back(StepRecord{static_cast<std::int64_t>(steps_.size()) + 1,
                              action, reward, reward_hat, bits, cum_bits_,
                              realized_, pseudo_});
}

void RunMetrics::Append(const StepRecord& record) {
  steps_.push_back(record);
  cum_bits_ = record.cum_bits;
  realized_ = record.regret_realized;
  pseudo_ = record.regret_pseudo;
}

AggregateCurves MergeMetrics(std::span<const RunMetrics> runs) {
  AggregateCurves out;
  if (runs.empty()) return out;
  const auto& first = runs.front();
  for (const auto& run : runs) {
    if (run.config_key() != first.config_key() ||
        run.horizon() != first.horizon()) {
      throw Error(ErrorCode::kConfigMismatch,
                  "cannot merge '" + run.config_key() + "' (n=" +
                      std::to_string(run.horizon()) + ") with '" +
                      first.config_key() + "' (n=" +
                      std::to_string(first.horizon()) + ")");
    }
  }
  const std::size_t n = first.horizon();
  const double count = static_cast<double>(runs.size());
  out.num_runs = runs.size();
  out.t.resize(n);
  out.regret_mean.assign(n, 0.0);
  out.regret_std.assign(n, 0.0);
  out.pseudo_regret_mean.assign(n, 0.0);
  out.bits_mean.assign(n, 0.0);
  out.avg_bits_mean.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    out.t[i] = static_cast<std::int64_t>(i) + 1;
    const double ti = static_cast<double>(i + 1);
    double sum = 0.0;
    double pseudo = 0.0;
    double bits = 0.0;
    for (const auto& run : runs) {
      const auto& s = run.steps()[i];
      sum += s.regret_realized;
      pseudo += s.regret_pseudo;
      bits += static_cast<double>(s.cum_bits);
    }
    const double mean = sum / count;
    double sq = 0.0;
    for (const auto& run : runs) {
      const double d = run.steps()[i].regret_realized - mean;
      sq += d * d;
    }
    out.regret_mean[i] = mean;
    out.regret_std[i] = runs.size() > 1 ? std::sqrt(sq / (count - 1.0)) : 0.0;
    out.pseudo_regret_mean[i] = pseudo / count;
    out.bits_mean[i] = bits / count;
    out.avg_bits_mean[i] = out.bits_mean[i] / ti;
  }
  return out;
}

AggregateCurves MergeMetrics(const RunMetrics& a, const RunMetrics& b) {
  const RunMetrics both[] = {a, b};
  return MergeMetrics(std::span<const RunMetrics>(both));
}

}  // namespace quban
